#include "ksq/report.hpp"
#include "ksq/scenario_io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;

struct Options {
    std::string format = "text";
    double tolerance = 1e-12;
    std::uint64_t seed = 1;
    std::uint64_t samples = 100000;
    std::string expect;
    bool combinatorial_only = false;

    std::string source;
    std::string mode = "count-all";
    std::string solid = "dodecahedron";
    std::size_t context = 0;
    std::string state = "mixed";
};

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitExpectation = 3;

void emit(const json& report, const Options& opt) {
    if (ksq::report_format_from_string(opt.format) == ksq::ReportFormat::machine) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << ksq::render_text(report);
    }
}

ksq::VertexSet solid_vertices(const std::string& solid) {
    if (solid == "dodecahedron") return ksq::dodecahedron_vertices();
    if (solid == "hexagon") return ksq::hexagon_directions();
    if (solid == "cube") return ksq::cube_vertices();
    throw std::invalid_argument("unknown solid '" + solid + "'");
}

json cubes_section(const ksq::VertexSet& vs, const std::vector<ksq::CubeSubset>& cubes) {
    json list = json::array();
    for (const auto& cube : cubes) {
        json members = json::array();
        for (const auto& m : cube.member_labels) members.push_back(m.str());
        list.push_back(std::move(members));
    }
    return list;
}

json shared_pairs_section(const std::vector<ksq::CubeSubset>& cubes) {
    json pairs = json::array();
    for (std::size_t i = 0; i < cubes.size(); ++i) {
        for (std::size_t j = i + 1; j < cubes.size(); ++j) {
            json shared = json::array();
            for (const auto& label : cubes[i].member_labels) {
                const auto& other = cubes[j].member_labels;
                if (std::find(other.begin(), other.end(), label) != other.end()) {
                    shared.push_back(label.str());
                }
            }
            pairs.push_back({{"cubes", json::array({i, j})}, {"labels", std::move(shared)}});
        }
    }
    return pairs;
}

int run_verify(const Options& opt, bool coloring_only) {
    const ksq::Scenario s = ksq::load_scenario(opt.source, opt.combinatorial_only, opt.tolerance);
    json report = ksq::make_report(coloring_only ? "color" : "verify");
    report["scenario"] = ksq::scenario_summary_json(s);

    if (!coloring_only) {
        json completeness = json::array();
        for (std::size_t c = 0; c < s.contexts.size(); ++c) {
            completeness.push_back(
                ksq::completeness_json(ksq::check_completeness(s.context_povm(c).effects, opt.tolerance)));
        }
        report["completeness"] = std::move(completeness);
        report["psd"] = ksq::psd_json(s);
    }

    const auto parity = ksq::parity_certificate(s);
    report["parity"] = ksq::parity_json(s, parity);

    const ksq::SearchMode mode =
        opt.mode == "first-witness" ? ksq::SearchMode::first_witness : ksq::SearchMode::count_all;
    const ksq::Verdict verdict = ksq::search_colorings(s, mode);
    report["search"] = ksq::search_json(s, verdict);
    report["census"] = ksq::census_json(s, ksq::coloring_census(s));

    const std::string outcome =
        verdict.outcome == ksq::ColorOutcome::colorable ? "colorable" : "uncolorable";
    report["verdict"] = outcome;

    int exit_code = kExitOk;
    if (!opt.expect.empty()) {
        report["expected"] = opt.expect;
        report["expectation_met"] = (opt.expect == outcome);
        if (opt.expect != outcome) exit_code = kExitExpectation;
    }
    emit(report, opt);
    return exit_code;
}

int run_geometry_cubes(const Options& opt) {
    const ksq::VertexSet vs = solid_vertices(opt.solid);
    const auto cubes = ksq::find_inscribed_cubes(vs);
    json report = ksq::make_report("geometry-cubes");
    report["solid"] = opt.solid;
    report["cubes"] = cubes_section(vs, cubes);
    report["shared_pairs"] = shared_pairs_section(cubes);
    emit(report, opt);
    return kExitOk;
}

int run_geometry_export(const Options& opt) {
    const ksq::VertexSet vs = solid_vertices(opt.solid);
    json report = ksq::make_report("geometry-export");
    report["solid"] = opt.solid;
    json vertices = json::array();
    for (const auto& v : vs.vertices) {
        const auto f = ksq::to_double(v.coords);
        vertices.push_back({{"label", v.label.str()},
                            {"coords",
                             json::array({ksq::quadnum_to_json(v.coords.x), ksq::quadnum_to_json(v.coords.y),
                                          ksq::quadnum_to_json(v.coords.z)})},
                            {"float", json::array({f[0], f[1], f[2]})}});
    }
    report["vertices"] = std::move(vertices);
    report["cubes"] = cubes_section(vs, ksq::find_inscribed_cubes(vs));
    if (auto doc = ksq::builtin_document(opt.solid == "hexagon"      ? "hexagon"
                                         : opt.solid == "cube"       ? "cube"
                                                                     : "dodecahedron")) {
        report["document"] = ksq::document_to_json(*doc);
    }
    emit(report, opt);
    return kExitOk;
}

int run_dilate(const Options& opt) {
    const ksq::Scenario s = ksq::load_scenario(opt.source, opt.combinatorial_only, opt.tolerance);
    json report = ksq::make_report("dilate");
    report["scenario"] = ksq::scenario_summary_json(s);
    json dilation = json::array();
    double max_residual = 0.0;
    for (std::size_t c = 0; c < s.contexts.size(); ++c) {
        const ksq::Isometry v = ksq::neumark_isometry(s.context_povm(c), opt.tolerance);
        const double residual = v.vtv_residual();
        max_residual = std::max(max_residual, residual);
        dilation.push_back({{"context", c}, {"outcomes", v.rows.size()}, {"vtv_residual", residual}});
    }
    report["dilation"] = std::move(dilation);
    report["max_vtv_residual"] = max_residual;
    emit(report, opt);
    return kExitOk;
}

// --state accepts "mixed", a named ray ("+C", "C+", "-C", "C-"), or "x,y,z".
int run_sample(const Options& opt) {
    const ksq::Scenario s = ksq::load_scenario(opt.source, opt.combinatorial_only, opt.tolerance);
    if (opt.context >= s.contexts.size()) {
        throw std::invalid_argument("context " + std::to_string(opt.context) + " out of range (scenario has " +
                                    std::to_string(s.contexts.size()) + " contexts)");
    }
    const ksq::Povm povm = s.context_povm(opt.context);

    std::vector<double> distribution;
    if (opt.state == "mixed") {
        distribution = ksq::outcome_distribution(povm, std::array<double, 3>{0.0, 0.0, 0.0}, opt.tolerance);
    } else if (opt.state.find(',') != std::string::npos) {
        std::array<double, 3> r{};
        std::istringstream in(opt.state);
        char sep1 = 0, sep2 = 0;
        if (!(in >> r[0] >> sep1 >> r[1] >> sep2 >> r[2]) || sep1 != ',' || sep2 != ',') {
            throw std::invalid_argument("bad Bloch vector '" + opt.state + "' (expected x,y,z)");
        }
        distribution = ksq::outcome_distribution(povm, r, opt.tolerance);
    } else {
        std::string text = opt.state;
        if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
            text = text.substr(1) + text.front();
        }
        const ksq::SignedLabel label = ksq::SignedLabel::parse(text);
        const auto idx = s.index_of(label);
        if (!idx) throw std::invalid_argument("state label " + label.str() + " is not an effect of the scenario");
        const ksq::Spinor psi = ksq::spinor_from_direction(s.effects[*idx].direction);
        distribution = ksq::outcome_distribution(povm, psi, opt.tolerance);
    }

    std::vector<std::string> labels;
    for (const auto& e : povm.effects) labels.push_back(e.label.str());
    const ksq::OutcomeHistogram histogram =
        ksq::sample_distribution(labels, distribution, opt.samples, opt.seed);
    const ksq::GoodnessOfFit fit = ksq::chi_square_gof(histogram, distribution);

    json report = ksq::make_report("sample");
    json sampling;
    sampling["context"] = opt.context;
    sampling["state"] = opt.state;
    sampling["samples"] = opt.samples;
    sampling["seed"] = opt.seed;
    sampling["labels"] = labels;
    sampling["distribution"] = distribution;
    sampling["vtv_residual"] = ksq::neumark_isometry(povm, opt.tolerance).vtv_residual();
    sampling["histogram"] = ksq::histogram_json(histogram);
    sampling["chi_square"] = ksq::gof_json(fit);
    report["sampling"] = std::move(sampling);
    emit(report, opt);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"exact verification, coloring and simulation of qubit POVM contextuality scenarios"};
    app.require_subcommand(1);

    app.add_option("--format", opt.format, "report format: text or machine")
        ->check(CLI::IsMember({"text", "machine"}));
    app.add_option("--tolerance", opt.tolerance, "floating-point tolerance for numeric checks");
    app.add_option("--seed", opt.seed, "sampling seed");
    app.add_option("--samples", opt.samples, "number of samples to draw");
    app.add_option("--expect", opt.expect, "fail unless the verdict matches")
        ->check(CLI::IsMember({"colorable", "uncolorable"}));
    app.add_flag("--combinatorial-only", opt.combinatorial_only,
                 "skip physical-realizability validation (bare hypergraph)");

    auto* verify = app.add_subcommand("verify", "validate physics and decide colorability");
    verify->add_option("source", opt.source, "builtin name or scenario file")->required();
    verify->add_option("--mode", opt.mode, "search mode")->check(CLI::IsMember({"count-all", "first-witness"}));
    verify->fallthrough();

    auto* color = app.add_subcommand("color", "decide colorability only");
    color->add_option("source", opt.source, "builtin name or scenario file")->required();
    color->add_option("--mode", opt.mode, "search mode")->check(CLI::IsMember({"count-all", "first-witness"}));
    color->fallthrough();

    auto* geometry = app.add_subcommand("geometry", "polytope directions and inscribed cubes");
    geometry->require_subcommand(1);
    geometry->fallthrough();
    auto* cubes = geometry->add_subcommand("cubes", "list inscribed cubes and shared antipodal pairs");
    cubes->add_option("--solid", opt.solid, "dodecahedron, hexagon or cube")
        ->check(CLI::IsMember({"dodecahedron", "hexagon", "cube"}));
    cubes->fallthrough();
    auto* exp = geometry->add_subcommand("export", "emit exact and floating vertex coordinates");
    exp->add_option("--solid", opt.solid, "dodecahedron, hexagon or cube")
        ->check(CLI::IsMember({"dodecahedron", "hexagon", "cube"}));
    exp->fallthrough();

    auto* dilate = app.add_subcommand("dilate", "build the measurement isometry of every context");
    dilate->add_option("source", opt.source, "builtin name or scenario file")->required();
    dilate->fallthrough();

    auto* sample = app.add_subcommand("sample", "draw seeded outcomes from one context");
    sample->add_option("source", opt.source, "builtin name or scenario file")->required();
    sample->add_option("--context", opt.context, "context index (default 0)");
    sample->add_option("--state", opt.state, "mixed, a named ray (+C), or x,y,z");
    sample->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return run_verify(opt, false);
        if (color->parsed()) return run_verify(opt, true);
        if (geometry->parsed()) {
            if (cubes->parsed()) return run_geometry_cubes(opt);
            return run_geometry_export(opt);
        }
        if (dilate->parsed()) return run_dilate(opt);
        if (sample->parsed()) return run_sample(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (opt.format == "machine") {
            json report = ksq::make_report("error");
            report["error"] = e.what();
            std::cout << report.dump(2) << "\n";
        }
        return kExitValidation;
    }
    return kExitOk;
}
