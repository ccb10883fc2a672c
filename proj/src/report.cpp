#include "ksq/report.hpp"

#include "ksq/scenario_io.hpp"

#include <nlohmann/json.hpp>

#include <iomanip>
#include <sstream>

namespace ksq {

using nlohmann::json;

ReportFormat report_format_from_string(const std::string& s) {
    if (s == "text") return ReportFormat::text;
    if (s == "machine") return ReportFormat::machine;
    throw std::invalid_argument("unknown report format '" + s + "' (expected text or machine)");
}

json scenario_summary_json(const Scenario& s) {
    json j;
    j["name"] = s.name;
    j["radicand"] = s.radicand;
    j["combinatorial_only"] = s.combinatorial_only;
    j["effect_count"] = s.effects.size();
    j["context_count"] = s.contexts.size();
    json effects = json::array();
    for (const auto& e : s.effects) {
        effects.push_back({{"label", e.label.str()},
                           {"weight", rational_to_json(e.weight)},
                           {"direction",
                            json::array({quadnum_to_json(e.direction.x), quadnum_to_json(e.direction.y),
                                         quadnum_to_json(e.direction.z)})},
                           {"norm_sq", quadnum_to_json(e.norm_sq)}});
    }
    j["effects"] = std::move(effects);
    json contexts = json::array();
    for (const auto& ctx : s.contexts) {
        json members = json::array();
        for (std::size_t idx : ctx) members.push_back(s.effects[idx].label.str());
        contexts.push_back(std::move(members));
    }
    j["contexts"] = std::move(contexts);
    j["warnings"] = s.warnings;
    return j;
}

namespace {

const char* status_name(CompletenessStatus status) {
    switch (status) {
        case CompletenessStatus::exact: return "exact";
        case CompletenessStatus::numeric_only: return "numeric-only";
        case CompletenessStatus::failed: return "failed";
    }
    return "unknown";
}

}  // namespace

json completeness_json(const CompletenessReport& report) {
    json j;
    j["status"] = status_name(report.status);
    j["trace_residual"] = report.trace_residual.str();
    j["float_residual"] = report.float_residual;
    json classes = json::array();
    for (const auto& c : report.bloch_residuals) {
        classes.push_back({{"norm_sq", c.norm_sq.str()},
                           {"residual",
                            json::array({c.weighted_direction_sum.x.str(), c.weighted_direction_sum.y.str(),
                                         c.weighted_direction_sum.z.str()})},
                           {"zero", is_zero(c.weighted_direction_sum)}});
    }
    j["bloch_residuals"] = std::move(classes);
    return j;
}

json psd_json(const Scenario& s) {
    json j;
    json failures = json::array();
    for (const auto& e : s.effects) {
        if (!check_psd(e)) failures.push_back(e.label.str());
    }
    j["all_passed"] = failures.empty();
    j["failures"] = std::move(failures);
    return j;
}

json parity_json(const Scenario& s, const std::optional<ParityCertificate>& cert) {
    json j;
    j["certificate_found"] = cert.has_value();
    if (cert) {
        j["context_count"] = cert->context_count;
        json mult = json::object();
        for (std::size_t i = 0; i < cert->multiplicities.size(); ++i) {
            mult[s.effects[i].label.str()] = cert->multiplicities[i];
        }
        j["multiplicities"] = std::move(mult);
    }
    return j;
}

json search_json(const Scenario& s, const Verdict& verdict) {
    json j;
    j["outcome"] = verdict.outcome == ColorOutcome::colorable ? "colorable" : "uncolorable";
    j["nodes_explored"] = verdict.nodes_explored;
    if (verdict.coloring_count) j["coloring_count"] = *verdict.coloring_count;
    if (verdict.witness) {
        json w = json::object();
        for (std::size_t i = 0; i < verdict.witness->yes.size(); ++i) {
            w[s.effects[i].label.str()] = verdict.witness->yes[i] ? "yes" : "no";
        }
        j["witness"] = std::move(w);
    }
    if (verdict.certificate) {
        if (std::holds_alternative<ExhaustiveCertificate>(*verdict.certificate)) {
            j["certificate"] = {{"kind", "exhaustive"},
                                {"nodes_explored",
                                 std::get<ExhaustiveCertificate>(*verdict.certificate).nodes_explored}};
        } else {
            const auto& parity = std::get<ParityCertificate>(*verdict.certificate);
            j["certificate"] = {{"kind", "parity"}, {"context_count", parity.context_count}};
        }
    }
    return j;
}

json census_json(const Scenario& s, const Census& census) {
    json j;
    j["context_count"] = census.context_count;
    j["context_sizes"] = census.context_sizes;
    json mult = json::object();
    for (std::size_t i = 0; i < census.label_multiplicity.size(); ++i) {
        mult[s.effects[i].label.str()] = census.label_multiplicity[i];
    }
    j["label_multiplicities"] = std::move(mult);
    j["all_multiplicities_even"] = census.all_multiplicities_even;
    j["context_count_odd"] = census.context_count_odd;
    return j;
}

json histogram_json(const OutcomeHistogram& histogram) {
    json j;
    json counts = json::array();
    for (std::size_t i = 0; i < histogram.labels.size(); ++i) {
        counts.push_back({{"label", histogram.labels[i]}, {"count", histogram.counts[i]}});
    }
    j["counts"] = std::move(counts);
    j["total"] = histogram.total;
    j["seed"] = histogram.seed;
    return j;
}

json gof_json(const GoodnessOfFit& fit) {
    json j;
    j["statistic"] = fit.statistic;
    j["dof"] = fit.dof;
    j["p_value"] = fit.p_value;
    return j;
}

json make_report(const std::string& command) {
    json j;
    j["tool"] = "ksq";
    j["format_version"] = 1;
    j["command"] = command;
    return j;
}

namespace {

std::string fmt_double(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

void render_scenario(std::ostream& os, const json& s) {
    os << "scenario: " << s["name"].get<std::string>() << "  (radicand " << s["radicand"]
       << ", effects " << s["effect_count"] << ", contexts " << s["context_count"] << ")\n";
    for (const auto& w : s["warnings"]) os << "  warning: " << w.get<std::string>() << "\n";
    std::size_t i = 0;
    for (const auto& ctx : s["contexts"]) {
        os << "  context " << i++ << ":";
        for (const auto& m : ctx) os << " " << m.get<std::string>();
        os << "\n";
    }
}

void render_completeness(std::ostream& os, const json& list) {
    os << "completeness:\n";
    std::size_t i = 0;
    for (const auto& c : list) {
        os << "  context " << i++ << ": " << c["status"].get<std::string>() << "  (trace residual "
           << c["trace_residual"].get<std::string>() << ", float residual "
           << fmt_double(c["float_residual"].get<double>()) << ")\n";
    }
}

void render_search(std::ostream& os, const json& s) {
    os << "search: " << s["outcome"].get<std::string>() << "  (nodes explored " << s["nodes_explored"]
       << ")\n";
    if (s.contains("coloring_count")) os << "  coloring count: " << s["coloring_count"] << "\n";
    if (s.contains("witness")) {
        os << "  witness:";
        for (const auto& item : s["witness"].items()) {
            if (item.value().get<std::string>() == "yes") os << " " << item.key() << "=yes";
        }
        os << " (all other labels no)\n";
    }
}

}  // namespace

std::string render_text(const json& report) {
    std::ostringstream os;
    os << "ksq " << report["command"].get<std::string>() << "\n";
    if (report.contains("error")) {
        os << "error: " << report["error"].get<std::string>() << "\n";
        return os.str();
    }
    if (report.contains("scenario")) render_scenario(os, report["scenario"]);
    if (report.contains("completeness")) render_completeness(os, report["completeness"]);
    if (report.contains("psd")) {
        const auto& p = report["psd"];
        os << "psd: " << (p["all_passed"].get<bool>() ? "all effects positive semidefinite" : "FAILED");
        for (const auto& f : p["failures"]) os << " " << f.get<std::string>();
        os << "\n";
    }
    if (report.contains("parity")) {
        const auto& p = report["parity"];
        if (p["certificate_found"].get<bool>()) {
            os << "parity: certificate found (odd context count " << p["context_count"]
               << ", every multiplicity even)\n";
        } else {
            os << "parity: no certificate (this alone claims nothing)\n";
        }
    }
    if (report.contains("search")) render_search(os, report["search"]);
    if (report.contains("census")) {
        const auto& c = report["census"];
        os << "census: " << c["context_count"] << " contexts, sizes [";
        bool first = true;
        for (const auto& s : c["context_sizes"]) {
            os << (first ? "" : ", ") << s;
            first = false;
        }
        os << "], multiplicities even: " << (c["all_multiplicities_even"].get<bool>() ? "yes" : "no")
           << ", context count odd: " << (c["context_count_odd"].get<bool>() ? "yes" : "no") << "\n";
    }
    if (report.contains("verdict")) os << "verdict: " << report["verdict"].get<std::string>() << "\n";
    if (report.contains("expected")) {
        os << "expected: " << report["expected"].get<std::string>() << " -> "
           << (report["expectation_met"].get<bool>() ? "met" : "NOT MET") << "\n";
    }
    if (report.contains("cubes")) {
        const auto& cubes = report["cubes"];
        os << "inscribed cubes: " << cubes.size() << "\n";
        std::size_t i = 0;
        for (const auto& cube : cubes) {
            os << "  cube " << i++ << ":";
            for (const auto& m : cube) os << " " << m.get<std::string>();
            os << "\n";
        }
    }
    if (report.contains("shared_pairs")) {
        os << "shared antipodal pairs:\n";
        for (const auto& p : report["shared_pairs"]) {
            os << "  cubes " << p["cubes"][0] << " & " << p["cubes"][1] << ": " << p["labels"][0]
               << " " << p["labels"][1] << "\n";
        }
    }
    if (report.contains("vertices")) {
        os << "vertices:\n";
        for (const auto& v : report["vertices"]) {
            const auto& f = v["float"];
            os << "  " << v["label"].get<std::string>() << "  (" << fmt_double(f[0].get<double>()) << ", "
               << fmt_double(f[1].get<double>()) << ", " << fmt_double(f[2].get<double>()) << ")\n";
        }
    }
    if (report.contains("dilation")) {
        os << "dilation:\n";
        for (const auto& d : report["dilation"]) {
            os << "  context " << d["context"] << ": " << d["outcomes"] << "x2 isometry, |V+V - I| = "
               << fmt_double(d["vtv_residual"].get<double>()) << "\n";
        }
    }
    if (report.contains("sampling")) {
        const auto& s = report["sampling"];
        os << "sampling: context " << s["context"] << ", state " << s["state"].get<std::string>()
           << ", samples " << s["samples"] << ", seed " << s["seed"] << "\n";
        os << "  isometry residual: " << fmt_double(s["vtv_residual"].get<double>()) << "\n";
        const auto& labels = s["labels"];
        const auto& probs = s["distribution"];
        const auto& counts = s["histogram"]["counts"];
        for (std::size_t i = 0; i < labels.size(); ++i) {
            os << "  " << labels[i].get<std::string>() << ": p = "
               << fmt_double(probs[i].get<double>()) << ", count = "
               << counts[i]["count"].get<std::uint64_t>() << "\n";
        }
        const auto& gof = s["chi_square"];
        os << "  chi-square: statistic " << fmt_double(gof["statistic"].get<double>()) << ", dof "
           << gof["dof"] << ", p-value " << fmt_double(gof["p_value"].get<double>()) << "\n";
    }
    return os.str();
}

}  // namespace ksq
