#include "ksq/contextuality.hpp"

#include <algorithm>

namespace ksq {

std::optional<std::size_t> Scenario::index_of(const SignedLabel& label) const {
    for (std::size_t i = 0; i < effects.size(); ++i) {
        if (effects[i].label == label) return i;
    }
    return std::nullopt;
}

Povm Scenario::context_povm(std::size_t context) const {
    if (context >= contexts.size()) throw std::out_of_range("context index out of range");
    Povm povm;
    for (std::size_t idx : contexts[context]) povm.effects.push_back(effects[idx]);
    return povm;
}

std::vector<std::size_t> Scenario::label_multiplicities() const {
    std::vector<std::size_t> mult(effects.size(), 0);
    for (const auto& ctx : contexts) {
        for (std::size_t idx : ctx) ++mult[idx];
    }
    return mult;
}

Scenario make_scenario(std::string name, std::int64_t radicand, std::vector<Effect> effects,
                       std::vector<std::vector<std::size_t>> contexts, bool combinatorial_only,
                       double tolerance) {
    Scenario s;
    s.name = std::move(name);
    s.radicand = radicand;
    s.effects = std::move(effects);
    s.contexts = std::move(contexts);
    s.combinatorial_only = combinatorial_only;

    for (std::size_t i = 0; i < s.effects.size(); ++i) {
        for (std::size_t j = i + 1; j < s.effects.size(); ++j) {
            if (s.effects[i].label == s.effects[j].label) {
                throw ScenarioError("duplicate effect label " + s.effects[i].label.str());
            }
        }
    }
    for (std::size_t c = 0; c < s.contexts.size(); ++c) {
        std::vector<std::size_t> seen;
        for (std::size_t idx : s.contexts[c]) {
            if (idx >= s.effects.size()) {
                throw ScenarioError("context " + std::to_string(c) + " references effect index out of range");
            }
            if (std::find(seen.begin(), seen.end(), idx) != seen.end()) {
                throw ScenarioError("context " + std::to_string(c) + " lists effect " +
                                    s.effects[idx].label.str() + " twice");
            }
            seen.push_back(idx);
        }
    }

    if (!combinatorial_only) {
        for (const auto& e : s.effects) {
            if (!check_psd(e)) {
                throw ScenarioError("effect " + e.label.str() + " is not positive semidefinite");
            }
        }
        for (std::size_t c = 0; c < s.contexts.size(); ++c) {
            const Povm povm = s.context_povm(c);
            const CompletenessReport report = check_completeness(povm.effects, tolerance);
            if (report.status == CompletenessStatus::failed) {
                throw ScenarioError("context " + std::to_string(c) + " is not a POVM (trace residual " +
                                    report.trace_residual.str() + ", float residual " +
                                    std::to_string(report.float_residual) + ")");
            }
        }
    }

    const auto mult = s.label_multiplicities();
    for (std::size_t i = 0; i < mult.size(); ++i) {
        if (mult[i] == 0) {
            s.warnings.push_back("effect " + s.effects[i].label.str() +
                                 " appears in no context; it is pinned to no in colorings");
        }
    }
    return s;
}

std::optional<ParityCertificate> parity_certificate(const Scenario& s) {
    if (s.contexts.size() % 2 == 0) return std::nullopt;
    ParityCertificate cert;
    cert.context_count = s.contexts.size();
    cert.multiplicities = s.label_multiplicities();
    for (std::size_t m : cert.multiplicities) {
        if (m % 2 != 0) return std::nullopt;
    }
    // Exactly one yes per context makes the multiplicity-weighted yes total
    // equal the context count (odd), but every yes contributes an even
    // amount. No assignment can satisfy both.
    return cert;
}

namespace {

constexpr std::int8_t kUnset = -1;
constexpr std::int8_t kNo = 0;
constexpr std::int8_t kYes = 1;

struct ColoringSearch {
    const Scenario& s;
    SearchMode mode;
    std::vector<std::int8_t> value;
    std::uint64_t nodes = 0;
    std::uint64_t count = 0;
    std::optional<Assignment> first_witness;
    bool stop = false;

    explicit ColoringSearch(const Scenario& scenario, SearchMode m)
        : s(scenario), mode(m), value(scenario.effects.size(), kUnset) {}

    void record_solution() {
        ++count;
        if (!first_witness) {
            Assignment a;
            a.yes.resize(value.size(), 0);
            for (std::size_t i = 0; i < value.size(); ++i) a.yes[i] = (value[i] == kYes) ? 1 : 0;
            first_witness = std::move(a);
        }
        if (mode == SearchMode::first_witness) stop = true;
    }

    void recurse(std::size_t context) {
        ++nodes;
        if (context == s.contexts.size()) {
            record_solution();
            return;
        }
        const auto& members = s.contexts[context];

        int yes_count = 0;
        for (std::size_t idx : members) yes_count += (value[idx] == kYes) ? 1 : 0;
        if (yes_count > 1) return;

        if (yes_count == 1) {
            // The remaining members are forced to no.
            std::vector<std::size_t> trail;
            for (std::size_t idx : members) {
                if (value[idx] == kUnset) {
                    value[idx] = kNo;
                    trail.push_back(idx);
                }
            }
            recurse(context + 1);
            for (std::size_t idx : trail) value[idx] = kUnset;
            return;
        }

        for (std::size_t pick : members) {
            if (value[pick] != kUnset) continue;
            std::vector<std::size_t> trail;
            value[pick] = kYes;
            trail.push_back(pick);
            for (std::size_t idx : members) {
                if (value[idx] == kUnset) {
                    value[idx] = kNo;
                    trail.push_back(idx);
                }
            }
            recurse(context + 1);
            for (std::size_t idx : trail) value[idx] = kUnset;
            if (stop) return;
        }
    }
};

}  // namespace

Verdict search_colorings(const Scenario& s, SearchMode mode) {
    ColoringSearch search(s, mode);
    search.recurse(0);

    Verdict verdict;
    verdict.nodes_explored = search.nodes;
    if (search.count > 0) {
        verdict.outcome = ColorOutcome::colorable;
        verdict.witness = search.first_witness;
        if (mode == SearchMode::count_all) verdict.coloring_count = search.count;
    } else {
        verdict.outcome = ColorOutcome::uncolorable;
        if (mode == SearchMode::count_all) verdict.coloring_count = 0;
        verdict.certificate = ExhaustiveCertificate{search.nodes};
    }
    return verdict;
}

bool verify_assignment(const Scenario& s, const Assignment& a) {
    if (a.yes.size() != s.effects.size()) {
        throw std::invalid_argument("assignment does not cover every effect label");
    }
    for (const auto& ctx : s.contexts) {
        std::size_t yes = 0;
        for (std::size_t idx : ctx) yes += a.yes[idx] ? 1 : 0;
        if (yes != 1) return false;
    }
    return true;
}

Census coloring_census(const Scenario& s) {
    Census census;
    census.context_count = s.contexts.size();
    census.context_count_odd = census.context_count % 2 == 1;
    for (const auto& ctx : s.contexts) census.context_sizes.push_back(ctx.size());
    census.label_multiplicity = s.label_multiplicities();
    for (std::size_t m : census.label_multiplicity) {
        if (m % 2 != 0) census.all_multiplicities_even = false;
    }
    return census;
}

}  // namespace ksq
