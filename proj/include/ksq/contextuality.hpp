#pragma once

#include "ksq/effects.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ksq {

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A contextuality scenario: labeled effects plus contexts (POVMs) given as
/// index subsets. Unless built combinatorial-only, construction enforces
/// physical realizability: every context completeness-checks (exact or
/// numeric-only) and every effect is positive semidefinite.
struct Scenario {
    std::string name;
    std::int64_t radicand = 0;
    std::vector<Effect> effects;                      // unique labels
    std::vector<std::vector<std::size_t>> contexts;   // effect indices
    std::vector<std::string> warnings;
    bool combinatorial_only = false;

    std::optional<std::size_t> index_of(const SignedLabel& label) const;
    Povm context_povm(std::size_t context) const;
    std::vector<std::size_t> label_multiplicities() const;  // contexts containing each effect
};

Scenario make_scenario(std::string name, std::int64_t radicand, std::vector<Effect> effects,
                       std::vector<std::vector<std::size_t>> contexts, bool combinatorial_only = false,
                       double tolerance = 1e-12);

// Total yes/no assignment, aligned with Scenario::effects.
struct Assignment {
    std::vector<std::uint8_t> yes;  // 1 = yes, 0 = no

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Counting proof of uncolorability: every effect sits in an even number of
// contexts, yet the number of contexts (= total yes answers under
// exactly-one-yes) is odd.
struct ParityCertificate {
    std::size_t context_count = 0;
    std::vector<std::size_t> multiplicities;  // per effect index
};

struct ExhaustiveCertificate {
    std::uint64_t nodes_explored = 0;
};

using Certificate = std::variant<ParityCertificate, ExhaustiveCertificate>;

enum class ColorOutcome { colorable, uncolorable };
enum class SearchMode { first_witness, count_all };

struct Verdict {
    ColorOutcome outcome = ColorOutcome::colorable;
    std::optional<Assignment> witness;              // present iff colorable
    std::optional<std::uint64_t> coloring_count;    // present in count_all mode
    std::uint64_t nodes_explored = 0;
    std::optional<Certificate> certificate;         // present iff uncolorable
};

// Returns the parity certificate when it applies; absence claims nothing.
std::optional<ParityCertificate> parity_certificate(const Scenario& s);

// Complete backtracking over contexts in input order: pick the single yes
// effect of each context (members tried in input order), force the rest to
// no, and backtrack on conflict. Exhaustive, so an uncolorable verdict is a
// proof. Labels outside every context are pinned to no in counting.
Verdict search_colorings(const Scenario& s, SearchMode mode);

// True iff every context contains exactly one yes. Throws
// std::invalid_argument if the assignment does not cover all effects.
bool verify_assignment(const Scenario& s, const Assignment& a);

struct Census {
    std::size_t context_count = 0;
    std::vector<std::size_t> context_sizes;
    std::vector<std::size_t> label_multiplicity;  // per effect index
    bool all_multiplicities_even = true;
    bool context_count_odd = false;
};

Census coloring_census(const Scenario& s);

}  // namespace ksq
