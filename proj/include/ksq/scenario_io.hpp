#pragma once

#include "ksq/contextuality.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

namespace ksq {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DirectionDecl {
    std::string label;  // base name; members reference it as "<label>+" / "<label>-"
    Vec3Q coords;

    friend bool operator==(const DirectionDecl&, const DirectionDecl&) = default;
};

struct ContextDecl {
    std::vector<SignedLabel> members;
    std::optional<Rational> weight;  // per-member weight; defaults to 2/members.size()

    friend bool operator==(const ContextDecl&, const ContextDecl&) = default;
};

/// Wire form of a scenario. Numbers are exact four-integer QuadNum encodings
/// [a_num, a_den, b_num, b_den] meaning a_num/a_den + (b_num/b_den)*sqrt(D),
/// with the radicand D declared once for the whole document.
struct ScenarioDocument {
    std::string name;
    std::int64_t radicand = 5;
    std::vector<DirectionDecl> directions;
    std::vector<ContextDecl> contexts;

    friend bool operator==(const ScenarioDocument&, const ScenarioDocument&) = default;
};

// Strict parse: unknown fields, malformed encodings and unresolvable members
// are rejected with a diagnostic naming the offending element.
ScenarioDocument parse_scenario_document(const std::string& text);
ScenarioDocument document_from_json(const nlohmann::json& j);
nlohmann::json document_to_json(const ScenarioDocument& doc);
std::string serialize_scenario_document(const ScenarioDocument& doc);

// Resolves members to effects, applies and cross-checks weights, and runs the
// physical-realizability validation of make_scenario (unless combinatorial).
Scenario compile_scenario(const ScenarioDocument& doc, bool combinatorial_only = false,
                          double tolerance = 1e-12);

// Builtin proof objects.
ScenarioDocument dodecahedron_document();  // 5 inscribed-cube contexts over Q(sqrt(5))
ScenarioDocument hexagon_document();       // 3 four-element contexts over Q(sqrt(3))
ScenarioDocument cube_document();          // single-cube colorable control

const std::vector<std::string>& builtin_scenario_names();
std::optional<ScenarioDocument> builtin_document(const std::string& name);

// `source` is a builtin name or a path to a scenario file.
Scenario load_scenario(const std::string& source, bool combinatorial_only = false,
                       double tolerance = 1e-12);

// JSON helpers shared with the report layer.
nlohmann::json bigint_to_json(const BigInt& value);
BigInt bigint_from_json(const nlohmann::json& j, const std::string& where);
nlohmann::json rational_to_json(const Rational& value);
nlohmann::json quadnum_to_json(const QuadNum& value);
QuadNum quadnum_from_json(const nlohmann::json& j, std::int64_t radicand, const std::string& where);

}  // namespace ksq
