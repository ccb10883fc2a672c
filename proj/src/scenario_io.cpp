#include "ksq/scenario_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace ksq {

using nlohmann::json;

namespace {

void reject_unknown_fields(const json& obj, std::initializer_list<const char*> allowed,
                           const std::string& where) {
    for (const auto& item : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* k) { return item.key() == k; }) == allowed.end()) {
            throw ParseError(where + ": unknown field '" + item.key() + "'");
        }
    }
}

const json& require_field(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
    return *it;
}

}  // namespace

json bigint_to_json(const BigInt& value) {
    static const BigInt lo = std::numeric_limits<std::int64_t>::min();
    static const BigInt hi = std::numeric_limits<std::int64_t>::max();
    if (value >= lo && value <= hi) return value.convert_to<std::int64_t>();
    return value.str();
}

BigInt bigint_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return BigInt(j.get<std::string>());
        } catch (const std::exception&) {
            throw ParseError(where + ": '" + j.get<std::string>() + "' is not an integer");
        }
    }
    throw ParseError(where + ": expected an integer (number or decimal string)");
}

json rational_to_json(const Rational& value) {
    return json::array({bigint_to_json(numerator(value)), bigint_to_json(denominator(value))});
}

json quadnum_to_json(const QuadNum& value) {
    return json::array({bigint_to_json(numerator(value.rat_part())),
                        bigint_to_json(denominator(value.rat_part())),
                        bigint_to_json(numerator(value.rad_part())),
                        bigint_to_json(denominator(value.rad_part()))});
}

QuadNum quadnum_from_json(const json& j, std::int64_t radicand, const std::string& where) {
    if (!j.is_array() || j.size() != 4) {
        throw ParseError(where + ": expected a four-integer array [a_num, a_den, b_num, b_den]");
    }
    const BigInt a_num = bigint_from_json(j[0], where + "[0]");
    const BigInt a_den = bigint_from_json(j[1], where + "[1]");
    const BigInt b_num = bigint_from_json(j[2], where + "[2]");
    const BigInt b_den = bigint_from_json(j[3], where + "[3]");
    if (a_den == 0 || b_den == 0) throw ParseError(where + ": zero denominator");
    return QuadNum(make_rational(a_num, a_den), make_rational(b_num, b_den), radicand);
}

ScenarioDocument parse_scenario_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("syntax error: ") + e.what());
    }
    return document_from_json(j);
}

ScenarioDocument document_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("scenario document must be a JSON object");
    reject_unknown_fields(j, {"name", "radicand", "directions", "contexts"}, "document");

    ScenarioDocument doc;
    const json& name = require_field(j, "name", "document");
    if (!name.is_string() || name.get<std::string>().empty()) {
        throw ParseError("document: 'name' must be a nonempty string");
    }
    doc.name = name.get<std::string>();

    const json& radicand = require_field(j, "radicand", "document");
    if (!radicand.is_number_integer()) throw ParseError("document: 'radicand' must be an integer");
    doc.radicand = radicand.get<std::int64_t>();
    if (doc.radicand < 2 || !is_square_free(doc.radicand)) {
        throw ParseError("document: radicand " + std::to_string(doc.radicand) +
                         " must be a square-free integer >= 2");
    }

    const json& directions = require_field(j, "directions", "document");
    if (!directions.is_array()) throw ParseError("document: 'directions' must be an array");
    for (std::size_t i = 0; i < directions.size(); ++i) {
        const std::string where = "directions[" + std::to_string(i) + "]";
        const json& d = directions[i];
        if (!d.is_object()) throw ParseError(where + ": expected an object");
        reject_unknown_fields(d, {"label", "coords"}, where);
        const json& label = require_field(d, "label", where);
        if (!label.is_string() || label.get<std::string>().empty()) {
            throw ParseError(where + ": 'label' must be a nonempty string");
        }
        DirectionDecl decl;
        decl.label = label.get<std::string>();
        if (decl.label.find_first_of("+-") != std::string::npos) {
            throw ParseError(where + ": direction label '" + decl.label +
                             "' must not contain sign characters");
        }
        const json& coords = require_field(d, "coords", where);
        if (!coords.is_array() || coords.size() != 3) {
            throw ParseError(where + ": 'coords' must be an array of three numbers");
        }
        decl.coords = {quadnum_from_json(coords[0], doc.radicand, where + ".coords[0]"),
                       quadnum_from_json(coords[1], doc.radicand, where + ".coords[1]"),
                       quadnum_from_json(coords[2], doc.radicand, where + ".coords[2]")};
        doc.directions.push_back(std::move(decl));
    }

    const json& contexts = require_field(j, "contexts", "document");
    if (!contexts.is_array()) throw ParseError("document: 'contexts' must be an array");
    for (std::size_t i = 0; i < contexts.size(); ++i) {
        const std::string where = "contexts[" + std::to_string(i) + "]";
        const json& c = contexts[i];
        if (!c.is_object()) throw ParseError(where + ": expected an object");
        reject_unknown_fields(c, {"members", "weight"}, where);
        const json& members = require_field(c, "members", where);
        if (!members.is_array() || members.empty()) {
            throw ParseError(where + ": 'members' must be a nonempty array of signed labels");
        }
        ContextDecl decl;
        for (std::size_t m = 0; m < members.size(); ++m) {
            if (!members[m].is_string()) {
                throw ParseError(where + ".members[" + std::to_string(m) + "]: expected a string");
            }
            try {
                decl.members.push_back(SignedLabel::parse(members[m].get<std::string>()));
            } catch (const std::invalid_argument& e) {
                throw ParseError(where + ".members[" + std::to_string(m) + "]: " + e.what());
            }
        }
        if (auto it = c.find("weight"); it != c.end()) {
            if (!it->is_array() || it->size() != 2) {
                throw ParseError(where + ": 'weight' must be a two-integer array [num, den]");
            }
            const BigInt num = bigint_from_json((*it)[0], where + ".weight[0]");
            const BigInt den = bigint_from_json((*it)[1], where + ".weight[1]");
            if (den == 0) throw ParseError(where + ".weight: zero denominator");
            decl.weight = make_rational(num, den);
        }
        doc.contexts.push_back(std::move(decl));
    }
    return doc;
}

json document_to_json(const ScenarioDocument& doc) {
    json j;
    j["name"] = doc.name;
    j["radicand"] = doc.radicand;
    j["directions"] = json::array();
    for (const auto& d : doc.directions) {
        j["directions"].push_back(
            {{"label", d.label},
             {"coords", json::array({quadnum_to_json(d.coords.x), quadnum_to_json(d.coords.y),
                                     quadnum_to_json(d.coords.z)})}});
    }
    j["contexts"] = json::array();
    for (const auto& c : doc.contexts) {
        json ctx;
        ctx["members"] = json::array();
        for (const auto& m : c.members) ctx["members"].push_back(m.str());
        if (c.weight) ctx["weight"] = rational_to_json(*c.weight);
        j["contexts"].push_back(std::move(ctx));
    }
    return j;
}

std::string serialize_scenario_document(const ScenarioDocument& doc) {
    return document_to_json(doc).dump(2) + "\n";
}

Scenario compile_scenario(const ScenarioDocument& doc, bool combinatorial_only, double tolerance) {
    std::map<std::string, const DirectionDecl*> by_label;
    for (const auto& d : doc.directions) {
        if (!by_label.emplace(d.label, &d).second) {
            throw ParseError("duplicate direction label '" + d.label + "'");
        }
    }

    std::vector<Effect> effects;
    std::vector<std::vector<std::size_t>> contexts;
    std::map<std::string, std::pair<std::size_t, Rational>> effect_index;  // label -> (index, weight)

    for (std::size_t c = 0; c < doc.contexts.size(); ++c) {
        const ContextDecl& ctx = doc.contexts[c];
        const std::string where = "context " + std::to_string(c);
        const Rational weight =
            ctx.weight ? *ctx.weight : make_rational(2, static_cast<long long>(ctx.members.size()));
        std::vector<std::size_t> indices;
        for (const auto& member : ctx.members) {
            auto dir_it = by_label.find(member.base);
            if (dir_it == by_label.end()) {
                throw ParseError(where + ": unknown label " + member.str());
            }
            auto known = effect_index.find(member.str());
            if (known != effect_index.end()) {
                if (known->second.second != weight) {
                    throw ParseError(where + ": effect " + member.str() + " carries weight " +
                                     to_string(weight) + " here but " + to_string(known->second.second) +
                                     " elsewhere; shared effects must be identical");
                }
                indices.push_back(known->second.first);
                continue;
            }
            const Vec3Q direction =
                member.positive ? dir_it->second->coords : -dir_it->second->coords;
            try {
                effects.push_back(effect_from_direction(member, direction, weight));
            } catch (const std::invalid_argument& e) {
                throw ParseError(where + ": " + e.what());
            }
            effect_index.emplace(member.str(), std::make_pair(effects.size() - 1, weight));
            indices.push_back(effects.size() - 1);
        }
        contexts.push_back(std::move(indices));
    }

    Scenario s = make_scenario(doc.name, doc.radicand, std::move(effects), std::move(contexts),
                               combinatorial_only, tolerance);
    for (const auto& d : doc.directions) {
        const bool used = effect_index.count(d.label + "+") > 0 || effect_index.count(d.label + "-") > 0;
        if (!used) s.warnings.push_back("direction " + d.label + " is declared but never referenced");
    }
    return s;
}

namespace {

ScenarioDocument document_from_vertex_contexts(std::string name, std::int64_t radicand,
                                               const VertexSet& vs,
                                               const std::vector<std::vector<SignedLabel>>& contexts,
                                               const Rational& weight) {
    ScenarioDocument doc;
    doc.name = std::move(name);
    doc.radicand = radicand;
    for (const auto* v : vs.positive_vertices()) doc.directions.push_back({v->label.base, v->coords});
    for (const auto& members : contexts) doc.contexts.push_back({members, weight});
    return doc;
}

}  // namespace

ScenarioDocument dodecahedron_document() {
    const VertexSet vs = dodecahedron_vertices();
    std::vector<std::vector<SignedLabel>> contexts;
    for (const auto& cube : find_inscribed_cubes(vs)) contexts.push_back(cube.member_labels);
    return document_from_vertex_contexts("dodecahedron", 5, vs, contexts, Rational(1, 4));
}

ScenarioDocument hexagon_document() {
    const VertexSet vs = hexagon_directions();
    const auto pair = [&](std::size_t i, std::size_t j) {
        const auto pos = vs.positive_vertices();
        std::vector<SignedLabel> members = {pos[i]->label, pos[i]->label.opposite(), pos[j]->label,
                                            pos[j]->label.opposite()};
        std::sort(members.begin(), members.end());
        return members;
    };
    return document_from_vertex_contexts("hexagon", 3, vs, {pair(0, 1), pair(1, 2), pair(0, 2)},
                                         Rational(1, 2));
}

ScenarioDocument cube_document() {
    const VertexSet vs = cube_vertices();
    std::vector<SignedLabel> members;
    for (const auto& v : vs.vertices) members.push_back(v.label);
    std::sort(members.begin(), members.end());
    return document_from_vertex_contexts("cube", 5, vs, {members}, Rational(1, 4));
}

const std::vector<std::string>& builtin_scenario_names() {
    static const std::vector<std::string> names = {"dodecahedron", "hexagon", "cube"};
    return names;
}

std::optional<ScenarioDocument> builtin_document(const std::string& name) {
    if (name == "dodecahedron") return dodecahedron_document();
    if (name == "hexagon") return hexagon_document();
    if (name == "cube") return cube_document();
    return std::nullopt;
}

Scenario load_scenario(const std::string& source, bool combinatorial_only, double tolerance) {
    if (auto doc = builtin_document(source)) {
        return compile_scenario(*doc, combinatorial_only, tolerance);
    }
    std::ifstream in(source);
    if (!in) {
        throw ParseError("cannot open '" + source + "': not a builtin scenario (" +
                         "dodecahedron, hexagon, cube) or a readable file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return compile_scenario(parse_scenario_document(buffer.str()), combinatorial_only, tolerance);
}

}  // namespace ksq
