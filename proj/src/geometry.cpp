#include "ksq/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

namespace ksq {

SignedLabel SignedLabel::parse(std::string_view text) {
    if (text.size() < 2) throw std::invalid_argument("bad signed label '" + std::string(text) + "'");
    const char sign = text.back();
    if (sign != '+' && sign != '-') {
        throw std::invalid_argument("signed label '" + std::string(text) + "' must end in '+' or '-'");
    }
    std::string base(text.substr(0, text.size() - 1));
    if (base.find_first_of("+-") != std::string::npos) {
        throw std::invalid_argument("signed label '" + std::string(text) + "' has sign characters in its base");
    }
    return {std::move(base), sign == '+'};
}

std::ostream& operator<<(std::ostream& os, const SignedLabel& l) { return os << l.str(); }

QuadNum dot(const Vec3Q& u, const Vec3Q& v) { return u.x * v.x + u.y * v.y + u.z * v.z; }

Vec3Q scale(const Rational& c, const Vec3Q& v) {
    const QuadNum q(c);
    return {q * v.x, q * v.y, q * v.z};
}

bool is_zero(const Vec3Q& v) { return v.x.is_zero() && v.y.is_zero() && v.z.is_zero(); }

bool lex_less(const Vec3Q& u, const Vec3Q& v) {
    if (u.x != v.x) return u.x < v.x;
    if (u.y != v.y) return u.y < v.y;
    return u.z < v.z;
}

std::array<double, 3> to_double(const Vec3Q& v) {
    return {v.x.to_double(), v.y.to_double(), v.z.to_double()};
}

std::array<double, 3> unit_double(const Vec3Q& v) {
    const auto d = to_double(v);
    const double n = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    if (n == 0.0) throw std::invalid_argument("zero direction has no unit vector");
    return {d[0] / n, d[1] / n, d[2] / n};
}

DirectedVertex antipode(const DirectedVertex& v) { return {v.label.opposite(), -v.coords}; }

const DirectedVertex* VertexSet::find(const SignedLabel& label) const {
    for (const auto& v : vertices) {
        if (v.label == label) return &v;
    }
    return nullptr;
}

std::vector<const DirectedVertex*> VertexSet::positive_vertices() const {
    std::vector<const DirectedVertex*> out;
    for (const auto& v : vertices) {
        if (v.label.positive) out.push_back(&v);
    }
    return out;
}

VertexSet make_vertex_set(std::vector<DirectedVertex> vertices) {
    if (vertices.empty()) throw std::invalid_argument("empty vertex set");
    VertexSet vs;
    vs.vertices = std::move(vertices);
    vs.norm_sq = dot(vs.vertices.front().coords, vs.vertices.front().coords);
    for (const auto& v : vs.vertices) {
        if (is_zero(v.coords)) throw std::invalid_argument("vertex " + v.label.str() + " has zero coordinates");
        if (dot(v.coords, v.coords) != vs.norm_sq) {
            throw std::invalid_argument("vertex " + v.label.str() + " breaks the common norm");
        }
    }
    for (std::size_t i = 0; i < vs.vertices.size(); ++i) {
        for (std::size_t j = i + 1; j < vs.vertices.size(); ++j) {
            if (vs.vertices[i].label == vs.vertices[j].label) {
                throw std::invalid_argument("duplicate label " + vs.vertices[i].label.str());
            }
        }
    }
    for (const auto& v : vs.vertices) {
        const DirectedVertex* opp = vs.find(v.label.opposite());
        if (opp == nullptr || opp->coords != -v.coords) {
            throw std::invalid_argument("vertex set not antipode-closed at " + v.label.str());
        }
    }
    return vs;
}

namespace {

std::string letter_label(std::size_t index) {
    if (index < 26) return std::string(1, static_cast<char>('A' + index));
    return "V" + std::to_string(index);
}

// Pairs up antipodes, picks the lexicographically greater member of each pair
// as the '+' ray, sorts the pairs, and assigns base labels A, B, C, ...
VertexSet label_antipodal_points(std::vector<Vec3Q> points) {
    std::vector<Vec3Q> reps;
    for (const auto& p : points) {
        if (lex_less(-p, p)) reps.push_back(p);
    }
    if (reps.size() * 2 != points.size()) throw std::invalid_argument("points are not antipodal pairs");
    std::sort(reps.begin(), reps.end(), lex_less);

    std::vector<DirectedVertex> vertices;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const std::string base = letter_label(i);
        vertices.push_back({{base, true}, reps[i]});
        vertices.push_back({{base, false}, -reps[i]});
    }
    return make_vertex_set(std::move(vertices));
}

}  // namespace

VertexSet dodecahedron_vertices() {
    const Rational half(1, 2);
    const QuadNum phi(half, half, 5);       // (1 + sqrt(5)) / 2
    const QuadNum phi_inv(-half, half, 5);  // phi - 1 = 1/phi

    std::vector<Vec3Q> points;
    for (int sx : {-1, 1}) {
        for (int sy : {-1, 1}) {
            for (int sz : {-1, 1}) {
                points.push_back({QuadNum(sx), QuadNum(sy), QuadNum(sz)});
            }
        }
    }
    for (int s1 : {-1, 1}) {
        for (int s2 : {-1, 1}) {
            const QuadNum a = QuadNum(s1) * phi_inv;
            const QuadNum b = QuadNum(s2) * phi;
            const QuadNum zero(0);
            points.push_back({zero, a, b});
            points.push_back({b, zero, a});
            points.push_back({a, b, zero});
        }
    }
    return label_antipodal_points(std::move(points));
}

VertexSet hexagon_directions() {
    const QuadNum zero(0);
    const QuadNum root3 = sqrt_of(3);
    std::vector<Vec3Q> points = {
        {QuadNum(2), zero, zero},  {QuadNum(1), root3, zero},  {QuadNum(-1), root3, zero},
        {QuadNum(-2), zero, zero}, {QuadNum(-1), -root3, zero}, {QuadNum(1), -root3, zero},
    };
    return label_antipodal_points(std::move(points));
}

VertexSet cube_vertices() {
    std::vector<Vec3Q> points;
    for (int sx : {-1, 1}) {
        for (int sy : {-1, 1}) {
            for (int sz : {-1, 1}) {
                points.push_back({QuadNum(sx), QuadNum(sy), QuadNum(sz)});
            }
        }
    }
    return label_antipodal_points(std::move(points));
}

namespace {

// Cube signature: against the 7 other chosen vertices, each vertex sees dot
// products norm/3 three times, -norm/3 three times and -norm exactly once.
bool has_cube_signature(const std::vector<const DirectedVertex*>& eight, const QuadNum& norm_sq) {
    const QuadNum third = norm_sq * QuadNum(Rational(1, 3));
    for (const auto* u : eight) {
        int adjacent = 0, diagonal = 0, antipodal = 0;
        for (const auto* v : eight) {
            if (u == v) continue;
            const QuadNum d = dot(u->coords, v->coords);
            if (d == third) {
                ++adjacent;
            } else if (d == -third) {
                ++diagonal;
            } else if (d == -norm_sq) {
                ++antipodal;
            } else {
                return false;
            }
        }
        if (adjacent != 3 || diagonal != 3 || antipodal != 1) return false;
    }
    return true;
}

}  // namespace

std::vector<CubeSubset> find_inscribed_cubes(const VertexSet& vs) {
    std::vector<CubeSubset> cubes;
    const auto pos = vs.positive_vertices();
    const std::size_t n = pos.size();
    if (n < 4) return cubes;

    std::vector<const DirectedVertex*> negs;
    for (const auto* p : pos) negs.push_back(vs.find(p->label.opposite()));

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                for (std::size_t l = k + 1; l < n; ++l) {
                    const std::vector<const DirectedVertex*> eight = {
                        pos[i], negs[i], pos[j], negs[j], pos[k], negs[k], pos[l], negs[l],
                    };
                    if (!has_cube_signature(eight, vs.norm_sq)) continue;
                    CubeSubset cube;
                    for (const auto* v : eight) cube.member_labels.push_back(v->label);
                    std::sort(cube.member_labels.begin(), cube.member_labels.end());
                    cubes.push_back(std::move(cube));
                }
            }
        }
    }
    return cubes;
}

}  // namespace ksq
