#pragma once

#include "ksq/exactnum.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace ksq {

// Outcome label "A+" / "A-": a base name plus a ray sign.
struct SignedLabel {
    std::string base;
    bool positive = true;

    std::string str() const { return base + (positive ? '+' : '-'); }
    SignedLabel opposite() const { return {base, !positive}; }

    // Accepts "<base>+" or "<base>-" with a nonempty base free of sign characters.
    static SignedLabel parse(std::string_view text);

    friend bool operator==(const SignedLabel&, const SignedLabel&) = default;
    friend bool operator<(const SignedLabel& a, const SignedLabel& b) {
        if (a.base != b.base) return a.base < b.base;
        return a.positive && !b.positive;  // "X+" sorts before "X-"
    }
};

std::ostream& operator<<(std::ostream& os, const SignedLabel& l);

// Exact 3-vector; all components must live in one quadratic field.
struct Vec3Q {
    QuadNum x, y, z;

    friend bool operator==(const Vec3Q&, const Vec3Q&) = default;
    Vec3Q operator-() const { return {-x, -y, -z}; }
    friend Vec3Q operator+(const Vec3Q& u, const Vec3Q& v) { return {u.x + v.x, u.y + v.y, u.z + v.z}; }
    friend Vec3Q operator-(const Vec3Q& u, const Vec3Q& v) { return {u.x - v.x, u.y - v.y, u.z - v.z}; }
};

QuadNum dot(const Vec3Q& u, const Vec3Q& v);
Vec3Q scale(const Rational& c, const Vec3Q& v);
bool is_zero(const Vec3Q& v);
bool lex_less(const Vec3Q& u, const Vec3Q& v);  // numeric (x, y, z) order
std::array<double, 3> to_double(const Vec3Q& v);
std::array<double, 3> unit_double(const Vec3Q& v);  // v / |v| in floating point

struct DirectedVertex {
    SignedLabel label;
    Vec3Q coords;

    friend bool operator==(const DirectedVertex&, const DirectedVertex&) = default;
};

DirectedVertex antipode(const DirectedVertex& v);

// Antipode-closed set of labeled directions with a common squared length.
struct VertexSet {
    std::vector<DirectedVertex> vertices;  // ordered A+, A-, B+, B-, ...
    QuadNum norm_sq;

    const DirectedVertex* find(const SignedLabel& label) const;
    std::vector<const DirectedVertex*> positive_vertices() const;
};

// Validates antipode closure, unique labels, nonzero coords and a common
// norm; throws std::invalid_argument otherwise.
VertexSet make_vertex_set(std::vector<DirectedVertex> vertices);

// The 20 dodecahedron vertices over Q(sqrt(5)): (+-1,+-1,+-1) plus the cyclic
// permutations of (0, +-1/phi, +-phi), every vertex of squared length 3.
// Base labels A..J go to antipodal pairs in increasing numeric-lexicographic
// order of the pair's representative, where the representative is the greater
// of v and -v under the same order.
VertexSet dodecahedron_vertices();

// Six directions to the vertices of a regular hexagon in the z = 0 plane,
// over Q(sqrt(3)): (2,0,0), (1,sqrt(3),0), (-1,sqrt(3),0) and antipodes,
// squared length 4. Labeled A..C by the same rule as above.
VertexSet hexagon_directions();

// The 8 cube vertices (+-1,+-1,+-1), squared length 3, labels A..D.
VertexSet cube_vertices();

struct CubeSubset {
    std::vector<SignedLabel> member_labels;  // 8 labels, sorted

    friend bool operator==(const CubeSubset&, const CubeSubset&) = default;
};

// Every 8-element antipode-closed subset whose pairwise dot products match
// the cube signature {norm, norm/3, -norm/3, -norm} with per-vertex
// multiplicities 1/3/3/1. Brute force over all 4-subsets of antipodal pairs;
// deterministic output order.
std::vector<CubeSubset> find_inscribed_cubes(const VertexSet& vs);

}  // namespace ksq
