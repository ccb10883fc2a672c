#include "ksq/effects.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace ksq;

namespace {

const Rational kQuarter(1, 4);

Vec3Q ones() { return {QuadNum(1), QuadNum(1), QuadNum(1)}; }

// Floating 2x2 eigenvalue check, independent of the exact-sign path: the
// Bloch operator alpha*I + v.sigma has eigenvalues alpha +- |v|.
bool psd_by_eigenvalues(const Effect& e) {
    const double alpha = to_double(e.weight) / 2.0;
    const auto n = unit_double(e.direction);
    const double vnorm = std::abs(alpha) * std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    return alpha - vnorm >= -1e-12 && alpha + vnorm >= -1e-12;
}

std::mt19937 rng(987654);

Vec3Q random_direction() {
    std::uniform_int_distribution<int> coord(-3, 3);
    while (true) {
        Vec3Q v = {QuadNum(coord(rng)), QuadNum(coord(rng)), QuadNum(coord(rng))};
        if (!is_zero(v)) return v;
    }
}

}  // namespace

TEST_CASE("effect construction stores the exact Bloch data") {
    const Effect e = effect_from_direction(SignedLabel{"C", true}, ones(), kQuarter);
    CHECK(e.weight == kQuarter);
    CHECK(e.norm_sq == QuadNum(3));

    // operator trace equals the weight: tr E = 2 * (w/2)
    const CompletenessReport single = check_completeness(std::vector<Effect>{e});
    CHECK(QuadNum(Rational(2)) + single.trace_residual == QuadNum(kQuarter));

    CHECK_THROWS_AS(effect_from_direction(SignedLabel{"X", true}, ones(), Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(effect_from_direction(SignedLabel{"X", true}, ones(), Rational(-1, 4)),
                    std::invalid_argument);
    CHECK_THROWS_AS(effect_from_direction(SignedLabel{"X", true}, ones(), Rational(2)), std::invalid_argument);
    CHECK_THROWS_AS(
        effect_from_direction(SignedLabel{"X", true}, Vec3Q{QuadNum(0), QuadNum(0), QuadNum(0)}, kQuarter),
        std::invalid_argument);
}

TEST_CASE("antipodal effects sum to w * identity") {
    for (int i = 0; i < 20; ++i) {
        const Vec3Q dir = random_direction();
        const Rational w(1, 4);
        const std::vector<Effect> pair = {
            effect_from_direction(SignedLabel{"X", true}, dir, w),
            effect_from_direction(SignedLabel{"X", false}, -dir, w),
        };
        const CompletenessReport report = check_completeness(pair);
        // trace residual 2w - 2 and exactly cancelled Bloch parts
        CHECK(report.trace_residual == QuadNum(Rational(2) * w - 2));
        REQUIRE(report.bloch_residuals.size() == 1);
        CHECK(is_zero(report.bloch_residuals[0].weighted_direction_sum));
    }
}

TEST_CASE("each inscribed-cube POVM resolves the identity exactly") {
    const VertexSet vs = dodecahedron_vertices();
    const auto cubes = find_inscribed_cubes(vs);
    REQUIRE(cubes.size() == 5);
    for (const auto& cube : cubes) {
        const Povm povm = cube_povm(cube, vs);
        REQUIRE(povm.effects.size() == 8);
        for (const auto& e : povm.effects) CHECK(e.weight == kQuarter);
        const CompletenessReport report = check_completeness(povm.effects);
        CHECK(report.status == CompletenessStatus::exact);
        CHECK(report.trace_residual.is_zero());
        for (const auto& c : report.bloch_residuals) CHECK(is_zero(c.weighted_direction_sum));
        CHECK(report.float_residual < 1e-12);
    }
}

TEST_CASE("cube_povm rejects non-cube subsets") {
    const VertexSet vs = dodecahedron_vertices();
    CubeSubset bogus;
    for (const auto* v : vs.positive_vertices()) {
        if (bogus.member_labels.size() == 8) break;
        bogus.member_labels.push_back(v->label);
        bogus.member_labels.push_back(v->label.opposite());
    }
    CHECK_THROWS_AS(cube_povm(bogus, vs), std::invalid_argument);
}

TEST_CASE("hexagon pairs form complete four-element POVMs") {
    const VertexSet vs = hexagon_directions();
    const auto pos = vs.positive_vertices();
    const std::vector<SignedLabel> members = {pos[0]->label, pos[0]->label.opposite(), pos[1]->label,
                                              pos[1]->label.opposite()};
    const Povm povm = povm_from_vertices(vs, members, Rational(1, 2));
    CHECK(povm.effects.size() == 4);
    CHECK(check_completeness(povm.effects).status == CompletenessStatus::exact);
}

TEST_CASE("all twenty quarter-weight effects are not a POVM") {
    const VertexSet vs = dodecahedron_vertices();
    std::vector<SignedLabel> all;
    for (const auto& v : vs.vertices) all.push_back(v.label);
    const Povm povm = povm_from_vertices(vs, all, kQuarter);
    const CompletenessReport report = check_completeness(povm.effects);
    CHECK(report.status == CompletenessStatus::failed);
    // 20 * 1/4 - 2 = 3
    CHECK(report.trace_residual == QuadNum(3));
}

TEST_CASE("dropping one effect breaks completeness with trace residual -1/4") {
    const VertexSet vs = dodecahedron_vertices();
    const Povm povm = cube_povm(find_inscribed_cubes(vs).front(), vs);
    const std::vector<Effect> seven(povm.effects.begin(), povm.effects.end() - 1);
    const CompletenessReport report = check_completeness(seven);
    CHECK(report.status == CompletenessStatus::failed);
    CHECK(report.trace_residual == QuadNum(Rational(-1, 4)));
}

TEST_CASE("cross-class cancellation degrades to a numeric-only verdict") {
    // Same axis carried by two different norm classes: exact per-class sums
    // cannot see the cancellation.
    const std::vector<Effect> pair = {
        effect_from_direction(SignedLabel{"P", true}, ones(), Rational(1)),
        effect_from_direction(SignedLabel{"P", false}, {QuadNum(-2), QuadNum(-2), QuadNum(-2)}, Rational(1)),
    };
    const CompletenessReport report = check_completeness(pair);
    CHECK(report.status == CompletenessStatus::numeric_only);
    CHECK(report.trace_residual.is_zero());
    CHECK(report.float_residual < 1e-12);
}

TEST_CASE("equal norms from distinct fields cannot be combined exactly") {
    // (1, sqrt(3), 0) and (phi, 1/phi, 1) both have squared norm 4.
    const Rational half(1, 2);
    const Vec3Q hexagon_dir = {QuadNum(1), sqrt_of(3), QuadNum(0)};
    const Vec3Q golden_dir = {QuadNum(half, half, 5), QuadNum(-half, half, 5), QuadNum(1)};
    REQUIRE(dot(hexagon_dir, hexagon_dir) == QuadNum(4));
    REQUIRE(dot(golden_dir, golden_dir) == QuadNum(4));
    const std::vector<Effect> pair = {
        effect_from_direction(SignedLabel{"H", true}, hexagon_dir, Rational(1)),
        effect_from_direction(SignedLabel{"G", true}, golden_dir, Rational(1)),
    };
    CHECK_THROWS_AS(check_completeness(pair), FieldMismatchError);
}

TEST_CASE("positive semidefiniteness") {
    const Effect quarter = effect_from_direction(SignedLabel{"C", true}, ones(), kQuarter);
    CHECK(check_psd(quarter));

    // test backdoor: aggregate construction bypasses the factory validation
    const Effect negative{SignedLabel{"C", true}, Rational(-1, 4), ones(), QuadNum(3)};
    CHECK_FALSE(check_psd(negative));

    const Effect projector = effect_from_direction(SignedLabel{"Z", true},
                                                   {QuadNum(0), QuadNum(0), QuadNum(1)}, Rational(1));
    CHECK(check_psd(projector));
}

TEST_CASE("exact PSD agrees with floating eigenvalues on random effects") {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 4);
    for (int i = 0; i < 200; ++i) {
        const Rational w = make_rational(num(rng), den(rng));
        if (w == 0) continue;
        const Vec3Q dir = random_direction();
        const Effect e{SignedLabel{"R", true}, w, dir, dot(dir, dir)};
        CHECK(check_psd(e) == psd_by_eigenvalues(e));
    }
}

TEST_CASE("Born probabilities") {
    const VertexSet vs = dodecahedron_vertices();
    const Povm povm = cube_povm(find_inscribed_cubes(vs).front(), vs);
    const Effect& first = povm.effects.front();
    const auto aligned = unit_double(first.direction);

    CHECK(born_probability(aligned, first) == doctest::Approx(0.25).epsilon(1e-12));

    const auto it = std::find_if(povm.effects.begin(), povm.effects.end(), [&](const Effect& e) {
        return e.label == first.label.opposite();
    });
    REQUIRE(it != povm.effects.end());
    CHECK(born_probability(aligned, *it) == doctest::Approx(0.0).epsilon(1e-12));

    const std::array<double, 3> mixed{0.0, 0.0, 0.0};
    CHECK(born_probability(mixed, first) == doctest::Approx(0.125).epsilon(1e-12));

    CHECK_THROWS_AS(born_probability({1.1, 0.0, 0.0}, first), std::domain_error);
}

TEST_CASE("complete POVMs give Born distributions on the simplex") {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const VertexSet vs = dodecahedron_vertices();
    const auto cubes = find_inscribed_cubes(vs);
    for (int trial = 0; trial < 50; ++trial) {
        std::array<double, 3> r{unif(rng), unif(rng), unif(rng)};
        const double len = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
        if (len > 1.0) {
            for (auto& c : r) c /= len;
        }
        const Povm povm = cube_povm(cubes[trial % cubes.size()], vs);
        double total = 0.0;
        for (const auto& e : povm.effects) {
            const double p = born_probability(r, e);
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
            total += p;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}
