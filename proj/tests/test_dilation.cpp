#include "ksq/dilation.hpp"

#include "ksq/scenario_io.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

using namespace ksq;

namespace {

using Complex = std::complex<double>;
using Matrix2 = std::array<std::array<Complex, 2>, 2>;

// Independent matrix-trace oracle: build E = (w/2)(I + n.sigma) and
// rho = (1/2)(I + r.sigma) as explicit 2x2 complex matrices and take
// Re tr(E rho). No shared code with the isometry or Born-rule paths.
Matrix2 bloch_operator(double scale, const std::array<double, 3>& v) {
    return {{{Complex(scale + v[2], 0.0), Complex(v[0], -v[1])},
             {Complex(v[0], v[1]), Complex(scale - v[2], 0.0)}}};
}

double trace_product(const Matrix2& a, const Matrix2& b) {
    Complex tr = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int k = 0; k < 2; ++k) tr += a[i][k] * b[k][i];
    }
    return tr.real();
}

double oracle_probability(const Effect& e, const std::array<double, 3>& state_bloch) {
    const double w = to_double(e.weight);
    const auto n = unit_double(e.direction);
    const Matrix2 effect = bloch_operator(w / 2.0, {w / 2.0 * n[0], w / 2.0 * n[1], w / 2.0 * n[2]});
    const Matrix2 rho = bloch_operator(0.5, {0.5 * state_bloch[0], 0.5 * state_bloch[1], 0.5 * state_bloch[2]});
    return trace_product(effect, rho);
}

Povm first_cube_povm() {
    const VertexSet vs = dodecahedron_vertices();
    return cube_povm(find_inscribed_cubes(vs).front(), vs);
}

std::mt19937 rng(555);

}  // namespace

TEST_CASE("spinors for the coordinate axes") {
    const Spinor up = spinor_from_unit({0.0, 0.0, 1.0});
    CHECK(std::abs(up.up - 1.0) < 1e-15);
    CHECK(std::abs(up.down) < 1e-15);

    const Spinor down = spinor_from_unit({0.0, 0.0, -1.0});
    CHECK(std::abs(down.up) < 1e-15);
    CHECK(std::abs(down.down - 1.0) < 1e-15);

    const Spinor plus_x = spinor_from_unit({1.0, 0.0, 0.0});
    CHECK(std::abs(plus_x.up - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(plus_x.down - 1.0 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("spinors are +1 eigenstates with the fixed phase convention") {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        std::array<double, 3> n{unif(rng), unif(rng), unif(rng)};
        const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
        if (len < 1e-3) continue;
        for (auto& c : n) c /= len;

        const Spinor psi = spinor_from_unit(n);
        CHECK(psi.up.imag() == 0.0);
        CHECK(psi.up.real() >= 0.0);
        CHECK(std::norm(psi.up) + std::norm(psi.down) == doctest::Approx(1.0).epsilon(1e-12));

        // <psi| n.sigma |psi> = 1
        const auto bloch = bloch_of(psi);
        const double expectation = n[0] * bloch[0] + n[1] * bloch[1] + n[2] * bloch[2];
        CHECK(expectation == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("neumark isometries of the builtin POVMs") {
    const Povm cube = first_cube_povm();
    const Isometry v = neumark_isometry(cube);
    CHECK(v.rows.size() == 8);
    CHECK(v.vtv_residual() < 1e-12);

    const VertexSet hexagon = hexagon_directions();
    const auto pos = hexagon.positive_vertices();
    const std::vector<SignedLabel> members = {pos[0]->label, pos[0]->label.opposite(), pos[1]->label,
                                              pos[1]->label.opposite()};
    const Isometry hex = neumark_isometry(povm_from_vertices(hexagon, members, Rational(1, 2)));
    CHECK(hex.rows.size() == 4);
    CHECK(hex.vtv_residual() < 1e-12);
}

TEST_CASE("a projective measurement dilates to a 2x2 unitary") {
    const Vec3Q z = {QuadNum(0), QuadNum(0), QuadNum(1)};
    Povm projective;
    projective.effects.push_back(effect_from_direction(SignedLabel{"Z", true}, z, Rational(1)));
    projective.effects.push_back(effect_from_direction(SignedLabel{"Z", false}, -z, Rational(1)));
    const Isometry v = neumark_isometry(projective);
    REQUIRE(v.rows.size() == 2);
    CHECK(v.vtv_residual() < 1e-12);
    // rows are <+z| and <-z| up to the fixed phase: a permutation-like unitary
    CHECK(std::abs(v.rows[0][0] - 1.0) < 1e-12);
    CHECK(std::abs(v.rows[0][1]) < 1e-12);
    CHECK(std::abs(v.rows[1][0]) < 1e-12);
    CHECK(std::abs(std::abs(v.rows[1][1]) - 1.0) < 1e-12);

    const auto dist = outcome_distribution(projective, Spinor{1.0, 0.0});
    CHECK(dist[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dist[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("incomplete POVMs are rejected") {
    Povm broken = first_cube_povm();
    broken.effects.pop_back();
    CHECK_THROWS_AS(neumark_isometry(broken), std::invalid_argument);
    CHECK_THROWS_AS(outcome_distribution(broken, Spinor{1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("random antipodal-pair POVMs dilate to isometries") {
    std::uniform_int_distribution<int> coord(-3, 3);
    std::uniform_int_distribution<int> pair_count(2, 6);
    for (int trial = 0; trial < 30; ++trial) {
        const int pairs = pair_count(rng);
        Povm povm;
        for (int p = 0; p < pairs; ++p) {
            Vec3Q dir = {QuadNum(coord(rng)), QuadNum(coord(rng)), QuadNum(coord(rng))};
            if (is_zero(dir)) dir = {QuadNum(1), QuadNum(0), QuadNum(0)};
            const Rational w(1, pairs);
            const std::string base = "P" + std::to_string(p);
            povm.effects.push_back(effect_from_direction(SignedLabel{base, true}, dir, w));
            povm.effects.push_back(effect_from_direction(SignedLabel{base, false}, -dir, w));
        }
        REQUIRE(check_completeness(povm.effects).status == CompletenessStatus::exact);
        CHECK(neumark_isometry(povm).vtv_residual() < 1e-12);

        const auto dist = outcome_distribution(povm, std::array<double, 3>{0.0, 0.0, 0.0});
        const double total = std::accumulate(dist.begin(), dist.end(), 0.0);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("distribution for a state aligned with a cube vertex") {
    const Povm cube = first_cube_povm();
    const Effect& aligned_effect = cube.effects.front();
    const Spinor psi = spinor_from_direction(aligned_effect.direction);
    const auto dist = outcome_distribution(cube, psi);
    REQUIRE(dist.size() == 8);

    // exact pattern: 1/4 on the aligned vertex, 0 on its antipode,
    // 1/6 on the three vertices at cos = +1/3, 1/12 at cos = -1/3
    std::vector<double> sorted = dist;
    std::sort(sorted.begin(), sorted.end());
    const std::vector<double> expected = {0.0,        1.0 / 12.0, 1.0 / 12.0, 1.0 / 12.0,
                                          1.0 / 6.0,  1.0 / 6.0,  1.0 / 6.0,  1.0 / 4.0};
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(sorted[i] == doctest::Approx(expected[i]).epsilon(1e-10));
    }
    CHECK(std::accumulate(dist.begin(), dist.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));

    // the independent matrix-trace oracle agrees outcome by outcome
    const auto bloch = bloch_of(psi);
    for (std::size_t i = 0; i < cube.effects.size(); ++i) {
        CHECK(dist[i] == doctest::Approx(oracle_probability(cube.effects[i], bloch)).epsilon(1e-10));
    }
}

TEST_CASE("isometry and Bloch distributions agree for random states") {
    const Povm cube = first_cube_povm();
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        std::array<double, 3> n{unif(rng), unif(rng), unif(rng)};
        const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
        if (len < 1e-3) continue;
        for (auto& c : n) c /= len;
        const Spinor psi = spinor_from_unit(n);
        const auto via_isometry = outcome_distribution(cube, psi);
        const auto via_bloch = outcome_distribution(cube, bloch_of(psi));
        for (std::size_t k = 0; k < via_isometry.size(); ++k) {
            CHECK(via_isometry[k] == doctest::Approx(via_bloch[k]).epsilon(1e-10));
            CHECK(via_isometry[k] >= 0.0);
        }
    }
}

TEST_CASE("the maximally mixed state is uniform over a cube POVM") {
    const Povm cube = first_cube_povm();
    const auto dist = outcome_distribution(cube, std::array<double, 3>{0.0, 0.0, 0.0});
    for (double p : dist) CHECK(p == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("sampling is seeded and reproducible") {
    const Povm cube = first_cube_povm();
    const std::array<double, 3> mixed{0.0, 0.0, 0.0};

    const OutcomeHistogram one = sample(cube, mixed, 1, 99);
    CHECK(one.total == 1);
    CHECK(std::accumulate(one.counts.begin(), one.counts.end(), std::uint64_t(0)) == 1);

    const OutcomeHistogram a = sample(cube, mixed, 20000, 7);
    const OutcomeHistogram b = sample(cube, mixed, 20000, 7);
    CHECK(a.counts == b.counts);

    const OutcomeHistogram c = sample(cube, mixed, 20000, 8);
    CHECK(a.counts != c.counts);
}

TEST_CASE("sampled frequencies approach the uniform law") {
    const Povm cube = first_cube_povm();
    const std::uint64_t n = 100000;
    const OutcomeHistogram h = sample(cube, std::array<double, 3>{0.0, 0.0, 0.0}, n, 31337);
    const double p = 0.125;
    const double sigma = std::sqrt(p * (1 - p) * static_cast<double>(n));
    for (std::uint64_t count : h.counts) {
        CHECK(std::abs(static_cast<double>(count) - p * static_cast<double>(n)) < 4.0 * sigma);
    }
}

TEST_CASE("chi-square goodness of fit accepts faithful samples and rejects wrong laws") {
    const Povm cube = first_cube_povm();
    const auto dist = outcome_distribution(cube, std::array<double, 3>{0.0, 0.0, 0.0});
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const OutcomeHistogram h = sample(cube, std::array<double, 3>{0.0, 0.0, 0.0}, 100000, seed);
        const GoodnessOfFit fit = chi_square_gof(h, dist);
        CHECK(fit.dof == 7);
        CHECK(fit.p_value > 1e-6);
    }

    // a grossly wrong law must be rejected
    std::vector<double> wrong(8, 0.0);
    wrong[0] = 0.5;
    for (std::size_t i = 1; i < 8; ++i) wrong[i] = 0.5 / 7.0;
    const OutcomeHistogram h = sample(cube, std::array<double, 3>{0.0, 0.0, 0.0}, 100000, 11);
    CHECK(chi_square_gof(h, wrong).p_value < 1e-6);

    // zero-probability bins with observed counts fail outright
    const Spinor aligned = spinor_from_direction(cube.effects.front().direction);
    const auto aligned_dist = outcome_distribution(cube, aligned);
    OutcomeHistogram fake;
    fake.labels = h.labels;
    fake.counts.assign(8, 0);
    fake.total = 8;
    for (auto& c : fake.counts) c = 1;
    const GoodnessOfFit bad = chi_square_gof(fake, aligned_dist);
    CHECK(bad.p_value == 0.0);
}
