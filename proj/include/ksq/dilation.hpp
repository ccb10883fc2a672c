#pragma once

#include "ksq/effects.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace ksq {

// Normalized qubit state in the sigma_z eigenbasis.
struct Spinor {
    std::complex<double> up{1.0, 0.0};
    std::complex<double> down{0.0, 0.0};
};

// The +1 eigenstate of n_hat . sigma. Global phase convention: the first
// amplitude is real and nonnegative; at n_hat = -z the spinor is (0, 1).
Spinor spinor_from_unit(const std::array<double, 3>& n_hat);
Spinor spinor_from_direction(const Vec3Q& direction);  // throws on zero direction

std::array<double, 3> bloch_of(const Spinor& psi);

/// N x 2 isometry realizing a rank-1 POVM as a projective measurement on an
/// N-dimensional space: row i is sqrt(w_i) <u_i|, so V(dagger)V = sum(E_i) = I
/// and measuring the standard basis after V reproduces tr(E_i rho).
struct Isometry {
    std::vector<std::array<std::complex<double>, 2>> rows;

    double vtv_residual() const;  // max-entry |V(dagger)V - I|
};

// Throws std::invalid_argument if the POVM fails check_completeness.
Isometry neumark_isometry(const Povm& p, double tolerance = 1e-12);

// Outcome probabilities in POVM order. The spinor overload goes through the
// isometry rows; the Bloch overload evaluates tr(E_i rho) directly.
std::vector<double> outcome_distribution(const Povm& p, const Spinor& psi, double tolerance = 1e-12);
std::vector<double> outcome_distribution(const Povm& p, const std::array<double, 3>& state_bloch,
                                         double tolerance = 1e-12);

struct OutcomeHistogram {
    std::vector<std::string> labels;   // POVM outcome order
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;
    std::uint64_t seed = 0;
};

// `count` independent draws by inverse CDF over the outcome order, driven by
// std::mt19937_64(seed) with uniforms u = (x >> 11) * 2^-53. The generator
// sequence is fixed by the standard, so identical inputs and seed reproduce
// the histogram bit for bit on every platform.
OutcomeHistogram sample_distribution(const std::vector<std::string>& labels,
                                     const std::vector<double>& probabilities, std::uint64_t count,
                                     std::uint64_t seed);
OutcomeHistogram sample(const Povm& p, const Spinor& psi, std::uint64_t count, std::uint64_t seed);
OutcomeHistogram sample(const Povm& p, const std::array<double, 3>& state_bloch, std::uint64_t count,
                        std::uint64_t seed);

struct GoodnessOfFit {
    double statistic = 0.0;
    unsigned dof = 0;
    double p_value = 1.0;
};

// Pearson chi-square of a histogram against exact probabilities. Bins with
// probability zero must be empty; otherwise the fit fails outright.
GoodnessOfFit chi_square_gof(const OutcomeHistogram& histogram, const std::vector<double>& probabilities);

}  // namespace ksq
