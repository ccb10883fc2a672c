#pragma once

#include "ksq/geometry.hpp"

#include <span>
#include <vector>

namespace ksq {

/// Rank-1 qubit POVM element in Bloch form,
///
///     E = weight * |n=+1><n=+1| = (weight/2) * (I + (direction/|direction|) . sigma),
///
/// kept unnormalized: the exact pair (direction, norm_sq) stands in for the
/// unit axis so that every verification stays inside Q(sqrt(D)).
struct Effect {
    SignedLabel label;
    Rational weight;  // w, 0 < w <= 1 for effects built via the factory
    Vec3Q direction;  // unnormalized Bloch axis
    QuadNum norm_sq;  // dot(direction, direction)

    friend bool operator==(const Effect&, const Effect&) = default;
};

// Validates the direction and weight range; throws std::invalid_argument.
Effect effect_from_direction(SignedLabel label, const Vec3Q& direction, const Rational& weight);

struct Povm {
    std::vector<Effect> effects;
};

// One weight-w effect per listed vertex. Throws if a label is missing from vs.
Povm povm_from_vertices(const VertexSet& vs, std::span<const SignedLabel> members, const Rational& weight);

// Eight effects of weight 1/4, one per cube vertex. Rechecks that the subset
// really is an inscribed cube of vs.
Povm cube_povm(const CubeSubset& cube, const VertexSet& vs);

enum class CompletenessStatus { exact, numeric_only, failed };

struct NormClassResidual {
    QuadNum norm_sq;                 // the class key
    Vec3Q weighted_direction_sum;    // sum of w_i * direction_i over the class
};

struct CompletenessReport {
    CompletenessStatus status = CompletenessStatus::failed;
    QuadNum trace_residual;                        // sum of weights minus 2, exact
    std::vector<NormClassResidual> bloch_residuals;  // one entry per norm class
    double float_residual = 0.0;                   // max |entry| of sum(E_i) - I in doubles

    bool exact() const { return status == CompletenessStatus::exact; }
};

/// Exact test that sum(E_i) = I, split into the trace condition
/// sum(w_i) = 2 and, per norm class, sum(w_i * direction_i) = 0. Directions
/// of equal norm from different quadratic fields throw FieldMismatchError.
/// When every per-class sum vanishing is not necessary (two or more classes
/// present), a failed exact test falls back to floating-point matrix
/// summation at `tolerance` and reports numeric_only on success.
CompletenessReport check_completeness(std::span<const Effect> effects, double tolerance = 1e-12);

// Positive semidefiniteness via exact signs on the Bloch form: with
// alpha = w/2 and v = alpha * n_hat, requires alpha >= 0 and
// alpha^2 * norm_sq - |alpha * direction|^2 >= 0.
bool check_psd(const Effect& e);

// Born rule p = tr(E rho) = (w/2)(1 + n_hat . r) for a Bloch-ball state r.
// Throws std::domain_error if |r| > 1 + 1e-12.
double born_probability(const std::array<double, 3>& state_bloch, const Effect& e);

}  // namespace ksq
