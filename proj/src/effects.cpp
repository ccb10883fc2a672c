#include "ksq/effects.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace ksq {

Effect effect_from_direction(SignedLabel label, const Vec3Q& direction, const Rational& weight) {
    if (is_zero(direction)) {
        throw std::invalid_argument("effect " + label.str() + ": zero direction");
    }
    if (sign_of(weight) <= 0 || weight > 1) {
        throw std::invalid_argument("effect " + label.str() + ": weight " + to_string(weight) +
                                    " outside (0, 1]");
    }
    return {std::move(label), weight, direction, dot(direction, direction)};
}

Povm povm_from_vertices(const VertexSet& vs, std::span<const SignedLabel> members, const Rational& weight) {
    Povm povm;
    for (const auto& label : members) {
        const DirectedVertex* v = vs.find(label);
        if (v == nullptr) throw std::invalid_argument("vertex " + label.str() + " not in the vertex set");
        povm.effects.push_back(effect_from_direction(label, v->coords, weight));
    }
    for (std::size_t i = 0; i < povm.effects.size(); ++i) {
        for (std::size_t j = i + 1; j < povm.effects.size(); ++j) {
            if (povm.effects[i].label == povm.effects[j].label) {
                throw std::invalid_argument("duplicate effect label " + povm.effects[i].label.str());
            }
        }
    }
    return povm;
}

Povm cube_povm(const CubeSubset& cube, const VertexSet& vs) {
    if (cube.member_labels.size() != 8) throw std::invalid_argument("cube subset must have 8 members");
    const auto found = find_inscribed_cubes(vs);
    CubeSubset sorted = cube;
    std::sort(sorted.member_labels.begin(), sorted.member_labels.end());
    if (std::find(found.begin(), found.end(), sorted) == found.end()) {
        throw std::invalid_argument("labels do not form an inscribed cube of the vertex set");
    }
    return povm_from_vertices(vs, cube.member_labels, Rational(1, 4));
}

namespace {

using Complex = std::complex<double>;
using Matrix2 = std::array<std::array<Complex, 2>, 2>;

Matrix2 bloch_matrix(double alpha, const std::array<double, 3>& v) {
    // alpha * I + v . sigma
    return {{{Complex(alpha + v[2], 0.0), Complex(v[0], -v[1])},
             {Complex(v[0], v[1]), Complex(alpha - v[2], 0.0)}}};
}

double max_abs_deviation_from_identity(const Matrix2& m) {
    double r = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const Complex target = (i == j) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
            r = std::max(r, std::abs(m[i][j] - target));
        }
    }
    return r;
}

}  // namespace

CompletenessReport check_completeness(std::span<const Effect> effects, double tolerance) {
    CompletenessReport report;

    Rational weight_sum = 0;
    for (const auto& e : effects) weight_sum += e.weight;
    report.trace_residual = QuadNum(weight_sum - 2);

    for (const auto& e : effects) {
        auto it = std::find_if(report.bloch_residuals.begin(), report.bloch_residuals.end(),
                               [&](const NormClassResidual& c) { return c.norm_sq == e.norm_sq; });
        const Vec3Q contribution = scale(e.weight, e.direction);
        if (it == report.bloch_residuals.end()) {
            report.bloch_residuals.push_back({e.norm_sq, contribution});
        } else {
            it->weighted_direction_sum = it->weighted_direction_sum + contribution;
        }
    }

    Matrix2 sum{{{Complex(0), Complex(0)}, {Complex(0), Complex(0)}}};
    for (const auto& e : effects) {
        const double alpha = to_double(e.weight) / 2.0;
        const auto n = unit_double(e.direction);
        const Matrix2 m = bloch_matrix(alpha, {alpha * n[0], alpha * n[1], alpha * n[2]});
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) sum[i][j] += m[i][j];
        }
    }
    report.float_residual = max_abs_deviation_from_identity(sum);

    const bool classes_zero =
        std::all_of(report.bloch_residuals.begin(), report.bloch_residuals.end(),
                    [](const NormClassResidual& c) { return is_zero(c.weighted_direction_sum); });

    if (report.trace_residual.is_zero() && classes_zero) {
        report.status = CompletenessStatus::exact;
    } else if (report.trace_residual.is_zero() && report.bloch_residuals.size() >= 2 &&
               report.float_residual < tolerance) {
        // Cross-class cancellation is invisible to the per-class exact test.
        report.status = CompletenessStatus::numeric_only;
    } else {
        report.status = CompletenessStatus::failed;
    }
    return report;
}

bool check_psd(const Effect& e) {
    const Rational alpha = e.weight / 2;
    if (sign_of(alpha) < 0) return false;
    // alpha^2 - |v|^2 >= 0, scaled by norm_sq > 0 to stay in the field:
    // v = alpha * direction / sqrt(norm_sq), so |v|^2 * norm_sq = |alpha * direction|^2.
    const Vec3Q scaled = scale(alpha, e.direction);
    const QuadNum lhs = QuadNum(alpha * alpha) * e.norm_sq;
    return (lhs - dot(scaled, scaled)).sign() >= 0;
}

double born_probability(const std::array<double, 3>& state_bloch, const Effect& e) {
    const double r2 = state_bloch[0] * state_bloch[0] + state_bloch[1] * state_bloch[1] +
                      state_bloch[2] * state_bloch[2];
    if (r2 > 1.0 + 1e-12) throw std::domain_error("state lies outside the Bloch ball");
    const auto n = unit_double(e.direction);
    const double cosine = n[0] * state_bloch[0] + n[1] * state_bloch[1] + n[2] * state_bloch[2];
    const double p = to_double(e.weight) / 2.0 * (1.0 + cosine);
    return std::max(p, 0.0);
}

}  // namespace ksq
