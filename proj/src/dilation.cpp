#include "ksq/dilation.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <limits>
#include <random>

namespace ksq {

Spinor spinor_from_unit(const std::array<double, 3>& n_hat) {
    const double z = n_hat[2];
    const double c0 = std::sqrt(std::max(0.0, (1.0 + z) / 2.0));
    const double s = std::sqrt(std::max(0.0, (1.0 - z) / 2.0));
    const double rho = std::hypot(n_hat[0], n_hat[1]);
    std::complex<double> phase(1.0, 0.0);
    if (rho > 0.0) phase = std::complex<double>(n_hat[0] / rho, n_hat[1] / rho);
    return {std::complex<double>(c0, 0.0), phase * s};
}

Spinor spinor_from_direction(const Vec3Q& direction) { return spinor_from_unit(unit_double(direction)); }

std::array<double, 3> bloch_of(const Spinor& psi) {
    const auto a = psi.up, b = psi.down;
    const std::complex<double> cross = std::conj(a) * b;
    return {2.0 * cross.real(), 2.0 * cross.imag(), std::norm(a) - std::norm(b)};
}

double Isometry::vtv_residual() const {
    std::array<std::array<std::complex<double>, 2>, 2> vtv{};
    for (const auto& row : rows) {
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) vtv[i][j] += std::conj(row[i]) * row[j];
        }
    }
    double r = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const std::complex<double> target = (i == j) ? 1.0 : 0.0;
            r = std::max(r, std::abs(vtv[i][j] - target));
        }
    }
    return r;
}

Isometry neumark_isometry(const Povm& p, double tolerance) {
    const CompletenessReport report = check_completeness(p.effects, tolerance);
    if (report.status == CompletenessStatus::failed) {
        throw std::invalid_argument("incomplete POVM: trace residual " + report.trace_residual.str());
    }
    Isometry v;
    for (const auto& e : p.effects) {
        const Spinor u = spinor_from_direction(e.direction);
        const double root_w = std::sqrt(to_double(e.weight));
        v.rows.push_back({root_w * std::conj(u.up), root_w * std::conj(u.down)});
    }
    return v;
}

namespace {

void require_normalized(const Spinor& psi) {
    const double n = std::norm(psi.up) + std::norm(psi.down);
    if (std::abs(n - 1.0) > 1e-12) throw std::invalid_argument("spinor is not normalized");
}

std::vector<std::string> povm_labels(const Povm& p) {
    std::vector<std::string> labels;
    for (const auto& e : p.effects) labels.push_back(e.label.str());
    return labels;
}

}  // namespace

std::vector<double> outcome_distribution(const Povm& p, const Spinor& psi, double tolerance) {
    require_normalized(psi);
    const Isometry v = neumark_isometry(p, tolerance);
    std::vector<double> probs;
    probs.reserve(v.rows.size());
    for (const auto& row : v.rows) {
        probs.push_back(std::norm(row[0] * psi.up + row[1] * psi.down));
    }
    return probs;
}

std::vector<double> outcome_distribution(const Povm& p, const std::array<double, 3>& state_bloch,
                                         double tolerance) {
    const CompletenessReport report = check_completeness(p.effects, tolerance);
    if (report.status == CompletenessStatus::failed) {
        throw std::invalid_argument("incomplete POVM: trace residual " + report.trace_residual.str());
    }
    std::vector<double> probs;
    probs.reserve(p.effects.size());
    for (const auto& e : p.effects) probs.push_back(born_probability(state_bloch, e));
    return probs;
}

OutcomeHistogram sample_distribution(const std::vector<std::string>& labels,
                                     const std::vector<double>& probabilities, std::uint64_t count,
                                     std::uint64_t seed) {
    if (labels.size() != probabilities.size()) {
        throw std::invalid_argument("label/probability size mismatch");
    }
    OutcomeHistogram h;
    h.labels = labels;
    h.counts.assign(labels.size(), 0);
    h.total = count;
    h.seed = seed;

    std::vector<double> cumulative(probabilities.size(), 0.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        acc += probabilities[i];
        cumulative[i] = acc;
    }

    std::mt19937_64 rng(seed);
    for (std::uint64_t draw = 0; draw < count; ++draw) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        std::size_t pick = cumulative.size() - 1;
        for (std::size_t i = 0; i < cumulative.size(); ++i) {
            if (u < cumulative[i]) {
                pick = i;
                break;
            }
        }
        ++h.counts[pick];
    }
    return h;
}

OutcomeHistogram sample(const Povm& p, const Spinor& psi, std::uint64_t count, std::uint64_t seed) {
    return sample_distribution(povm_labels(p), outcome_distribution(p, psi), count, seed);
}

OutcomeHistogram sample(const Povm& p, const std::array<double, 3>& state_bloch, std::uint64_t count,
                        std::uint64_t seed) {
    return sample_distribution(povm_labels(p), outcome_distribution(p, state_bloch), count, seed);
}

GoodnessOfFit chi_square_gof(const OutcomeHistogram& histogram, const std::vector<double>& probabilities) {
    if (histogram.counts.size() != probabilities.size()) {
        throw std::invalid_argument("histogram/probability size mismatch");
    }
    GoodnessOfFit fit;
    const double total = static_cast<double>(histogram.total);
    unsigned positive_bins = 0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (probabilities[i] <= 0.0) {
            if (histogram.counts[i] > 0) {
                fit.statistic = std::numeric_limits<double>::infinity();
                fit.p_value = 0.0;
            }
            continue;
        }
        ++positive_bins;
        const double expected = total * probabilities[i];
        const double diff = static_cast<double>(histogram.counts[i]) - expected;
        fit.statistic += diff * diff / expected;
    }
    if (positive_bins <= 1) {
        fit.dof = 0;
        if (!std::isinf(fit.statistic)) fit.p_value = 1.0;
        return fit;
    }
    fit.dof = positive_bins - 1;
    if (!std::isinf(fit.statistic)) {
        const boost::math::chi_squared dist(fit.dof);
        fit.p_value = boost::math::cdf(boost::math::complement(dist, fit.statistic));
    }
    return fit;
}

}  // namespace ksq
