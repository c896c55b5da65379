#include "mixtest/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mixtest/rng.hpp"

namespace mixtest {

WeightScheme::WeightScheme(WeightKind kind, std::vector<double> values)
    : kind_(kind), values_(std::move(values)) {
    if (values_.empty()) {
        throw std::invalid_argument("WeightScheme: need at least one weight");
    }
    double sum = 0.0;
    for (double w : values_) {
        if (!std::isfinite(w) || w < 0.0) {
            throw std::invalid_argument("WeightScheme: weights must be finite and nonnegative");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("WeightScheme: weights must sum to one (within 1e-12)");
    }
}

WeightScheme WeightScheme::uniform(std::size_t n) {
    if (n == 0) throw std::invalid_argument("WeightScheme::uniform: n must be positive");
    return WeightScheme(WeightKind::uniform, std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

WeightScheme WeightScheme::linear(std::size_t n) {
    if (n == 0) throw std::invalid_argument("WeightScheme::linear: n must be positive");
    std::vector<double> w(n);
    const double denom = static_cast<double>(n) * static_cast<double>(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = 2.0 * static_cast<double>(i + 1) / denom;
    }
    return WeightScheme(WeightKind::linear, std::move(w));
}

WeightScheme WeightScheme::from_values(std::vector<double> values) {
    return WeightScheme(WeightKind::explicit_values, std::move(values));
}

const std::vector<double>& WeightScheme::cumulative() const {
    if (cumulative_.empty()) {
        cumulative_.resize(values_.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < values_.size(); ++i) {
            acc += values_[i];
            cumulative_[i] = acc;
        }
        cumulative_.back() = std::max(cumulative_.back(), 1.0);
    }
    return cumulative_;
}

WeightDiagnostics weight_diagnostics(const WeightScheme& scheme, double threshold) {
    const auto& w = scheme.values();
    const double n = static_cast<double>(w.size());
    WeightDiagnostics d;
    d.threshold = threshold;
    d.root_n_max = std::sqrt(n) * *std::max_element(w.begin(), w.end());
    if (scheme.kind() == WeightKind::uniform) {
        // n * n * (1/n)^2 = 1 exactly; the floating-point sum would round.
        d.kappa_hat = 1.0;
    } else {
        double ss = 0.0;
        for (double wi : w) ss += wi * wi;
        // Cauchy-Schwarz gives n * sum w^2 >= (sum w)^2 = 1; clamp rounding dips.
        d.kappa_hat = std::max(1.0, n * ss);
    }
    d.exceeds_threshold = d.kappa_hat > threshold;
    return d;
}

std::size_t draw_index(const WeightScheme& scheme, RngStream& rng) {
    const auto& cum = scheme.cumulative();
    const double u = rng.uniform01();
    auto it = std::lower_bound(cum.begin(), cum.end(), u);
    if (it == cum.end()) --it;
    return static_cast<std::size_t>(it - cum.begin());
}

}  // namespace mixtest
