#pragma once

#include <cstddef>
#include <vector>

namespace mixtest {

enum class WeightKind { uniform, linear, explicit_values };

// Nonnegative weights alpha_1..alpha_n summing to one. They weight both the
// empirical distribution function and the mixture null; validity (sum within
// 1e-12 of 1, no negative entry, n >= 1) is enforced at construction.
class WeightScheme {
public:
    // alpha_i = 1/n.
    static WeightScheme uniform(std::size_t n);
    // alpha_i = 2i / (n(n+1)), increasing in i.
    static WeightScheme linear(std::size_t n);
    // Arbitrary validated weight vector.
    static WeightScheme from_values(std::vector<double> values);

    std::size_t size() const { return values_.size(); }
    WeightKind kind() const { return kind_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    // Cumulative sums, cached; used for index draws by inversion.
    const std::vector<double>& cumulative() const;

private:
    WeightScheme(WeightKind kind, std::vector<double> values);

    WeightKind kind_;
    std::vector<double> values_;
    mutable std::vector<double> cumulative_;
};

// Finite-sample diagnostics for the asymptotic weight conditions:
//   root_n_max = sqrt(n) * max_i alpha_i   (0 in the limit for admissible schemes)
//   kappa_hat  = n * sum_i alpha_i^2       (>= 1 by Cauchy-Schwarz; 1 iff uniform)
// kappa_hat far above 1 signals a weight scheme outside the regime where the
// Monte-Carlo calibration is trustworthy; exceeds_threshold flags
// kappa_hat > threshold (default 10) as a warning condition, never an error.
struct WeightDiagnostics {
    double root_n_max = 0.0;
    double kappa_hat = 0.0;
    double threshold = 10.0;
    bool exceeds_threshold = false;
};

WeightDiagnostics weight_diagnostics(const WeightScheme& scheme, double threshold = 10.0);

// Index in [0, n) drawn by inversion of the cumulative weights.
class RngStream;
std::size_t draw_index(const WeightScheme& scheme, RngStream& rng);

}  // namespace mixtest
