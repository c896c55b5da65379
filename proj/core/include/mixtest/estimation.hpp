#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mixtest/distributions.hpp"
#include "mixtest/empirical.hpp"
#include "mixtest/weights.hpp"

namespace mixtest {

// Thrown when parameter estimation cannot produce a finite maximizer
// (log-likelihood -infinity or NaN everywhere probed, or diverging along an
// unbounded parameter direction).
class EstimationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// The estimation problem for one dataset: a weighted log-likelihood
// theta -> sum_i alpha_i log h(x_i, theta), an optional analytic gradient
// (empty function = central finite differences), and a starting point.
struct FitObjective {
    std::function<double(std::span<const double>)> loglik;
    std::function<std::vector<double>(std::span<const double>)> score;
    std::vector<double> init;
};

// A parametric null family. `mixture` builds the null distribution at a given
// parameter; `bind` attaches the family to a dataset, producing the weighted
// log-likelihood to maximize. Binding is repeated per bootstrap replicate, so
// any per-dataset precomputation lives inside the returned closures.
struct ParametricFamily {
    int dim = 1;
    int param_dim = 1;
    std::vector<double> lower;  // open box constraints; +-infinity allowed
    std::vector<double> upper;
    std::function<MixtureSpec(std::span<const double>)> mixture;
    std::function<FitObjective(const Dataset&)> bind;
};

struct FitResult {
    std::vector<double> theta;
    double loglik = 0.0;
    bool boundary = false;  // maximizer pinned against a finite box edge
    int iterations = 0;     // objective evaluations spent
};

using ComponentFn =
    std::function<DistributionSpec(std::span<const double> theta, std::size_t k)>;
using GuessFn = std::function<std::vector<double>(const Dataset&)>;

// Generic family from a per-component builder: component k of the null at
// theta, mixed with the given weights. Log-likelihood evaluations cost
// O(n^2); prefer a specialized maker when one exists.
ParametricFamily make_family(int dim, std::vector<double> lower, std::vector<double> upper,
                             ComponentFn component, WeightScheme alpha, GuessFn guess);

// Exponential family with per-observation rate shifts: component k at theta
// is Exponential(theta + mu[k]), theta > 0, mu[k] >= 0. Binding precomputes
// the per-point mixture sums so each log-likelihood evaluation is O(n), and
// supplies the analytic score.
ParametricFamily make_shifted_exponential_family(std::vector<double> mu, WeightScheme alpha);

// Maximizes the bound weighted log-likelihood. One-parameter problems use
// bracketed golden-section/parabolic search refined by a safeguarded root
// polish of the score; multi-parameter problems cycle that machinery over
// coordinates. The polished score satisfies |score| <= 1e-8 componentwise
// unless the maximizer sits on the boundary of the box.
FitResult weighted_mle(const ParametricFamily& family, const Dataset& data);

}  // namespace mixtest
