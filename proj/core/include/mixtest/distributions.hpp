#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "mixtest/rng.hpp"
#include "mixtest/weights.hpp"

namespace mixtest {

// Parameter conventions (fixed; the CLI exposes switches that translate into
// these before construction):
//   Normal          (mean, variance)         -- variance, not standard deviation
//   Exponential     (rate)
//   Weibull         (shape, scale)
//   Gamma           (shape, rate)
//   InverseGaussian (mean, shape)
//   BivariateT      (dof, location, scale matrix); dof = 1 gives the heavy-tailed
//                   case used in the simulation tables
//   BivariateLogistic = Gumbel's bivariate logistic,
//                   F(x,y) = 1 / (1 + exp(-(x-m1)/s1) + exp(-(y-m2)/s2))

struct Logistic {
    double location, scale;
};
struct Laplace {
    double location, scale;
};
struct Cauchy {
    double location, scale;
};
struct Normal {
    double mean, variance;
};
struct Exponential {
    double rate;
};
struct Weibull {
    double shape, scale;
};
struct Gamma {
    double shape, rate;
};
struct InverseGaussian {
    double mean, shape;
};
struct BivariateNormal {
    std::array<double, 2> mean;
    std::array<double, 4> cov;  // row-major {s11, s12, s21, s22}, symmetric SPD
};
struct BivariateT {
    double dof;
    std::array<double, 2> location;
    std::array<double, 4> scale;  // row-major, symmetric SPD
};
struct BivariateLogistic {
    double location1, scale1, location2, scale2;
};

class DistributionSpec;

struct ProductOfMarginals {
    std::vector<DistributionSpec> marginals;  // all univariate; dim = count
};

class DistributionSpec {
public:
    using Family = std::variant<Logistic, Laplace, Cauchy, Normal, Exponential, Weibull, Gamma,
                                InverseGaussian, BivariateNormal, BivariateT, BivariateLogistic,
                                ProductOfMarginals>;

    // Validates parameters (scales/rates/shapes positive, covariance SPD, ...).
    DistributionSpec(Family family);  // NOLINT(google-explicit-constructor)

    int dim() const { return dim_; }
    const Family& family() const { return family_; }

private:
    Family family_;
    int dim_;
};

// CDF at x (|x| = dim). Coordinates may be +-infinity with limit semantics:
// any -inf coordinate gives 0, a +inf coordinate marginalizes it away.
double cdf(const DistributionSpec& d, std::span<const double> x);
double cdf1(const DistributionSpec& d, double x);  // dim() == 1 shorthand

// Log density at a finite point; +-inf coordinates are a domain_error.
double log_density(const DistributionSpec& d, std::span<const double> x);

// Quantile, univariate families only. Closed-form inversion where it exists
// (logistic, Laplace, Cauchy, exponential, Weibull); normal, gamma and inverse
// Gaussian delegate to Boost.Math.
double quantile(const DistributionSpec& d, double p);

// k i.i.d. draws written row-major into out (k * dim doubles).
//
// Draw order per point is fixed and documented here so streams are reproducible:
// quantile-inversion families consume one uniform; normal uses Marsaglia polar
// (pairs of uniforms until acceptance, second variate discarded); gamma uses
// Marsaglia-Tsang (normal + uniform per iteration; shape < 1 boosts shape+1 and
// consumes one extra uniform); inverse Gaussian consumes one normal then one
// uniform; bivariate normal/t draw z1, z2 (then the t draws its chi-square);
// bivariate logistic draws u1 (X marginal) then u2 (conditional inversion);
// products draw coordinate 1, ..., m.
void sample(const DistributionSpec& d, RngStream& rng, std::size_t k, std::span<double> out);
std::vector<double> sample(const DistributionSpec& d, RngStream& rng, std::size_t k);

// Finite mixture sum_i w_i * component_i over a weight scheme; this is the
// n-dependent null object every test simulates from. Component count must match
// the weight count and all components must share one dimension.
class MixtureSpec {
public:
    MixtureSpec(std::vector<DistributionSpec> components, WeightScheme weights);

    int dim() const { return dim_; }
    std::size_t size() const { return components_.size(); }
    const std::vector<DistributionSpec>& components() const { return components_; }
    const WeightScheme& weights() const { return weights_; }

private:
    std::vector<DistributionSpec> components_;
    WeightScheme weights_;
    int dim_;
};

double cdf(const MixtureSpec& m, std::span<const double> x);
double cdf1(const MixtureSpec& m, double x);
// log(sum_i w_i h_i(x)) via log-sum-exp over the component log densities.
double log_density(const MixtureSpec& m, std::span<const double> x);
// Per point: draw the component index by weight inversion, then one draw from it.
void sample(const MixtureSpec& m, RngStream& rng, std::size_t k, std::span<double> out);
std::vector<double> sample(const MixtureSpec& m, RngStream& rng, std::size_t k);

// Standard normal helpers shared across the library.
double std_normal_cdf(double z);
double std_normal_quantile(double p);
// One standard normal variate by the Marsaglia polar method.
double draw_std_normal(RngStream& rng);

}  // namespace mixtest
