#include "mixtest/distributions.hpp"

#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/distributions/inverse_gaussian.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace mixtest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

bool finite_pos(double v) { return std::isfinite(v) && v > 0.0; }

using detail::adaptive_simpson;

// ---------------------------------------------------------------------------
// Univariate building blocks.

double logistic_cdf(double x, double loc, double s) {
    if (x == kInf) return 1.0;
    if (x == kNegInf) return 0.0;
    return 1.0 / (1.0 + std::exp(-(x - loc) / s));
}

double laplace_cdf(double x, double loc, double b) {
    if (x == kInf) return 1.0;
    if (x == kNegInf) return 0.0;
    const double z = (x - loc) / b;
    return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
}

double cauchy_cdf(double x, double loc, double g) {
    if (x == kInf) return 1.0;
    if (x == kNegInf) return 0.0;
    return 0.5 + std::atan((x - loc) / g) / 3.14159265358979323846;
}

double exponential_cdf(double x, double rate) {
    if (x == kInf) return 1.0;
    if (x <= 0.0) return 0.0;
    return -std::expm1(-rate * x);
}

double weibull_cdf(double x, double shape, double scale) {
    if (x == kInf) return 1.0;
    if (x <= 0.0) return 0.0;
    return -std::expm1(-std::pow(x / scale, shape));
}

double normal_cdf_ms(double x, double mean, double sd) {
    if (x == kInf) return 1.0;
    if (x == kNegInf) return 0.0;
    return 0.5 * std::erfc(-(x - mean) / (sd * std::sqrt(2.0)));
}

double gamma_cdf_sr(double x, double shape, double rate) {
    if (x == kInf) return 1.0;
    if (x <= 0.0) return 0.0;
    return boost::math::gamma_p(shape, rate * x);
}

double invgauss_cdf_ms(double x, double mean, double shape) {
    if (x == kInf) return 1.0;
    if (x <= 0.0) return 0.0;
    boost::math::inverse_gaussian_distribution<double> d(mean, shape);
    return boost::math::cdf(d, x);
}

double student_t_cdf(double z, double dof) {
    if (z == kInf) return 1.0;
    if (z == kNegInf) return 0.0;
    boost::math::students_t_distribution<double> d(dof);
    return boost::math::cdf(d, z);
}

double student_t_quantile(double p, double dof) {
    boost::math::students_t_distribution<double> d(dof);
    return boost::math::quantile(d, p);
}

// ---------------------------------------------------------------------------
// Bivariate CDFs by conditional quadrature.
//
// With standardized margins (h, k) and correlation rho, both the normal and the
// t CDF integrate the conditional CDF of the second coordinate over the first:
//   P(Z1 <= h, Z2 <= k) = int_0^{F1(h)} F_{2|1}(k | Q1(u)) du.
// The integrand is bounded in [0,1] and smooth, so adaptive Simpson with a 1e-12
// tolerance delivers ~1e-11 absolute accuracy without family-specific constants.

double bvn_std_cdf(double h, double k, double rho) {
    if (h == kNegInf || k == kNegInf) return 0.0;
    if (h == kInf) return normal_cdf_ms(k, 0.0, 1.0);
    if (k == kInf) return normal_cdf_ms(h, 0.0, 1.0);
    if (rho >= 1.0 - 1e-12) return normal_cdf_ms(std::min(h, k), 0.0, 1.0);
    if (rho <= -1.0 + 1e-12) {
        return std::max(0.0, normal_cdf_ms(h, 0.0, 1.0) + normal_cdf_ms(k, 0.0, 1.0) - 1.0);
    }
    if (rho == 0.0) return normal_cdf_ms(h, 0.0, 1.0) * normal_cdf_ms(k, 0.0, 1.0);
    const double ua = normal_cdf_ms(h, 0.0, 1.0);
    if (ua <= 0.0) return 0.0;
    const double denom = std::sqrt(1.0 - rho * rho);
    boost::math::normal_distribution<double> std_normal(0.0, 1.0);
    auto integrand = [&](double u) {
        if (u <= 0.0) return rho > 0.0 ? 0.0 : 1.0;
        if (u >= 1.0) return rho > 0.0 ? 1.0 : 0.0;
        const double z = boost::math::quantile(std_normal, u);
        return normal_cdf_ms((k - rho * z) / denom, 0.0, 1.0);
    };
    return adaptive_simpson(integrand, 0.0, ua, 1e-12);
}

double bvt_std_cdf(double h, double k, double rho, double dof) {
    if (h == kNegInf || k == kNegInf) return 0.0;
    if (h == kInf) return student_t_cdf(k, dof);
    if (k == kInf) return student_t_cdf(h, dof);
    if (rho >= 1.0 - 1e-12) return student_t_cdf(std::min(h, k), dof);
    if (rho <= -1.0 + 1e-12) {
        return std::max(0.0, student_t_cdf(h, dof) + student_t_cdf(k, dof) - 1.0);
    }
    const double ua = student_t_cdf(h, dof);
    if (ua <= 0.0) return 0.0;
    // Conditional of Z2 given Z1 = z is t with dof+1 degrees of freedom,
    // location rho*z and squared scale (1-rho^2)(dof+z^2)/(dof+1).
    auto integrand = [&](double u) {
        if (u <= 0.0) return rho > 0.0 ? 0.0 : 1.0;
        if (u >= 1.0) return rho > 0.0 ? 1.0 : 0.0;
        const double z = student_t_quantile(u, dof);
        const double s = std::sqrt((1.0 - rho * rho) * (dof + z * z) / (dof + 1.0));
        return student_t_cdf((k - rho * z) / s, dof + 1.0);
    };
    return adaptive_simpson(integrand, 0.0, ua, 1e-12);
}

struct Standardized {
    double h, k, rho;
};

Standardized standardize2(std::span<const double> x, const std::array<double, 2>& center,
                          const std::array<double, 4>& m) {
    const double s1 = std::sqrt(m[0]), s2 = std::sqrt(m[3]);
    return {(x[0] - center[0]) / s1, (x[1] - center[1]) / s2, m[1] / (s1 * s2)};
}

// ---------------------------------------------------------------------------
// Log densities.

double logistic_logpdf(double x, double loc, double s) {
    const double z = std::abs((x - loc) / s);
    return -z - std::log(s) - 2.0 * std::log1p(std::exp(-z));
}

double laplace_logpdf(double x, double loc, double b) {
    return -std::abs(x - loc) / b - std::log(2.0 * b);
}

double cauchy_logpdf(double x, double loc, double g) {
    const double z = (x - loc) / g;
    return -std::log(3.14159265358979323846 * g * (1.0 + z * z));
}

double normal_logpdf(double x, double mean, double var) {
    const double d = x - mean;
    return -0.5 * d * d / var - 0.5 * std::log(2.0 * 3.14159265358979323846 * var);
}

double exponential_logpdf(double x, double rate) {
    if (x < 0.0) return kNegInf;
    return std::log(rate) - rate * x;
}

double weibull_logpdf(double x, double shape, double scale) {
    if (x <= 0.0) return kNegInf;
    const double z = x / scale;
    return std::log(shape / scale) + (shape - 1.0) * std::log(z) - std::pow(z, shape);
}

double gamma_logpdf(double x, double shape, double rate) {
    if (x <= 0.0) return kNegInf;
    return shape * std::log(rate) - std::lgamma(shape) + (shape - 1.0) * std::log(x) - rate * x;
}

double invgauss_logpdf(double x, double mean, double shape) {
    if (x <= 0.0) return kNegInf;
    const double d = x - mean;
    return 0.5 * std::log(shape / (2.0 * 3.14159265358979323846 * x * x * x)) -
           shape * d * d / (2.0 * mean * mean * x);
}

double bvn_logpdf(std::span<const double> x, const BivariateNormal& d) {
    const double det = d.cov[0] * d.cov[3] - d.cov[1] * d.cov[1];
    const double dx = x[0] - d.mean[0], dy = x[1] - d.mean[1];
    const double q = (d.cov[3] * dx * dx - 2.0 * d.cov[1] * dx * dy + d.cov[0] * dy * dy) / det;
    return -std::log(2.0 * 3.14159265358979323846) - 0.5 * std::log(det) - 0.5 * q;
}

double bvt_logpdf(std::span<const double> x, const BivariateT& d) {
    const double det = d.scale[0] * d.scale[3] - d.scale[1] * d.scale[1];
    const double dx = x[0] - d.location[0], dy = x[1] - d.location[1];
    const double q =
        (d.scale[3] * dx * dx - 2.0 * d.scale[1] * dx * dy + d.scale[0] * dy * dy) / det;
    const double nu = d.dof;
    return std::lgamma(0.5 * nu + 1.0) - std::lgamma(0.5 * nu) - std::log(nu) -
           std::log(3.14159265358979323846) - 0.5 * std::log(det) -
           (0.5 * nu + 1.0) * std::log1p(q / nu);
}

double bvlogistic_logpdf(std::span<const double> x, const BivariateLogistic& d) {
    // f(x,y) = 2 a b / (s1 s2 (1 + a + b)^3), a = exp(-(x-m1)/s1), b = exp(-(y-m2)/s2).
    const double la = -(x[0] - d.location1) / d.scale1;
    const double lb = -(x[1] - d.location2) / d.scale2;
    const double m = std::max({0.0, la, lb});
    const double lse = m + std::log(std::exp(-m) + std::exp(la - m) + std::exp(lb - m));
    return std::log(2.0) + la + lb - std::log(d.scale1 * d.scale2) - 3.0 * lse;
}

// ---------------------------------------------------------------------------
// Samplers beyond plain quantile inversion.

double draw_gamma_rate1(double shape, RngStream& rng) {
    if (shape < 1.0) {
        const double g = draw_gamma_rate1(shape + 1.0, rng);
        const double u = rng.uniform01();
        return g * std::pow(u, 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze.
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = draw_std_normal(rng);
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        const double u = rng.uniform01();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double draw_inverse_gaussian(double mean, double shape, RngStream& rng) {
    // Michael-Schucany-Haas transform with one normal and one uniform.
    const double z = draw_std_normal(rng);
    const double y = z * z;
    const double x = mean + mean * mean * y / (2.0 * shape) -
                     mean / (2.0 * shape) * std::sqrt(4.0 * mean * shape * y + mean * mean * y * y);
    const double u = rng.uniform01();
    return u <= mean / (mean + x) ? x : mean * mean / x;
}

struct Cholesky2 {
    double l11, l21, l22;
};

Cholesky2 cholesky2(const std::array<double, 4>& m) {
    Cholesky2 c;
    c.l11 = std::sqrt(m[0]);
    c.l21 = m[1] / c.l11;
    c.l22 = std::sqrt(m[3] - c.l21 * c.l21);
    return c;
}

void validate_spd2(const std::array<double, 4>& m, const char* what) {
    require(std::isfinite(m[0]) && std::isfinite(m[1]) && std::isfinite(m[2]) &&
                std::isfinite(m[3]),
            "matrix entries must be finite");
    const double scale = std::max({std::abs(m[0]), std::abs(m[1]), std::abs(m[3]), 1.0});
    if (std::abs(m[1] - m[2]) > 1e-12 * scale) {
        throw std::invalid_argument(std::string(what) + ": matrix must be symmetric");
    }
    if (!(m[0] > 0.0) || !(m[3] > 0.0) || !(m[0] * m[3] - m[1] * m[1] > 0.0)) {
        throw std::invalid_argument(std::string(what) + ": matrix must be positive definite");
    }
}

}  // namespace

double std_normal_cdf(double z) { return normal_cdf_ms(z, 0.0, 1.0); }

double std_normal_quantile(double p) {
    boost::math::normal_distribution<double> d(0.0, 1.0);
    return boost::math::quantile(d, p);
}

double draw_std_normal(RngStream& rng) {
    // Marsaglia polar; the second variate of each accepted pair is discarded so
    // one call always consumes a whole number of acceptance rounds.
    for (;;) {
        const double u = 2.0 * rng.uniform01() - 1.0;
        const double v = 2.0 * rng.uniform01() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }
}

// ---------------------------------------------------------------------------
// DistributionSpec

DistributionSpec::DistributionSpec(Family family) : family_(std::move(family)), dim_(1) {
    std::visit(
        Overloaded{
            [&](const Logistic& d) {
                require(std::isfinite(d.location) && finite_pos(d.scale),
                        "Logistic: scale must be positive");
            },
            [&](const Laplace& d) {
                require(std::isfinite(d.location) && finite_pos(d.scale),
                        "Laplace: scale must be positive");
            },
            [&](const Cauchy& d) {
                require(std::isfinite(d.location) && finite_pos(d.scale),
                        "Cauchy: scale must be positive");
            },
            [&](const Normal& d) {
                require(std::isfinite(d.mean) && finite_pos(d.variance),
                        "Normal: variance must be positive");
            },
            [&](const Exponential& d) {
                require(finite_pos(d.rate), "Exponential: rate must be positive");
            },
            [&](const Weibull& d) {
                require(finite_pos(d.shape) && finite_pos(d.scale),
                        "Weibull: shape and scale must be positive");
            },
            [&](const Gamma& d) {
                require(finite_pos(d.shape) && finite_pos(d.rate),
                        "Gamma: shape and rate must be positive");
            },
            [&](const InverseGaussian& d) {
                require(finite_pos(d.mean) && finite_pos(d.shape),
                        "InverseGaussian: mean and shape must be positive");
            },
            [&](const BivariateNormal& d) {
                require(std::isfinite(d.mean[0]) && std::isfinite(d.mean[1]),
                        "BivariateNormal: mean must be finite");
                validate_spd2(d.cov, "BivariateNormal");
                dim_ = 2;
            },
            [&](const BivariateT& d) {
                require(finite_pos(d.dof), "BivariateT: dof must be positive");
                require(std::isfinite(d.location[0]) && std::isfinite(d.location[1]),
                        "BivariateT: location must be finite");
                validate_spd2(d.scale, "BivariateT");
                dim_ = 2;
            },
            [&](const BivariateLogistic& d) {
                require(std::isfinite(d.location1) && std::isfinite(d.location2) &&
                            finite_pos(d.scale1) && finite_pos(d.scale2),
                        "BivariateLogistic: scales must be positive");
                dim_ = 2;
            },
            [&](const ProductOfMarginals& d) {
                require(!d.marginals.empty(), "ProductOfMarginals: need at least one marginal");
                for (const auto& m : d.marginals) {
                    require(m.dim() == 1, "ProductOfMarginals: marginals must be univariate");
                }
                dim_ = static_cast<int>(d.marginals.size());
            },
        },
        family_);
}

double cdf(const DistributionSpec& d, std::span<const double> x) {
    if (static_cast<int>(x.size()) != d.dim()) {
        throw std::invalid_argument("cdf: point dimension mismatch");
    }
    for (double xi : x) {
        if (std::isnan(xi)) throw std::invalid_argument("cdf: NaN coordinate");
        if (xi == kNegInf) return 0.0;
    }
    return std::visit(
        Overloaded{
            [&](const Logistic& f) { return logistic_cdf(x[0], f.location, f.scale); },
            [&](const Laplace& f) { return laplace_cdf(x[0], f.location, f.scale); },
            [&](const Cauchy& f) { return cauchy_cdf(x[0], f.location, f.scale); },
            [&](const Normal& f) { return normal_cdf_ms(x[0], f.mean, std::sqrt(f.variance)); },
            [&](const Exponential& f) { return exponential_cdf(x[0], f.rate); },
            [&](const Weibull& f) { return weibull_cdf(x[0], f.shape, f.scale); },
            [&](const Gamma& f) { return gamma_cdf_sr(x[0], f.shape, f.rate); },
            [&](const InverseGaussian& f) { return invgauss_cdf_ms(x[0], f.mean, f.shape); },
            [&](const BivariateNormal& f) {
                const auto s = standardize2(x, f.mean, f.cov);
                return bvn_std_cdf(s.h, s.k, s.rho);
            },
            [&](const BivariateT& f) {
                const auto s = standardize2(x, f.location, f.scale);
                return bvt_std_cdf(s.h, s.k, s.rho, f.dof);
            },
            [&](const BivariateLogistic& f) {
                if (x[0] == kInf && x[1] == kInf) return 1.0;
                const double ea = x[0] == kInf ? 0.0 : std::exp(-(x[0] - f.location1) / f.scale1);
                const double eb = x[1] == kInf ? 0.0 : std::exp(-(x[1] - f.location2) / f.scale2);
                return 1.0 / (1.0 + ea + eb);
            },
            [&](const ProductOfMarginals& f) {
                double p = 1.0;
                for (std::size_t j = 0; j < f.marginals.size(); ++j) {
                    p *= cdf1(f.marginals[j], x[j]);
                    if (p == 0.0) break;
                }
                return p;
            },
        },
        d.family());
}

double cdf1(const DistributionSpec& d, double x) {
    return cdf(d, std::span<const double>(&x, 1));
}

double log_density(const DistributionSpec& d, std::span<const double> x) {
    if (static_cast<int>(x.size()) != d.dim()) {
        throw std::invalid_argument("log_density: point dimension mismatch");
    }
    for (double xi : x) {
        if (!std::isfinite(xi)) {
            throw std::domain_error("log_density: density undefined at non-finite point");
        }
    }
    return std::visit(
        Overloaded{
            [&](const Logistic& f) { return logistic_logpdf(x[0], f.location, f.scale); },
            [&](const Laplace& f) { return laplace_logpdf(x[0], f.location, f.scale); },
            [&](const Cauchy& f) { return cauchy_logpdf(x[0], f.location, f.scale); },
            [&](const Normal& f) { return normal_logpdf(x[0], f.mean, f.variance); },
            [&](const Exponential& f) { return exponential_logpdf(x[0], f.rate); },
            [&](const Weibull& f) { return weibull_logpdf(x[0], f.shape, f.scale); },
            [&](const Gamma& f) { return gamma_logpdf(x[0], f.shape, f.rate); },
            [&](const InverseGaussian& f) { return invgauss_logpdf(x[0], f.mean, f.shape); },
            [&](const BivariateNormal& f) { return bvn_logpdf(x, f); },
            [&](const BivariateT& f) { return bvt_logpdf(x, f); },
            [&](const BivariateLogistic& f) { return bvlogistic_logpdf(x, f); },
            [&](const ProductOfMarginals& f) {
                double s = 0.0;
                for (std::size_t j = 0; j < f.marginals.size(); ++j) {
                    s += log_density(f.marginals[j], x.subspan(j, 1));
                }
                return s;
            },
        },
        d.family());
}

double quantile(const DistributionSpec& d, double p) {
    if (d.dim() != 1) throw std::invalid_argument("quantile: univariate families only");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("quantile: p must lie in (0,1)");
    return std::visit(
        Overloaded{
            [&](const Logistic& f) { return f.location + f.scale * std::log(p / (1.0 - p)); },
            [&](const Laplace& f) {
                return p < 0.5 ? f.location + f.scale * std::log(2.0 * p)
                               : f.location - f.scale * std::log(2.0 * (1.0 - p));
            },
            [&](const Cauchy& f) {
                return f.location + f.scale * std::tan(3.14159265358979323846 * (p - 0.5));
            },
            [&](const Normal& f) {
                boost::math::normal_distribution<double> nd(f.mean, std::sqrt(f.variance));
                return boost::math::quantile(nd, p);
            },
            [&](const Exponential& f) { return -std::log1p(-p) / f.rate; },
            [&](const Weibull& f) {
                return f.scale * std::pow(-std::log1p(-p), 1.0 / f.shape);
            },
            [&](const Gamma& f) { return boost::math::gamma_p_inv(f.shape, p) / f.rate; },
            [&](const InverseGaussian& f) {
                boost::math::inverse_gaussian_distribution<double> ig(f.mean, f.shape);
                return boost::math::quantile(ig, p);
            },
            [&](const auto&) -> double {
                throw std::invalid_argument("quantile: univariate families only");
            },
        },
        d.family());
}

void sample(const DistributionSpec& d, RngStream& rng, std::size_t k, std::span<double> out) {
    if (out.size() != k * static_cast<std::size_t>(d.dim())) {
        throw std::invalid_argument("sample: output span size mismatch");
    }
    for (std::size_t i = 0; i < k; ++i) {
        double* row = out.data() + i * d.dim();
        std::visit(
            Overloaded{
                [&](const Logistic& f) {
                    const double u = rng.uniform01();
                    row[0] = f.location + f.scale * std::log(u / (1.0 - u));
                },
                [&](const Laplace& f) {
                    const double u = rng.uniform01();
                    row[0] = u < 0.5 ? f.location + f.scale * std::log(2.0 * u)
                                     : f.location - f.scale * std::log(2.0 * (1.0 - u));
                },
                [&](const Cauchy& f) {
                    const double u = rng.uniform01();
                    row[0] =
                        f.location + f.scale * std::tan(3.14159265358979323846 * (u - 0.5));
                },
                [&](const Normal& f) {
                    row[0] = f.mean + std::sqrt(f.variance) * draw_std_normal(rng);
                },
                [&](const Exponential& f) { row[0] = -std::log1p(-rng.uniform01()) / f.rate; },
                [&](const Weibull& f) {
                    row[0] = f.scale * std::pow(-std::log1p(-rng.uniform01()), 1.0 / f.shape);
                },
                [&](const Gamma& f) { row[0] = draw_gamma_rate1(f.shape, rng) / f.rate; },
                [&](const InverseGaussian& f) {
                    row[0] = draw_inverse_gaussian(f.mean, f.shape, rng);
                },
                [&](const BivariateNormal& f) {
                    const auto c = cholesky2(f.cov);
                    const double z1 = draw_std_normal(rng), z2 = draw_std_normal(rng);
                    row[0] = f.mean[0] + c.l11 * z1;
                    row[1] = f.mean[1] + c.l21 * z1 + c.l22 * z2;
                },
                [&](const BivariateT& f) {
                    const auto c = cholesky2(f.scale);
                    const double z1 = draw_std_normal(rng), z2 = draw_std_normal(rng);
                    double chi2;
                    if (f.dof == 1.0) {
                        const double z = draw_std_normal(rng);
                        chi2 = z * z;
                    } else {
                        chi2 = 2.0 * draw_gamma_rate1(0.5 * f.dof, rng);
                    }
                    const double fac = std::sqrt(f.dof / chi2);
                    row[0] = f.location[0] + c.l11 * z1 * fac;
                    row[1] = f.location[1] + (c.l21 * z1 + c.l22 * z2) * fac;
                },
                [&](const BivariateLogistic& f) {
                    // X by marginal logistic inversion; Y by inverting the
                    // conditional CDF ((1+a)/(1+a+b))^2 in closed form.
                    const double u1 = rng.uniform01();
                    row[0] = f.location1 + f.scale1 * std::log(u1 / (1.0 - u1));
                    const double a = (1.0 - u1) / u1;  // exp(-(x-m1)/s1)
                    const double u2 = rng.uniform01();
                    const double b = (1.0 + a) * (1.0 / std::sqrt(u2) - 1.0);
                    row[1] = f.location2 - f.scale2 * std::log(b);
                },
                [&](const ProductOfMarginals& f) {
                    for (std::size_t j = 0; j < f.marginals.size(); ++j) {
                        sample(f.marginals[j], rng, 1, std::span<double>(row + j, 1));
                    }
                },
            },
            d.family());
    }
}

std::vector<double> sample(const DistributionSpec& d, RngStream& rng, std::size_t k) {
    std::vector<double> out(k * static_cast<std::size_t>(d.dim()));
    sample(d, rng, k, out);
    return out;
}

// ---------------------------------------------------------------------------
// MixtureSpec

MixtureSpec::MixtureSpec(std::vector<DistributionSpec> components, WeightScheme weights)
    : components_(std::move(components)), weights_(std::move(weights)), dim_(0) {
    if (components_.empty()) {
        throw std::invalid_argument("MixtureSpec: need at least one component");
    }
    if (components_.size() != weights_.size()) {
        throw std::invalid_argument("MixtureSpec: component count must match weight count");
    }
    dim_ = components_.front().dim();
    for (const auto& c : components_) {
        if (c.dim() != dim_) {
            throw std::invalid_argument("MixtureSpec: components must share one dimension");
        }
    }
}

double cdf(const MixtureSpec& m, std::span<const double> x) {
    const auto& w = m.weights().values();
    double acc = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (w[i] > 0.0) acc += w[i] * cdf(m.components()[i], x);
    }
    return acc;
}

double cdf1(const MixtureSpec& m, double x) {
    return cdf(m, std::span<const double>(&x, 1));
}

double log_density(const MixtureSpec& m, std::span<const double> x) {
    const auto& w = m.weights().values();
    double max_term = kNegInf;
    std::vector<double> terms;
    terms.reserve(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (w[i] <= 0.0) continue;
        const double t = std::log(w[i]) + log_density(m.components()[i], x);
        terms.push_back(t);
        max_term = std::max(max_term, t);
    }
    if (max_term == kNegInf) return kNegInf;
    double s = 0.0;
    for (double t : terms) s += std::exp(t - max_term);
    return max_term + std::log(s);
}

void sample(const MixtureSpec& m, RngStream& rng, std::size_t k, std::span<double> out) {
    if (out.size() != k * static_cast<std::size_t>(m.dim())) {
        throw std::invalid_argument("sample: output span size mismatch");
    }
    const std::size_t d = static_cast<std::size_t>(m.dim());
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t idx = draw_index(m.weights(), rng);
        sample(m.components()[idx], rng, 1, out.subspan(i * d, d));
    }
}

std::vector<double> sample(const MixtureSpec& m, RngStream& rng, std::size_t k) {
    std::vector<double> out(k * static_cast<std::size_t>(m.dim()));
    sample(m, rng, k, out);
    return out;
}

}  // namespace mixtest
