#include "mixtest/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <boost/math/tools/minima.hpp>

namespace mixtest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Bracket1 {
    double a, m, b;
    double vm;
};

struct Solve1 {
    double x = 0.0;
    double value = -kInf;
    bool boundary = false;
};

// Maximizes f over the open interval (lo, hi) starting near `start`: ascent
// walk to bracket the maximum, golden-section/parabolic refinement, then a
// safeguarded bisection polish of the score (analytic when supplied, central
// finite differences otherwise) down to |score| <= 1e-9. A walk that ascends
// into a finite bound returns the near-bound probe flagged as boundary; one
// that keeps ascending toward an infinite bound is an estimation failure.
Solve1 maximize_1d(const std::function<double(double)>& f, double lo, double hi, double start,
                   const std::function<double(double)>& score, int& evals) {
    auto val = [&](double x) {
        ++evals;
        const double v = f(x);
        return std::isnan(v) ? -kInf : v;
    };

    // Strictly interior starting point.
    double x0 = start;
    if (std::isfinite(lo) && std::isfinite(hi)) {
        if (!(x0 > lo && x0 < hi)) x0 = 0.5 * (lo + hi);
    } else if (std::isfinite(lo)) {
        if (!(x0 > lo)) x0 = lo + 1.0;
    } else if (std::isfinite(hi)) {
        if (!(x0 < hi)) x0 = hi - 1.0;
    } else if (!std::isfinite(x0)) {
        x0 = 0.0;
    }

    double v0 = val(x0);
    for (int j = -40; j <= 40 && v0 == -kInf; ++j) {
        const double mag = std::ldexp(1.0, j);
        double c;
        if (std::isfinite(lo) && std::isfinite(hi)) {
            c = lo + (hi - lo) * (static_cast<double>(j + 40) + 0.5) / 81.0;
        } else if (std::isfinite(lo)) {
            c = lo + mag * (1.0 + std::abs(lo));
        } else if (std::isfinite(hi)) {
            c = hi - mag * (1.0 + std::abs(hi));
        } else {
            c = (j % 2 == 0 ? mag : -mag);
        }
        if (c > lo && c < hi) {
            const double v = val(c);
            if (v > -kInf) {
                x0 = c;
                v0 = v;
            }
        }
    }
    if (v0 == -kInf) {
        throw EstimationError("log-likelihood is not finite anywhere probed");
    }

    // Steps double toward an infinite bound and halve the remaining gap toward
    // a finite (open) one; nullopt means no representable room is left.
    auto advance = [](double x, double step, double bound, int dir) -> std::optional<double> {
        if (std::isinf(bound)) return x + dir * step;
        const double nx = x + 0.5 * (bound - x);
        if (std::abs(bound - nx) <= 4.0 * kEps * (1.0 + std::abs(bound))) return std::nullopt;
        return nx;
    };

    const double scale = std::max(1.0, 0.5 * std::abs(x0));
    const auto right0 = advance(x0, scale, hi, +1);
    const auto left0 = advance(x0, scale, lo, -1);
    const double vr0 = right0 ? val(*right0) : -kInf;
    const double vl0 = left0 ? val(*left0) : -kInf;

    std::optional<Bracket1> bracket;
    if (vr0 <= v0 && vl0 <= v0) {
        if (right0 && left0) {
            bracket = Bracket1{*left0, x0, *right0, v0};
        } else {
            // No room on at least one side: the start already hugs a bound.
            return Solve1{x0, v0, true};
        }
    } else {
        const int dir = vr0 >= vl0 ? +1 : -1;
        const double bound = dir > 0 ? hi : lo;
        double step = 2.0 * scale;
        double prev_x = x0;
        double cur_x = dir > 0 ? *right0 : *left0;
        double cur_v = dir > 0 ? vr0 : vl0;
        for (int it = 0; it < 200; ++it) {
            const auto nxt = advance(cur_x, step, bound, dir);
            if (!nxt) {
                return Solve1{cur_x, cur_v, true};  // ascended into a finite bound
            }
            const double nv = val(*nxt);
            if (nv <= cur_v) {
                bracket = dir > 0 ? Bracket1{prev_x, cur_x, *nxt, cur_v}
                                  : Bracket1{*nxt, cur_x, prev_x, cur_v};
                break;
            }
            prev_x = cur_x;
            cur_x = *nxt;
            cur_v = nv;
            step *= 2.0;
        }
        if (!bracket) {
            throw EstimationError("log-likelihood increases without bound");
        }
    }

    auto neg = [&](double x) { return -val(x); };
    const auto brent = boost::math::tools::brent_find_minima(neg, bracket->a, bracket->b, 26);
    double xhat = brent.first;
    double vhat = -brent.second;
    if (vhat < bracket->vm) {  // flat plateaus: keep the walk's best point
        xhat = bracket->m;
        vhat = bracket->vm;
    }

    std::function<double(double)> sfun = score;
    if (!sfun) {
        sfun = [&val, lo, hi](double x) {
            const double h = 1e-6 * (1.0 + std::abs(x));
            if (!(x - h > lo && x + h < hi)) return std::numeric_limits<double>::quiet_NaN();
            return (val(x + h) - val(x - h)) / (2.0 * h);
        };
    }
    const double sh = sfun(xhat);
    if (std::isfinite(sh) && std::abs(sh) > 1e-9) {
        // Expand around xhat inside the bracket until the score changes sign
        // downward (the maximum orientation), then bisect.
        double d = std::max(1e-8, 1e-6 * std::abs(xhat));
        double bl = xhat, br = xhat, sl = sh, sr = sh;
        bool have = false;
        for (int j = 0; j < 64; ++j) {
            bl = std::max(bracket->a, xhat - d);
            br = std::min(bracket->b, xhat + d);
            sl = sfun(bl);
            sr = sfun(br);
            if (!std::isfinite(sl) || !std::isfinite(sr)) break;
            if (sl > 0.0 && sr < 0.0) {
                have = true;
                break;
            }
            if (bl == bracket->a && br == bracket->b) break;
            d *= 2.0;
        }
        if (have) {
            for (int it = 0; it < 200; ++it) {
                const double m = 0.5 * (bl + br);
                const double sm = sfun(m);
                if (!std::isfinite(sm)) break;
                if (std::abs(sm) <= 1e-9 ||
                    br - bl <= 8.0 * kEps * (1.0 + std::abs(m))) {
                    bl = br = m;
                    break;
                }
                if (sm > 0.0) {
                    bl = m;
                } else {
                    br = m;
                }
            }
            const double cand = 0.5 * (bl + br);
            const double vc = val(cand);
            if (vc >= vhat - 1e-12 * (1.0 + std::abs(vhat))) {
                xhat = cand;
                vhat = vc;
            }
        }
    }

    return Solve1{xhat, vhat, false};
}

}  // namespace

ParametricFamily make_family(int dim, std::vector<double> lower, std::vector<double> upper,
                             ComponentFn component, WeightScheme alpha, GuessFn guess) {
    if (dim < 1) throw std::invalid_argument("make_family: dim must be >= 1");
    if (lower.empty() || lower.size() != upper.size()) {
        throw std::invalid_argument("make_family: bound vectors must be nonempty and equal-sized");
    }
    for (std::size_t c = 0; c < lower.size(); ++c) {
        if (!(lower[c] < upper[c])) {
            throw std::invalid_argument("make_family: each lower bound must be below its upper");
        }
    }
    if (!component || !guess) {
        throw std::invalid_argument("make_family: component and guess functions are required");
    }

    ParametricFamily fam;
    fam.dim = dim;
    fam.param_dim = static_cast<int>(lower.size());
    fam.lower = std::move(lower);
    fam.upper = std::move(upper);
    const std::size_t n = alpha.size();

    fam.mixture = [component, alpha, n](std::span<const double> theta) {
        std::vector<DistributionSpec> comps;
        comps.reserve(n);
        for (std::size_t k = 0; k < n; ++k) comps.push_back(component(theta, k));
        return MixtureSpec(std::move(comps), alpha);
    };

    fam.bind = [dim, component, alpha, guess, n](const Dataset& data) {
        if (data.dim != dim) throw std::invalid_argument("bind: dataset dimension mismatch");
        if (data.size() != n) {
            throw std::invalid_argument("bind: dataset size must match the component count");
        }
        FitObjective obj;
        obj.init = guess(data);
        obj.loglik = [component, alpha, data, n](std::span<const double> theta) {
            std::vector<DistributionSpec> comps;
            comps.reserve(n);
            for (std::size_t k = 0; k < n; ++k) comps.push_back(component(theta, k));
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (alpha[i] <= 0.0) continue;
                // log of the weighted mixture density at row i, via log-sum-exp
                double mx = -kInf;
                std::vector<double> terms;
                terms.reserve(n);
                for (std::size_t k = 0; k < n; ++k) {
                    if (alpha[k] <= 0.0) continue;
                    const double t = std::log(alpha[k]) + log_density(comps[k], data.row(i));
                    terms.push_back(t);
                    mx = std::max(mx, t);
                }
                if (mx == -kInf) return -kInf;
                double s = 0.0;
                for (double t : terms) s += std::exp(t - mx);
                acc += alpha[i] * (mx + std::log(s));
            }
            return acc;
        };
        return obj;
    };
    return fam;
}

ParametricFamily make_shifted_exponential_family(std::vector<double> mu, WeightScheme alpha) {
    const std::size_t n = alpha.size();
    if (mu.size() != n) {
        throw std::invalid_argument(
            "make_shifted_exponential_family: offset count must match weight count");
    }
    for (double m : mu) {
        if (!std::isfinite(m) || m < 0.0) {
            throw std::invalid_argument(
                "make_shifted_exponential_family: offsets must be finite and >= 0");
        }
    }

    ParametricFamily fam;
    fam.dim = 1;
    fam.param_dim = 1;
    fam.lower = {0.0};
    fam.upper = {kInf};

    fam.mixture = [mu, alpha, n](std::span<const double> theta) {
        std::vector<DistributionSpec> comps;
        comps.reserve(n);
        for (std::size_t k = 0; k < n; ++k) {
            comps.push_back(DistributionSpec(Exponential{theta[0] + mu[k]}));
        }
        return MixtureSpec(std::move(comps), alpha);
    };

    fam.bind = [mu, alpha, n](const Dataset& data) {
        if (data.dim != 1) throw std::invalid_argument("bind: dataset dimension mismatch");
        if (data.size() != n) {
            throw std::invalid_argument("bind: dataset size must match the component count");
        }
        // With density sum_k alpha_k (theta+mu_k) exp(-(theta+mu_k) x), each
        // point's mixture factorizes as exp(-theta x) (theta S0 + S1) with
        // x-only sums S0, S1, making every log-likelihood evaluation O(n).
        std::vector<double> xs(n), s0(n, 0.0), s1(n, 0.0);
        bool in_support = true;
        for (std::size_t i = 0; i < n; ++i) {
            xs[i] = data.value1(i);
            if (xs[i] < 0.0) in_support = false;
        }
        if (in_support) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t k = 0; k < n; ++k) {
                    if (alpha[k] <= 0.0) continue;
                    const double e = alpha[k] * std::exp(-mu[k] * xs[i]);
                    s0[i] += e;
                    s1[i] += mu[k] * e;
                }
            }
        }

        FitObjective obj;
        double xbar = 0.0, mubar = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            xbar += alpha[i] * xs[i];
            mubar += alpha[i] * mu[i];
        }
        obj.init = {std::max(0.01, 1.0 / std::max(xbar, 1e-12) - mubar)};

        obj.loglik = [alpha, xs, s0, s1, in_support, n](std::span<const double> theta) {
            if (!in_support) return -kInf;
            const double th = theta[0];
            if (!(th > 0.0)) return -kInf;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (alpha[i] <= 0.0) continue;
                const double mix = th * s0[i] + s1[i];
                if (!(mix > 0.0)) return -kInf;
                acc += alpha[i] * (std::log(mix) - th * xs[i]);
            }
            return acc;
        };
        obj.score = [alpha, xs, s0, s1, in_support, n](std::span<const double> theta) {
            std::vector<double> g(1, std::numeric_limits<double>::quiet_NaN());
            if (!in_support) return g;
            const double th = theta[0];
            if (!(th > 0.0)) return g;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (alpha[i] <= 0.0) continue;
                acc += alpha[i] * (s0[i] / (th * s0[i] + s1[i]) - xs[i]);
            }
            g[0] = acc;
            return g;
        };
        return obj;
    };
    return fam;
}

FitResult weighted_mle(const ParametricFamily& family, const Dataset& data) {
    const auto p = static_cast<std::size_t>(family.param_dim);
    if (family.param_dim < 1 || family.lower.size() != p || family.upper.size() != p) {
        throw std::invalid_argument("weighted_mle: inconsistent parameter bounds");
    }
    for (std::size_t c = 0; c < p; ++c) {
        if (!(family.lower[c] < family.upper[c])) {
            throw std::invalid_argument("weighted_mle: each lower bound must be below its upper");
        }
    }
    if (!family.bind) throw std::invalid_argument("weighted_mle: family has no bind function");
    if (data.dim != family.dim) {
        throw std::invalid_argument("weighted_mle: dataset dimension mismatch");
    }

    FitObjective obj = family.bind(data);
    if (obj.init.size() != p) {
        throw std::invalid_argument("weighted_mle: initial guess dimension mismatch");
    }
    if (!obj.loglik) throw std::invalid_argument("weighted_mle: objective has no log-likelihood");

    std::vector<double> theta = obj.init;
    int evals = 0;
    bool any_boundary = false;
    double value = -kInf;

    const int max_sweeps = family.param_dim == 1 ? 1 : 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double moved = 0.0;
        for (std::size_t c = 0; c < p; ++c) {
            auto f1 = [&theta, &obj, c](double x) {
                std::vector<double> t = theta;
                t[c] = x;
                return obj.loglik(t);
            };
            std::function<double(double)> s1;
            if (obj.score) {
                s1 = [&theta, &obj, c](double x) {
                    std::vector<double> t = theta;
                    t[c] = x;
                    return obj.score(t)[c];
                };
            }
            const Solve1 r =
                maximize_1d(f1, family.lower[c], family.upper[c], theta[c], s1, evals);
            moved = std::max(moved, std::abs(r.x - theta[c]) / (1.0 + std::abs(r.x)));
            theta[c] = r.x;
            value = r.value;
            any_boundary = any_boundary || r.boundary;
        }
        if (moved <= 1e-10) break;
    }

    FitResult out;
    out.theta = std::move(theta);
    out.loglik = value;
    out.boundary = any_boundary;
    out.iterations = evals;
    return out;
}

}  // namespace mixtest
