#include "mixtest/gof.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

namespace mixtest {

namespace {

Dataset draw_dataset(const NullModel& null, std::size_t n, RngStream& rng) {
    std::vector<double> values(n * static_cast<std::size_t>(null.dim));
    for (std::size_t i = 0; i < n; ++i) {
        null.draw(rng, std::span<double>(values.data() + i * null.dim,
                                         static_cast<std::size_t>(null.dim)));
    }
    return Dataset(null.dim, std::move(values));
}

}  // namespace

void finalize_from_replicates(TestResult& r, const std::vector<StatPair>& reps, double alpha) {
    std::vector<double> ks(reps.size()), cvm(reps.size());
    for (std::size_t b = 0; b < reps.size(); ++b) {
        ks[b] = reps[b].ks;
        cvm[b] = reps[b].cvm;
    }
    r.critical_ks = critical_value(ks, alpha);
    r.critical_cvm = critical_value(cvm, alpha);
    r.p_ks = p_value(ks, r.statistic_ks);
    r.p_cvm = p_value(cvm, r.statistic_cvm);
    r.reject_ks = r.statistic_ks >= r.critical_ks;
    r.reject_cvm = r.statistic_cvm >= r.critical_cvm;
}

void validate_options(const TestOptions& opt) {
    if (opt.B < 1) throw std::invalid_argument("options: B must be >= 1");
    if (!(opt.alpha > 0.0 && opt.alpha < 1.0)) {
        throw std::invalid_argument("options: alpha must lie in (0,1)");
    }
    if (opt.parallelism < 1) throw std::invalid_argument("options: parallelism must be >= 1");
    if (opt.mc_points < 1) throw std::invalid_argument("options: mc_points must be >= 1");
    if (opt.max_retries < 0) throw std::invalid_argument("options: max_retries must be >= 0");
    if (!(opt.kappa_threshold > 0.0)) {
        throw std::invalid_argument("options: kappa_threshold must be > 0");
    }
}

NullModel make_null_model(MixtureSpec mixture) {
    auto shared = std::make_shared<const MixtureSpec>(std::move(mixture));
    NullModel null;
    null.dim = shared->dim();
    null.continuous = true;  // every shipped family is atomless
    if (null.dim == 1) {
        null.cdf1 = [shared](double t) { return cdf1(*shared, t); };
    }
    null.cdf = [shared](std::span<const double> t) { return cdf(*shared, t); };
    null.draw = [shared](RngStream& rng, std::span<double> out) {
        sample(*shared, rng, 1, out);
    };
    return null;
}

NullModel make_null_model(WeightedEcdf atoms) {
    auto shared = std::make_shared<const WeightedEcdf>(std::move(atoms));
    NullModel null;
    null.dim = shared->dim();
    null.continuous = false;
    if (null.dim == 1) {
        null.cdf1 = [shared](double t) { return shared->eval1(t); };
    }
    null.cdf = [shared](std::span<const double> t) { return shared->eval(t); };
    null.draw = [shared](RngStream& rng, std::span<double> out) {
        const std::size_t i = draw_index(shared->weights(), rng);
        const auto row = shared->data().row(i);
        std::copy(row.begin(), row.end(), out.begin());
    };
    null.atomic = shared;
    return null;
}

CvmMode choose_cvm_mode(const NullModel& null, int dim) {
    if (null.atomic) return CvmMode::atoms;
    if (dim == 1 && null.continuous) return CvmMode::exact;
    return CvmMode::mc;
}

StatPair gof_statistics(const WeightedEcdf& f, const NullModel& null, CvmMode mode,
                        std::size_t mc_points, RngStream* mc_rng) {
    if (f.dim() != null.dim) throw std::invalid_argument("gof_statistics: dimension mismatch");
    const double n = static_cast<double>(f.size());

    double ks_raw;
    if (null.atomic) {
        ks_raw = sup_diff_steps(f, *null.atomic);
    } else if (f.dim() == 1) {
        ks_raw = sup_diff1(f, null.cdf1);
    } else {
        ks_raw = sup_diff_grid(f, null.cdf);
    }

    double cvm_raw;
    switch (mode) {
        case CvmMode::exact:
            if (f.dim() != 1 || !null.continuous) {
                throw std::invalid_argument(
                    "gof_statistics: exact CvM needs a continuous 1-D null");
            }
            cvm_raw = cvm_integral1(f, null.cdf1);
            break;
        case CvmMode::atoms:
            if (!null.atomic) {
                throw std::invalid_argument("gof_statistics: atom CvM needs an atomic null");
            }
            cvm_raw = cvm_integral_atoms(f, *null.atomic);
            break;
        case CvmMode::mc:
            if (mc_rng == nullptr) {
                throw std::invalid_argument("gof_statistics: Monte Carlo CvM needs a stream");
            }
            cvm_raw = cvm_integral_mc(f, null.cdf, null.draw, mc_points, *mc_rng);
            break;
        default:
            throw std::invalid_argument("gof_statistics: unknown CvM mode");
    }

    return StatPair{std::sqrt(n) * ks_raw, n * cvm_raw};
}

RunOutput gof_run(const Dataset& data, const WeightScheme& weights, const NullModel& null,
                  const TestOptions& options) {
    validate_options(options);
    if (data.dim != null.dim) throw std::invalid_argument("gof_run: dimension mismatch");

    RunOutput out;
    const CvmMode mode = choose_cvm_mode(null, data.dim);
    const WeightedEcdf f(data, weights);
    {
        RngStream obs_rng(substream_seed(options.seed, kRoleIntegration));
        out.observed = gof_statistics(f, null, mode, options.mc_points, &obs_rng);
    }

    const std::uint64_t mc_root = substream_seed(options.seed, kRoleMc);
    const std::size_t n = data.size();
    out.replicates = run_replicates(
        options.B, mc_root, options.parallelism,
        [&](std::size_t, std::uint64_t rep_seed) {
            RngStream data_rng(substream_seed(rep_seed, kRoleData));
            const Dataset boot = draw_dataset(null, n, data_rng);
            const WeightedEcdf fb(boot, weights);
            RngStream int_rng(substream_seed(rep_seed, kRoleIntegration));
            return gof_statistics(fb, null, mode, options.mc_points, &int_rng);
        });
    return out;
}

TestResult gof_test(const Dataset& data, const WeightScheme& weights, const NullModel& null,
                    const TestOptions& options) {
    RunOutput run = gof_run(data, weights, null, options);

    TestResult r;
    r.n = data.size();
    r.alpha = options.alpha;
    r.B = options.B;
    r.seed = options.seed;
    r.diagnostics = weight_diagnostics(weights, options.kappa_threshold);
    r.statistic_ks = run.observed.ks;
    r.statistic_cvm = run.observed.cvm;
    finalize_from_replicates(r, run.replicates, options.alpha);
    return r;
}

RunOutput gof_family_run(const Dataset& data, const WeightScheme& weights,
                         const ParametricFamily& family, const TestOptions& options) {
    validate_options(options);
    if (data.dim != family.dim) throw std::invalid_argument("gof_family_run: dimension mismatch");
    if (!family.mixture) throw std::invalid_argument("gof_family_run: family has no mixture");

    RunOutput out;
    const FitResult fit = weighted_mle(family, data);
    out.theta_hat = fit.theta;
    const NullModel fitted = make_null_model(family.mixture(fit.theta));

    const CvmMode mode = choose_cvm_mode(fitted, data.dim);
    const WeightedEcdf f(data, weights);
    {
        RngStream obs_rng(substream_seed(options.seed, kRoleIntegration));
        out.observed = gof_statistics(f, fitted, mode, options.mc_points, &obs_rng);
    }

    const std::uint64_t mc_root = substream_seed(options.seed, kRoleMc);
    const std::size_t n = data.size();
    std::atomic<int> retries{0};
    out.replicates = run_replicates(
        options.B, mc_root, options.parallelism,
        [&](std::size_t, std::uint64_t rep_seed) {
            // Draw from the fitted null, refit, and test the draw against its
            // own refitted null. A failed refit redraws the replicate from a
            // fresh substream rather than reusing data that broke estimation.
            std::string last_error;
            for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
                const std::uint64_t role =
                    attempt == 0 ? kRoleData
                                 : kRoleRetryBase + static_cast<std::uint64_t>(attempt);
                RngStream data_rng(substream_seed(rep_seed, role));
                const Dataset boot = draw_dataset(fitted, n, data_rng);
                FitResult refit;
                try {
                    refit = weighted_mle(family, boot);
                } catch (const EstimationError& e) {
                    last_error = e.what();
                    retries.fetch_add(1, std::memory_order_relaxed);
                    continue;
                }
                const WeightedEcdf fb(boot, weights);
                const NullModel null_b = make_null_model(family.mixture(refit.theta));
                RngStream int_rng(substream_seed(rep_seed, kRoleIntegration));
                return gof_statistics(fb, null_b, mode, options.mc_points, &int_rng);
            }
            throw EstimationError("bootstrap refit failed after " +
                                  std::to_string(options.max_retries + 1) +
                                  " attempts; last error: " + last_error);
        });
    out.retries = retries.load();
    return out;
}

TestResult gof_family_test(const Dataset& data, const WeightScheme& weights,
                           const ParametricFamily& family, const TestOptions& options) {
    RunOutput run = gof_family_run(data, weights, family, options);

    TestResult r;
    r.n = data.size();
    r.alpha = options.alpha;
    r.B = options.B;
    r.seed = options.seed;
    r.diagnostics = weight_diagnostics(weights, options.kappa_threshold);
    r.statistic_ks = run.observed.ks;
    r.statistic_cvm = run.observed.cvm;
    r.theta_hat = run.theta_hat;
    r.retries = run.retries;
    finalize_from_replicates(r, run.replicates, options.alpha);
    return r;
}

}  // namespace mixtest
