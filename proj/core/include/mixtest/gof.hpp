#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "mixtest/distributions.hpp"
#include "mixtest/empirical.hpp"
#include "mixtest/estimation.hpp"
#include "mixtest/montecarlo.hpp"
#include "mixtest/weights.hpp"

namespace mixtest {

// Type-erased null distribution: everything a test needs from the hypothesized
// law. `atomic` is set when the law is itself a weighted sample, in which case
// the exact step-vs-step formulas apply instead of the continuous ones.
struct NullModel {
    int dim = 1;
    bool continuous = true;
    Cdf1Fn cdf1;  // dim == 1 only
    CdfFn cdf;
    DrawFn draw;  // one observation per call
    std::shared_ptr<const WeightedEcdf> atomic;
};

NullModel make_null_model(MixtureSpec mixture);
NullModel make_null_model(WeightedEcdf atoms);

// How the CvM integral is evaluated: closed form against a continuous 1-D
// null, exact atom sums against an atomic null, or Monte Carlo integration
// with mc_points draws from the null (multivariate continuous nulls).
enum class CvmMode { exact, atoms, mc };

// The mode gof_statistics picks by default for a given null.
CvmMode choose_cvm_mode(const NullModel& null, int dim);

struct TestOptions {
    std::size_t B = 500;     // null replicates behind the critical values
    double alpha = 0.05;
    std::uint64_t seed = 0;  // run seed; all randomness derives from it
    int parallelism = 1;
    std::size_t mc_points = 2000;  // CvM integration draws when mode == mc
    int max_retries = 5;           // bootstrap refit attempts per replicate
    double kappa_threshold = 10.0;
};

struct TestResult {
    std::size_t n = 0;
    std::size_t n2 = 0;  // second sample size (homogeneity only)
    double statistic_ks = 0.0, statistic_cvm = 0.0;
    double critical_ks = 0.0, critical_cvm = 0.0;
    double p_ks = 1.0, p_cvm = 1.0;
    bool reject_ks = false, reject_cvm = false;
    double alpha = 0.0;
    std::size_t B = 0;
    std::uint64_t seed = 0;
    WeightDiagnostics diagnostics{};
    std::vector<double> theta_hat;  // empty unless a family was fitted
    int retries = 0;                // bootstrap refit retries consumed
};

// Raw material of one test run: the observed statistics and the null
// replicates they are compared against. The *_test drivers finalize a single
// alpha from this; callers evaluating several alphas reuse the replicates.
struct RunOutput {
    StatPair observed;
    std::vector<StatPair> replicates;
    std::vector<double> theta_hat;  // family runs only
    int retries = 0;                // family runs only
};

RunOutput gof_run(const Dataset& data, const WeightScheme& weights, const NullModel& null,
                  const TestOptions& options);
RunOutput gof_family_run(const Dataset& data, const WeightScheme& weights,
                         const ParametricFamily& family, const TestOptions& options);

// Rejects malformed TestOptions (B, alpha, parallelism, mc_points, retry and
// threshold ranges).
void validate_options(const TestOptions& options);

// Fills critical values, p-values, and rejection flags from null replicates.
void finalize_from_replicates(TestResult& result, const std::vector<StatPair>& replicates,
                              double alpha);

// KS and CvM statistics of a weighted sample against a fully specified null:
// KS = sqrt(n) * sup |F - G| and CvM = n * integral (F - G)^2 dG. The KS
// supremum is exact except for continuous nulls in dim >= 2, where it is the
// observed-grid lower bound. `mc_rng` is consumed only when mode == mc.
StatPair gof_statistics(const WeightedEcdf& f, const NullModel& null, CvmMode mode,
                        std::size_t mc_points, RngStream* mc_rng);

// Goodness-of-fit test against a known null. Critical values come from B
// datasets of n draws from the null itself, re-evaluated with the same
// weights; rejection is statistic >= critical value.
TestResult gof_test(const Dataset& data, const WeightScheme& weights, const NullModel& null,
                    const TestOptions& options);

// Goodness-of-fit test against a parametric family: the parameter is fitted
// by weighted maximum likelihood, and every bootstrap replicate is refitted
// the same way before its statistics are computed. Replicates whose refit
// fails are redrawn up to max_retries times with fresh substreams; the total
// number of retries consumed is reported in the result.
TestResult gof_family_test(const Dataset& data, const WeightScheme& weights,
                           const ParametricFamily& family, const TestOptions& options);

}  // namespace mixtest
