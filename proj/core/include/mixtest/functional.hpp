#pragma once

#include <cstddef>
#include <utility>

#include "mixtest/empirical.hpp"
#include "mixtest/gof.hpp"
#include "mixtest/weights.hpp"

namespace mixtest {

// Tests for distributional structure expressed through differentiable
// functionals of empirical CDFs: equality of two laws, central symmetry about
// the origin, and independence of two coordinate blocks. Critical values come
// from resampling the corresponding restricted null, with the same derived
// substream scheme as the goodness-of-fit tests.

// Two-sample statistics (any dim, exact step-vs-step formulas):
//   KS  = (n*r)^(1/4) * sup |F - G|
//   CvM = sqrt(n*r) * sum over pooled atoms y of m(y) (F(y) - G(y))^2,
// where m is the atom mass under the pooled measure (F + G) / 2.
StatPair homogeneity_statistics(const WeightedEcdf& f, const WeightedEcdf& g);

// Central-symmetry statistics for a sample U (any dim): with C+ the ECDF of U
// and C- the ECDF of -U (joint sign flip),
//   KS  = sqrt(n) * sup |C+ - C-|
//   CvM = n * sum over pooled atoms of +-U of m(y) (C+(y) - C-(y))^2,
// m the atom mass under (C+ + C-) / 2.
StatPair symmetry_statistics(const WeightedEcdf& f);

// Independence statistics for rows split into blocks A = first k coordinates
// and B = the rest: with FA, FB the block marginals,
//   KS  = sqrt(n) * max over observed (a, b) grid of |F(a,b) - FA(a) FB(b)|
//   CvM = n * sum_{a,b} massA(a) massB(b) (F(a,b) - FA(a) FB(b))^2.
// k = l = 1 runs in O(n^2 log n); other splits use the O(n^3) grid scan and
// require n <= 2000. CvM terms are accumulated in ascending value order, so
// swapping the two blocks reproduces the statistics bit for bit (weighted
// joint CDF sums are block-order sensitive only in their tree summation for
// non-uniform weights; uniform weights use exact counts throughout).
StatPair independence_statistics(const WeightedEcdf& f, int k, int l);

// Null resamplers. Draw orders, per observation:
//  - homogeneity: one uniform picks the side (u < 1/2 -> first sample), then
//    one weighted index draw picks the row; the first sample is regenerated
//    before the second.
//  - symmetry: one weighted index draw picks the row, then one uniform picks
//    the sign (u < 1/2 -> +1) applied to all coordinates.
//  - independence: one weighted index draw picks the row supplying the A
//    block, then another the row supplying the B block.
std::pair<Dataset, Dataset> resample_homogeneity(const WeightedEcdf& f, const WeightedEcdf& g,
                                                 RngStream& rng);
Dataset resample_symmetry(const WeightedEcdf& f, RngStream& rng);
Dataset resample_independence(const WeightedEcdf& f, int k, int l, RngStream& rng);

// Observed statistics plus the raw replicate set; the *_test drivers finalize
// a single alpha from this, while callers evaluating several alphas reuse the
// replicates directly.
RunOutput homogeneity_run(const Dataset& x, const WeightScheme& alpha, const Dataset& v,
                          const WeightScheme& beta, const TestOptions& options);
RunOutput symmetry_run(const Dataset& u, const WeightScheme& alpha, const TestOptions& options);
RunOutput independence_run(const Dataset& x, const WeightScheme& alpha, int k, int l,
                           const TestOptions& options);

TestResult homogeneity_test(const Dataset& x, const WeightScheme& alpha, const Dataset& v,
                            const WeightScheme& beta, const TestOptions& options);
TestResult symmetry_test(const Dataset& u, const WeightScheme& alpha,
                         const TestOptions& options);
TestResult independence_test(const Dataset& x, const WeightScheme& alpha, int k, int l,
                             const TestOptions& options);

}  // namespace mixtest
