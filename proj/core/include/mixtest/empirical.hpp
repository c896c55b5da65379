#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mixtest/rng.hpp"
#include "mixtest/weights.hpp"

namespace mixtest {

// Row-major sample matrix: n observations of dimension dim.
// Observations must be finite; NaN or infinite entries are rejected.
struct Dataset {
    Dataset(int dim, std::vector<double> values);

    std::size_t size() const { return values.empty() ? 0 : values.size() / dim; }
    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(values.data() + i * dim, dim);
    }
    double value1(std::size_t i) const { return values[i]; }  // dim == 1 convenience

    int dim;
    std::vector<double> values;
};

// Weighted empirical CDF  F(t) = sum_i alpha_i * 1{X_i <= t componentwise}.
// Evaluation accepts +/-infinity coordinates with the usual limit meaning.
//
// For dim == 1 the atoms are precomputed as a sorted unique list with
// cumulative weights, so eval1 is O(log n) and the exact one-sample formulas
// below can walk the jump points. Ties are merged by summing their weights in
// (value, weight)-sorted order, which keeps results bit-identical under any
// permutation of the input rows.
class WeightedEcdf {
  public:
    WeightedEcdf(Dataset data, WeightScheme weights);

    int dim() const { return data_.dim; }
    std::size_t size() const { return data_.size(); }
    const Dataset& data() const { return data_; }
    const WeightScheme& weights() const { return weights_; }

    double eval1(double t) const;                 // dim == 1 only
    double eval(std::span<const double> t) const; // any dim

    // dim == 1 jump structure: atoms1()[i] is the i-th distinct value in
    // increasing order and cum1()[i] the total weight of atoms <= it.
    const std::vector<double>& atoms1() const;
    const std::vector<double>& cum1() const;

  private:
    Dataset data_;
    WeightScheme weights_;
    std::vector<double> atoms1_;
    std::vector<double> cum1_;
};

// Distinct rows of a dataset with their merged weights. Rows are ordered
// lexicographically (weight as tie-break), so the list is invariant under
// permutations of the input rows; `rep` holds one representative row index
// per distinct atom.
struct AtomList {
    std::vector<std::size_t> rep;
    std::vector<double> mass;
};

AtomList distinct_atoms(const Dataset& data, const WeightScheme& weights);

using CdfFn = std::function<double(std::span<const double>)>;
using Cdf1Fn = std::function<double(double)>;
// Writes one draw of `dim` coordinates into the span.
using DrawFn = std::function<void(RngStream&, std::span<double>)>;

// Unscaled discrepancies between a weighted ECDF and a null CDF. The caller
// applies the test's sample-size scaling.

// sup_t |F(t) - G(t)| for dim == 1 and continuous G: exact via the jump
// points, checking both one-sided gaps at every atom.
double sup_diff1(const WeightedEcdf& f, const Cdf1Fn& null_cdf);

// dim >= 2: the supremum restricted to the grid of observed coordinate values
// per axis, each extended by +infinity. Exact when G is a step function with
// jumps only at observed values; otherwise a lower bound on the supremum.
// (Grid points with a -infinity coordinate are identically zero differences
// and are not enumerated.)
double sup_diff_grid(const WeightedEcdf& f, const CdfFn& null_cdf);

// sup_t |F(t) - G(t)| when both are step functions (any dim): exact, because
// the difference is constant on the rectangles cut by the union of observed
// coordinate values, whose lower-left corners are all enumerated.
double sup_diff_steps(const WeightedEcdf& f, const WeightedEcdf& g);

// integral of (F - G)^2 dG for dim == 1 and continuous G: exact closed form.
// Substituting u = G(t) makes each inter-atom segment a cubic in u.
double cvm_integral1(const WeightedEcdf& f, const Cdf1Fn& null_cdf);

// integral of (F - G)^2 dG when G is itself atomic: the exact sum of
// mass_G(y) * (F(y) - G(y))^2 over the distinct atoms y of g, any dim.
double cvm_integral_atoms(const WeightedEcdf& f, const WeightedEcdf& g);

// Monte Carlo fallback for dim >= 2 with continuous G: the average of
// (F(Z) - G(Z))^2 over k draws Z ~ G taken from `draw`.
double cvm_integral_mc(const WeightedEcdf& f, const CdfFn& null_cdf, const DrawFn& draw,
                       std::size_t k, RngStream& rng);

}  // namespace mixtest
