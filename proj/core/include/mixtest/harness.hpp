#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "mixtest/distributions.hpp"
#include "mixtest/gof.hpp"

namespace mixtest {

// Simulation-study driver. Five tables, one per test:
//   1  goodness-of-fit against a fully known mixture null
//   3  goodness-of-fit against the shifted-exponential family
//   5  central symmetry
//   7  homogeneity of two samples (equal sizes)
//   9  independence of two coordinates
// Each table has three size rows (S1..S3, data drawn from the null) and three
// power rows (P1..P3, data drawn from an alternative). All rows use uniform
// weights; the per-observation distributions vary in i and stabilize as i
// grows, which is exactly the regime the tests are built for.

// Per-observation generator; the index is 1-based to match the drift formulas
// (1/i, 1/sqrt(i), 1/log(i+1) at i = 1, 2, ...).
using IndexedSpec = std::function<DistributionSpec(std::size_t)>;
using IndexedValue = std::function<double(std::size_t)>;

struct Scenario {
    int table = 0;
    std::string id;           // "S1".."S3" size rows, "P1".."P3" power rows
    std::string description;  // data law, and the null when it differs
    IndexedSpec data1;        // observation i of the (first) sample
    IndexedSpec data2;        // observation i of the second sample (table 7)
    IndexedSpec null_component;          // component i of the known null (table 1)
    IndexedValue mu;                     // rate shift mu_i (table 3)
};

struct HarnessConfig {
    std::size_t meta = 1000;  // outer replications per table cell
    std::size_t B = 500;      // Monte-Carlo replicates inside each test
    std::vector<double> alphas = {0.025, 0.05, 0.1};
    std::vector<std::size_t> sample_sizes = {25, 50};
    std::uint64_t seed = 0;  // master seed; every cell derives from it
    int parallelism = 1;     // threads over the outer replications
};

struct AlphaRate {
    double alpha = 0.0;
    double ks_rate = 0.0;
    double cvm_rate = 0.0;
};

struct ScenarioResult {
    int table = 0;
    std::string id;
    std::size_t n = 0;
    std::vector<AlphaRate> rates;  // one entry per config alpha
    std::size_t meta = 0;
    std::size_t B = 0;
    std::uint64_t seed = 0;  // the master seed the run derived from
};

// The full thirty-scenario catalogue, ordered by table then row.
const std::vector<Scenario>& catalogue();

// Lookup by (table, id); throws std::invalid_argument when absent.
const Scenario& find_scenario(int table, const std::string& id);

// Draws observation i from gen(i) for i = 1..n, in that order, from a single
// stream; rows land in data row order.
Dataset sample_sequence(const IndexedSpec& gen, std::size_t n, RngStream& rng);

// Runs one scenario at one sample size. The cell's seed is
// substream_seed(cfg.seed, fnv1a("table/id/n")), so every cell is
// reproducible in isolation; meta-replicate m then derives data and test
// streams from substream_seed(cell_seed, m). One replicate set per
// meta-replicate serves every alpha. Runs the outer loop on cfg.parallelism
// threads with bit-identical results for any thread count.
ScenarioResult run_scenario(const Scenario& scenario, std::size_t n, const HarnessConfig& cfg);

// Every catalogue row of one table, across cfg.sample_sizes.
std::vector<ScenarioResult> run_table(int table, const HarnessConfig& cfg);

// Rejection-rate CSV: table,scenario,n,alpha,ks_rate,cvm_rate,meta,B,seed.
void write_rates_csv(std::ostream& out, const std::vector<ScenarioResult>& results);

// Demonstration null outside the closed-form catalogue: observation i is
// Y + Z_i with Y ~ logistic(0,1) and Z_i ~ N(0, 1/i^2), so each component CDF
// is the convolution integral (1/sqrt(2 pi)) int exp(-z^2/2) L(x - z/i) dz,
// evaluated by adaptive quadrature. Exercises the NullModel interface with a
// null that is not a library distribution.
NullModel demo_convolution_null(std::size_t n);

// n observations from that null's data law (observation i uses Z_i), drawing
// Y then Z_i per observation, i ascending.
Dataset demo_convolution_sample(std::size_t n, RngStream& rng);

}  // namespace mixtest
