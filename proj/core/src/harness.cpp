#include "mixtest/harness.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "mixtest/functional.hpp"
#include "quadrature.hpp"

namespace mixtest {

namespace {

// Drift sequences; i is 1-based.
double inv_log(std::size_t i) { return 1.0 / std::log(static_cast<double>(i) + 1.0); }
double inv_sqrt(std::size_t i) { return 1.0 / std::sqrt(static_cast<double>(i)); }
double inv(std::size_t i) { return 1.0 / static_cast<double>(i); }

std::vector<Scenario> build_catalogue() {
    std::vector<Scenario> all;

    auto add = [&](Scenario s) { all.push_back(std::move(s)); };

    // Goodness-of-fit against a known logistic mixture. Size rows draw from
    // the null itself; power rows keep the null but draw from another family.
    const IndexedSpec logi_log = [](std::size_t i) {
        return DistributionSpec(Logistic{inv_log(i), 1.0});
    };
    const IndexedSpec logi_sqrt = [](std::size_t i) {
        return DistributionSpec(Logistic{inv_sqrt(i), 1.0});
    };
    const IndexedSpec logi_inv = [](std::size_t i) {
        return DistributionSpec(Logistic{inv(i), 1.0});
    };
    add({1, "S1", "logistic(1/log(i+1),1) against its own mixture", logi_log, {}, logi_log, {}});
    add({1, "S2", "logistic(1/sqrt(i),1) against its own mixture", logi_sqrt, {}, logi_sqrt, {}});
    add({1, "S3", "logistic(1/i,1) against its own mixture", logi_inv, {}, logi_inv, {}});
    add({1, "P1", "Laplace(-1/i,1/2) against the logistic(1/log(i+1),1) mixture",
         [](std::size_t i) { return DistributionSpec(Laplace{-inv(i), 0.5}); }, {}, logi_log, {}});
    add({1, "P2", "Cauchy(-1/log(i+1),1/2) against the logistic(1/sqrt(i),1) mixture",
         [](std::size_t i) { return DistributionSpec(Cauchy{-inv_log(i), 0.5}); }, {}, logi_sqrt,
         {}});
    add({1, "P3", "normal(-1/log(i+1),1/2) against the logistic(1/i,1) mixture",
         [](std::size_t i) { return DistributionSpec(Normal{-inv_log(i), 0.5}); }, {}, logi_inv,
         {}});

    // Goodness-of-fit against the exponential family with known rate shifts
    // mu_i: component i is Exp(theta + mu_i) and theta is estimated.
    add({3, "S1", "Exp(1+1/log(i+1)) against Exp(theta+1/log(i+1))",
         [](std::size_t i) { return DistributionSpec(Exponential{1.0 + inv_log(i)}); }, {}, {},
         inv_log});
    add({3, "S2", "Exp(2+1/sqrt(i)) against Exp(theta+1/sqrt(i))",
         [](std::size_t i) { return DistributionSpec(Exponential{2.0 + inv_sqrt(i)}); }, {}, {},
         inv_sqrt});
    add({3, "S3", "Exp(3+1/i) against Exp(theta+1/i)",
         [](std::size_t i) { return DistributionSpec(Exponential{3.0 + inv(i)}); }, {}, {}, inv});
    add({3, "P1", "Weibull(1+1/log(i+1),1) against Exp(theta+1/log(i+1))",
         [](std::size_t i) { return DistributionSpec(Weibull{1.0 + inv_log(i), 1.0}); }, {}, {},
         inv_log});
    add({3, "P2", "inverse Gaussian(2/3,1+1/sqrt(i)) against Exp(theta+1/sqrt(i))",
         [](std::size_t i) {
             return DistributionSpec(InverseGaussian{2.0 / 3.0, 1.0 + inv_sqrt(i)});
         },
         {}, {}, inv_sqrt});
    add({3, "P3", "gamma(1/2, rate 1/(1+1/i)) against Exp(theta+1/i)",
         [](std::size_t i) { return DistributionSpec(Gamma{0.5, 1.0 / (1.0 + inv(i))}); }, {}, {},
         inv});

    // Central symmetry about the origin.
    add({5, "S1", "normal(0,1+1/log(i+1))",
         [](std::size_t i) { return DistributionSpec(Normal{0.0, 1.0 + inv_log(i)}); }, {}, {},
         {}});
    add({5, "S2", "logistic(0,1/2+1/sqrt(i))",
         [](std::size_t i) { return DistributionSpec(Logistic{0.0, 0.5 + inv_sqrt(i)}); }, {}, {},
         {}});
    add({5, "S3", "Cauchy(0,2+1/i)",
         [](std::size_t i) { return DistributionSpec(Cauchy{0.0, 2.0 + inv(i)}); }, {}, {}, {}});
    add({5, "P1", "normal(1/2,1+1/log(i+1))",
         [](std::size_t i) { return DistributionSpec(Normal{0.5, 1.0 + inv_log(i)}); }, {}, {},
         {}});
    add({5, "P2", "logistic(1/3,1/2+1/sqrt(i))",
         [](std::size_t i) { return DistributionSpec(Logistic{1.0 / 3.0, 0.5 + inv_sqrt(i)}); },
         {}, {}, {}});
    add({5, "P3", "Cauchy(3/2,2+1/i)",
         [](std::size_t i) { return DistributionSpec(Cauchy{1.5, 2.0 + inv(i)}); }, {}, {}, {}});

    // Homogeneity of two equally sized samples.
    const IndexedSpec weib_log = [](std::size_t i) {
        return DistributionSpec(Weibull{1.0 + inv_log(i), 1.0});
    };
    const IndexedSpec ig_sqrt = [](std::size_t i) {
        return DistributionSpec(InverseGaussian{2.0 / 3.0, 1.0 + inv_sqrt(i)});
    };
    const IndexedSpec exp_inv = [](std::size_t i) {
        return DistributionSpec(Exponential{1.0 + inv(i)});
    };
    add({7, "S1", "both samples Weibull(1+1/log(i+1),1)", weib_log, weib_log, {}, {}});
    add({7, "S2", "both samples inverse Gaussian(2/3,1+1/sqrt(i))", ig_sqrt, ig_sqrt, {}, {}});
    add({7, "S3", "both samples Exp(1+1/i)", exp_inv, exp_inv, {}, {}});
    add({7, "P1", "Exp(1+1/i) versus Weibull(1+1/i,1/3)", exp_inv,
         [](std::size_t i) { return DistributionSpec(Weibull{1.0 + inv(i), 1.0 / 3.0}); }, {},
         {}});
    add({7, "P2", "inverse Gaussian(2,1+1/sqrt(i)) versus gamma(1/2, rate 1/(1+1/sqrt(i)))",
         [](std::size_t i) { return DistributionSpec(InverseGaussian{2.0, 1.0 + inv_sqrt(i)}); },
         [](std::size_t i) {
             return DistributionSpec(Gamma{0.5, 1.0 / (1.0 + inv_sqrt(i))});
         },
         {}, {}});
    add({7, "P3", "inverse Gaussian(1/2,1+1/log(i+1)) versus Weibull(1+1/log(i+1),1/2)",
         [](std::size_t i) {
             return DistributionSpec(InverseGaussian{0.5, 1.0 + inv_log(i)});
         },
         [](std::size_t i) { return DistributionSpec(Weibull{1.0 + inv_log(i), 0.5}); }, {}, {}});

    // Independence of the two coordinates of bivariate observations.
    add({9, "S1", "normal(1/i,1) x normal(0,1)",
         [](std::size_t i) {
             return DistributionSpec(ProductOfMarginals{
                 {DistributionSpec(Normal{inv(i), 1.0}), DistributionSpec(Normal{0.0, 1.0})}});
         },
         {}, {}, {}});
    add({9, "S2", "logistic(1/sqrt(i),1) x logistic(0,1)",
         [](std::size_t i) {
             return DistributionSpec(
                 ProductOfMarginals{{DistributionSpec(Logistic{inv_sqrt(i), 1.0}),
                                     DistributionSpec(Logistic{0.0, 1.0})}});
         },
         {}, {}, {}});
    add({9, "S3", "Cauchy(1/log(i+1),1) x Cauchy(0,1)",
         [](std::size_t i) {
             return DistributionSpec(ProductOfMarginals{
                 {DistributionSpec(Cauchy{inv_log(i), 1.0}), DistributionSpec(Cauchy{0.0, 1.0})}});
         },
         {}, {}, {}});
    add({9, "P1", "bivariate normal, mean (1/i,1/i), covariance [2 1; 1 2]",
         [](std::size_t i) {
             return DistributionSpec(BivariateNormal{{inv(i), inv(i)}, {2.0, 1.0, 1.0, 2.0}});
         },
         {}, {}, {}});
    add({9, "P2", "bivariate t(1), location (1/sqrt(i),1/sqrt(i)), scale [2 1; 1 2]",
         [](std::size_t i) {
             return DistributionSpec(
                 BivariateT{1.0, {inv_sqrt(i), inv_sqrt(i)}, {2.0, 1.0, 1.0, 2.0}});
         },
         {}, {}, {}});
    add({9, "P3", "bivariate logistic(1/log(i+1),1,1/log(i+1),1)",
         [](std::size_t i) {
             return DistributionSpec(BivariateLogistic{inv_log(i), 1.0, inv_log(i), 1.0});
         },
         {}, {}, {}});

    return all;
}

void validate_config(const HarnessConfig& cfg) {
    if (cfg.meta < 1) throw std::invalid_argument("harness: meta must be >= 1");
    if (cfg.B < 1) throw std::invalid_argument("harness: B must be >= 1");
    if (cfg.alphas.empty()) throw std::invalid_argument("harness: no alpha levels");
    for (double a : cfg.alphas) {
        if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("harness: alpha must be in (0,1)");
    }
    if (cfg.parallelism < 1) throw std::invalid_argument("harness: parallelism must be >= 1");
}

std::string cell_label(int table, const std::string& id, std::size_t n) {
    return std::to_string(table) + "/" + id + "/" + std::to_string(n);
}

}  // namespace

const std::vector<Scenario>& catalogue() {
    static const std::vector<Scenario> all = build_catalogue();
    return all;
}

const Scenario& find_scenario(int table, const std::string& id) {
    for (const Scenario& s : catalogue()) {
        if (s.table == table && s.id == id) return s;
    }
    throw std::invalid_argument("no scenario " + id + " in table " + std::to_string(table));
}

Dataset sample_sequence(const IndexedSpec& gen, std::size_t n, RngStream& rng) {
    if (!gen) throw std::invalid_argument("sample_sequence: no generator");
    if (n == 0) throw std::invalid_argument("sample_sequence: n must be >= 1");

    const int dim = gen(1).dim();
    std::vector<double> values;
    values.reserve(n * static_cast<std::size_t>(dim));
    for (std::size_t i = 1; i <= n; ++i) {
        const DistributionSpec spec = gen(i);
        if (spec.dim() != dim) {
            throw std::invalid_argument("sample_sequence: generator changes dimension");
        }
        const std::vector<double> row = sample(spec, rng, 1);
        values.insert(values.end(), row.begin(), row.end());
    }
    return Dataset(dim, std::move(values));
}

ScenarioResult run_scenario(const Scenario& scenario, std::size_t n, const HarnessConfig& cfg) {
    validate_config(cfg);
    if (n == 0) throw std::invalid_argument("run_scenario: n must be >= 1");
    if (!scenario.data1) throw std::invalid_argument("run_scenario: scenario has no data law");

    const std::uint64_t cell_seed =
        substream_seed(cfg.seed, fnv1a(cell_label(scenario.table, scenario.id, n)));
    const WeightScheme w = WeightScheme::uniform(n);

    // Data-independent objects, shared read-only across the outer threads.
    std::unique_ptr<const NullModel> known_null;
    ParametricFamily family;
    switch (scenario.table) {
        case 1: {
            if (!scenario.null_component) {
                throw std::invalid_argument("run_scenario: table 1 scenario has no null");
            }
            std::vector<DistributionSpec> comps;
            comps.reserve(n);
            for (std::size_t i = 1; i <= n; ++i) comps.push_back(scenario.null_component(i));
            known_null =
                std::make_unique<const NullModel>(make_null_model(MixtureSpec(comps, w)));
            break;
        }
        case 3: {
            if (!scenario.mu) {
                throw std::invalid_argument("run_scenario: table 3 scenario has no shifts");
            }
            std::vector<double> mu(n);
            for (std::size_t i = 1; i <= n; ++i) mu[i - 1] = scenario.mu(i);
            family = make_shifted_exponential_family(std::move(mu), w);
            break;
        }
        case 5:
            break;
        case 7:
            if (!scenario.data2) {
                throw std::invalid_argument("run_scenario: table 7 scenario has one sample");
            }
            break;
        case 9:
            break;
        default:
            throw std::invalid_argument("run_scenario: unknown table " +
                                        std::to_string(scenario.table));
    }

    const std::size_t nalpha = cfg.alphas.size();
    // Rejection flags per meta-replicate: KS then CvM for each alpha.
    const auto flags = run_indexed<std::vector<std::uint8_t>>(
        cfg.meta, cell_seed, cfg.parallelism, [&](std::size_t, std::uint64_t rep_seed) {
            RngStream data_rng(substream_seed(rep_seed, kRoleData));
            TestOptions opt;
            opt.B = cfg.B;
            opt.seed = rep_seed;
            opt.parallelism = 1;

            RunOutput run;
            switch (scenario.table) {
                case 1:
                    run = gof_run(sample_sequence(scenario.data1, n, data_rng), w, *known_null,
                                  opt);
                    break;
                case 3:
                    run = gof_family_run(sample_sequence(scenario.data1, n, data_rng), w, family,
                                         opt);
                    break;
                case 5:
                    run = symmetry_run(sample_sequence(scenario.data1, n, data_rng), w, opt);
                    break;
                case 7: {
                    Dataset x = sample_sequence(scenario.data1, n, data_rng);
                    Dataset v = sample_sequence(scenario.data2, n, data_rng);
                    run = homogeneity_run(std::move(x), w, std::move(v), w, opt);
                    break;
                }
                default:
                    run = independence_run(sample_sequence(scenario.data1, n, data_rng), w, 1, 1,
                                           opt);
                    break;
            }

            std::vector<double> ks(run.replicates.size()), cvm(run.replicates.size());
            for (std::size_t b = 0; b < run.replicates.size(); ++b) {
                ks[b] = run.replicates[b].ks;
                cvm[b] = run.replicates[b].cvm;
            }
            std::vector<std::uint8_t> rej(2 * nalpha);
            for (std::size_t a = 0; a < nalpha; ++a) {
                rej[2 * a] = run.observed.ks >= critical_value(ks, cfg.alphas[a]) ? 1 : 0;
                rej[2 * a + 1] = run.observed.cvm >= critical_value(cvm, cfg.alphas[a]) ? 1 : 0;
            }
            return rej;
        });

    ScenarioResult res;
    res.table = scenario.table;
    res.id = scenario.id;
    res.n = n;
    res.meta = cfg.meta;
    res.B = cfg.B;
    res.seed = cfg.seed;
    res.rates.resize(nalpha);
    for (std::size_t a = 0; a < nalpha; ++a) {
        std::size_t ks_hits = 0, cvm_hits = 0;
        for (const auto& f : flags) {
            ks_hits += f[2 * a];
            cvm_hits += f[2 * a + 1];
        }
        res.rates[a].alpha = cfg.alphas[a];
        res.rates[a].ks_rate = static_cast<double>(ks_hits) / static_cast<double>(cfg.meta);
        res.rates[a].cvm_rate = static_cast<double>(cvm_hits) / static_cast<double>(cfg.meta);
    }
    return res;
}

std::vector<ScenarioResult> run_table(int table, const HarnessConfig& cfg) {
    validate_config(cfg);
    if (cfg.sample_sizes.empty()) throw std::invalid_argument("harness: no sample sizes");

    std::vector<ScenarioResult> out;
    bool any = false;
    for (const Scenario& s : catalogue()) {
        if (s.table != table) continue;
        any = true;
        for (std::size_t n : cfg.sample_sizes) out.push_back(run_scenario(s, n, cfg));
    }
    if (!any) throw std::invalid_argument("run_table: unknown table " + std::to_string(table));
    return out;
}

void write_rates_csv(std::ostream& out, const std::vector<ScenarioResult>& results) {
    out << "table,scenario,n,alpha,ks_rate,cvm_rate,meta,B,seed\n";
    char buf[128];
    for (const ScenarioResult& r : results) {
        for (const AlphaRate& a : r.rates) {
            std::snprintf(buf, sizeof buf, "%d,%s,%zu,%.10g,%.10g,%.10g,%zu,%zu,%llu\n", r.table,
                          r.id.c_str(), r.n, a.alpha, a.ks_rate, a.cvm_rate, r.meta, r.B,
                          static_cast<unsigned long long>(r.seed));
            out << buf;
        }
    }
}

NullModel demo_convolution_null(std::size_t n) {
    if (n == 0) throw std::invalid_argument("demo_convolution_null: n must be >= 1");

    // Component CDF: integrate the logistic CDF against the N(0, sigma^2)
    // density over z in [-10, 10] standard deviations (truncated mass < 1e-22).
    const auto component_cdf = [](double x, double sigma) {
        const auto integrand = [x, sigma](double z) {
            const double phi = 0.3989422804014327 * std::exp(-0.5 * z * z);
            return phi / (1.0 + std::exp(-(x - sigma * z)));
        };
        return detail::adaptive_simpson(integrand, -10.0, 10.0, 1e-12);
    };

    const auto mixture_cdf = [n, component_cdf](double x) {
        if (std::isnan(x)) throw std::invalid_argument("demo null: NaN point");
        if (x == std::numeric_limits<double>::infinity()) return 1.0;
        if (x == -std::numeric_limits<double>::infinity()) return 0.0;
        double acc = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            acc += component_cdf(x, 1.0 / static_cast<double>(i));
        }
        return acc / static_cast<double>(n);
    };

    NullModel model;
    model.dim = 1;
    model.continuous = true;
    model.cdf1 = mixture_cdf;
    model.cdf = [mixture_cdf](std::span<const double> x) { return mixture_cdf(x[0]); };
    // Mixture draw: component index first, then Y, then Z_i.
    const WeightScheme w = WeightScheme::uniform(n);
    const DistributionSpec logistic(Logistic{0.0, 1.0});
    model.draw = [w, logistic](RngStream& rng, std::span<double> out) {
        const std::size_t i = draw_index(w, rng) + 1;
        const double sigma = 1.0 / static_cast<double>(i);
        const double y = sample(logistic, rng, 1)[0];
        const double z = sample(DistributionSpec(Normal{0.0, sigma * sigma}), rng, 1)[0];
        out[0] = y + z;
    };
    return model;
}

Dataset demo_convolution_sample(std::size_t n, RngStream& rng) {
    if (n == 0) throw std::invalid_argument("demo_convolution_sample: n must be >= 1");
    const DistributionSpec logistic(Logistic{0.0, 1.0});
    std::vector<double> values(n);
    for (std::size_t i = 1; i <= n; ++i) {
        const double sigma = 1.0 / static_cast<double>(i);
        const double y = sample(logistic, rng, 1)[0];
        const double z = sample(DistributionSpec(Normal{0.0, sigma * sigma}), rng, 1)[0];
        values[i - 1] = y + z;
    }
    return Dataset(1, std::move(values));
}

}  // namespace mixtest
