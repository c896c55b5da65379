#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "expr.hpp"
#include "mixtest/csv.hpp"
#include "mixtest/functional.hpp"
#include "mixtest/gof.hpp"
#include "mixtest/harness.hpp"

using nlohmann::json;
using namespace mixtest;

namespace {

// Parameter-name conventions selectable per run; they apply to config files
// and rules read by this tool, never to the library API.
struct Conventions {
    std::string normal_param = "variance";  // or "stddev"
    std::string gamma_param = "rate";       // or "scale"
};

// Scalar parameter: a JSON number, or an expression string evaluated at the
// (1-based) observation index. Components outside a rule have no index; an
// expression using `i` there is an error.
double scalar_param(const json& v, const std::string& family, std::size_t slot,
                    std::optional<std::size_t> index) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const cli::IndexExpr e = cli::IndexExpr::parse(v.get<std::string>());
        if (e.uses_index() && !index) {
            throw std::invalid_argument(family + " parameter " + std::to_string(slot + 1) +
                                        ": 'i' is only available in a rule");
        }
        return e.eval(index.value_or(1));
    }
    throw std::invalid_argument(family + " parameter " + std::to_string(slot + 1) +
                                ": expected a number or an expression string");
}

// One distribution record {family, params: [...]}; parameter order follows
// the library structs. `index` is set when expanding a rule at observation i.
DistributionSpec spec_from_json(const json& rec, std::optional<std::size_t> index,
                                const Conventions& conv) {
    if (!rec.is_object() || !rec.contains("family")) {
        throw std::invalid_argument("distribution record needs a 'family' field");
    }
    const std::string family = rec.value("family", "");
    if (!rec.contains("params") || !rec["params"].is_array()) {
        throw std::invalid_argument(family + ": 'params' must be an array");
    }
    const json& ps = rec["params"];

    auto want = [&](std::size_t k) {
        if (ps.size() != k) {
            throw std::invalid_argument(family + ": expected " + std::to_string(k) +
                                        " params, got " + std::to_string(ps.size()));
        }
    };
    auto p = [&](std::size_t slot) { return scalar_param(ps[slot], family, slot, index); };

    if (family == "logistic") {
        want(2);
        return DistributionSpec(Logistic{p(0), p(1)});
    }
    if (family == "laplace") {
        want(2);
        return DistributionSpec(Laplace{p(0), p(1)});
    }
    if (family == "cauchy") {
        want(2);
        return DistributionSpec(Cauchy{p(0), p(1)});
    }
    if (family == "normal") {
        want(2);
        const double second = p(1);
        const double variance = conv.normal_param == "stddev" ? second * second : second;
        return DistributionSpec(Normal{p(0), variance});
    }
    if (family == "exponential") {
        want(1);
        return DistributionSpec(Exponential{p(0)});
    }
    if (family == "weibull") {
        want(2);
        return DistributionSpec(Weibull{p(0), p(1)});
    }
    if (family == "gamma") {
        want(2);
        const double second = p(1);
        const double rate = conv.gamma_param == "scale" ? 1.0 / second : second;
        return DistributionSpec(Gamma{p(0), rate});
    }
    if (family == "inverse-gaussian") {
        want(2);
        return DistributionSpec(InverseGaussian{p(0), p(1)});
    }
    if (family == "bivariate-normal") {
        want(6);
        return DistributionSpec(
            BivariateNormal{{p(0), p(1)}, {p(2), p(3), p(4), p(5)}});
    }
    if (family == "bivariate-t") {
        want(7);
        return DistributionSpec(
            BivariateT{p(0), {p(1), p(2)}, {p(3), p(4), p(5), p(6)}});
    }
    if (family == "bivariate-logistic") {
        want(4);
        return DistributionSpec(BivariateLogistic{p(0), p(1), p(2), p(3)});
    }
    if (family == "product") {
        std::vector<DistributionSpec> marginals;
        marginals.reserve(ps.size());
        for (const json& m : ps) marginals.push_back(spec_from_json(m, index, conv));
        return DistributionSpec(ProductOfMarginals{std::move(marginals)});
    }
    throw std::invalid_argument("unknown family '" + family + "'");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
}

// Null config: {"components": [record...]} with one record (constant null) or
// one per observation, or {"rule": record} expanded at i = 1..n. Components
// matching the sample size are mixed with the run's weight scheme.
MixtureSpec null_from_json(const std::string& path, std::size_t n, const WeightScheme& weights,
                           const Conventions& conv) {
    const json cfg = read_json_file(path);
    try {
        const bool has_components = cfg.contains("components");
        const bool has_rule = cfg.contains("rule");
        if (has_components == has_rule) {
            throw std::invalid_argument("need exactly one of 'components' or 'rule'");
        }

        std::vector<DistributionSpec> comps;
        if (has_rule) {
            comps.reserve(n);
            for (std::size_t i = 1; i <= n; ++i) {
                comps.push_back(spec_from_json(cfg["rule"], i, conv));
            }
        } else {
            const json& arr = cfg["components"];
            if (!arr.is_array() || arr.empty()) {
                throw std::invalid_argument("'components' must be a non-empty array");
            }
            if (arr.size() != 1 && arr.size() != n) {
                throw std::invalid_argument("'components' must hold 1 record or one per "
                                            "observation (" +
                                            std::to_string(n) + "), got " +
                                            std::to_string(arr.size()));
            }
            for (const json& rec : arr) comps.push_back(spec_from_json(rec, std::nullopt, conv));
        }

        if (comps.size() == 1) {
            return MixtureSpec(std::move(comps), WeightScheme::uniform(1));
        }
        return MixtureSpec(std::move(comps), weights);
    } catch (const std::invalid_argument& e) {
        throw DataError(path + ": " + e.what());
    }
}

struct WeightArgs {
    std::string scheme = "uniform";  // uniform | linear
    std::string file;                // single-column CSV overrides scheme
};

WeightScheme make_weights(const WeightArgs& args, std::size_t n, const std::string& who) {
    if (!args.file.empty()) {
        const Dataset w = read_csv_dataset(args.file);
        if (w.dim != 1) throw DataError(args.file + ": weights must be a single column");
        if (w.size() != n) {
            throw DataError(args.file + ": " + std::to_string(w.size()) + " weights for " +
                            std::to_string(n) + " observations");
        }
        return WeightScheme::from_values(w.values);
    }
    if (args.scheme == "uniform") return WeightScheme::uniform(n);
    if (args.scheme == "linear") return WeightScheme::linear(n);
    throw std::invalid_argument(who + ": unknown weight scheme '" + args.scheme + "'");
}

std::vector<double> mu_sequence(const std::string& rule, const std::string& file, std::size_t n) {
    if (!file.empty()) {
        const Dataset m = read_csv_dataset(file);
        if (m.dim != 1) throw DataError(file + ": shifts must be a single column");
        if (m.size() != n) {
            throw DataError(file + ": " + std::to_string(m.size()) + " shifts for " +
                            std::to_string(n) + " observations");
        }
        return m.values;
    }
    const cli::IndexExpr e = cli::IndexExpr::parse(rule);
    std::vector<double> mu(n);
    for (std::size_t i = 1; i <= n; ++i) mu[i - 1] = e.eval(i);
    return mu;
}

json diagnostics_json(const WeightDiagnostics& d) {
    return json{{"root_n_max", d.root_n_max},
                {"kappa_hat", d.kappa_hat},
                {"threshold", d.threshold},
                {"exceeds_threshold", d.exceeds_threshold}};
}

json result_json(const std::string& test, const TestResult& r) {
    json j{{"test", test},
           {"n", r.n},
           {"statistic_ks", r.statistic_ks},
           {"statistic_cvm", r.statistic_cvm},
           {"critical_ks", r.critical_ks},
           {"critical_cvm", r.critical_cvm},
           {"p_ks", r.p_ks},
           {"p_cvm", r.p_cvm},
           {"reject_ks", r.reject_ks},
           {"reject_cvm", r.reject_cvm},
           {"alpha", r.alpha},
           {"B", r.B},
           {"seed", r.seed},
           {"diagnostics", diagnostics_json(r.diagnostics)}};
    if (r.n2 > 0) j["n2"] = r.n2;
    if (!r.theta_hat.empty()) {
        j["theta_hat"] = r.theta_hat;
        j["retries"] = r.retries;
    }
    return j;
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw DataError("cannot open " + out_path + " for writing");
    out << j.dump(2) << "\n";
}

void warn_diagnostics(const WeightDiagnostics& d) {
    if (d.exceeds_threshold) {
        std::fprintf(stderr,
                     "warning: kappa_hat = %.6g exceeds %.6g; the Monte-Carlo calibration "
                     "assumes lighter weight imbalance\n",
                     d.kappa_hat, d.threshold);
    }
}

// Options shared by every test subcommand.
struct TestArgs {
    std::string data_path;
    WeightArgs weights;
    double alpha = 0.05;
    std::size_t B = 500;
    std::uint64_t seed = 0;
    int threads = 1;
    std::size_t mc_points = 2000;
    double kappa_threshold = 10.0;
    std::string out_path;
};

void add_test_options(CLI::App* cmd, TestArgs& a, bool with_mc_points) {
    cmd->add_option("--data", a.data_path, "Input CSV, one observation per row")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--weights", a.weights.scheme,
                    "Weight scheme: uniform (1/n) or linear (2i / n(n+1))")
        ->capture_default_str();
    cmd->add_option("--weights-file", a.weights.file,
                    "Single-column CSV of weights (overrides --weights)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--alpha", a.alpha, "Test level in (0,1)")->capture_default_str();
    cmd->add_option("--B", a.B, "Monte-Carlo replicates behind the critical values")
        ->capture_default_str();
    cmd->add_option("--seed", a.seed, "Master seed; all randomness derives from it")
        ->capture_default_str();
    cmd->add_option("--threads", a.threads, "Worker threads for the replicate loop")
        ->capture_default_str();
    if (with_mc_points) {
        cmd->add_option("--mc-points", a.mc_points,
                        "Integration draws for multivariate continuous nulls")
            ->capture_default_str();
    }
    cmd->add_option("--kappa-threshold", a.kappa_threshold,
                    "Warn when kappa_hat = n * sum(alpha_i^2) exceeds this")
        ->capture_default_str();
    cmd->add_option("--out", a.out_path, "Write the JSON result here instead of stdout");
}

TestOptions to_options(const TestArgs& a) {
    TestOptions opt;
    opt.B = a.B;
    opt.alpha = a.alpha;
    opt.seed = a.seed;
    opt.parallelism = a.threads;
    opt.mc_points = a.mc_points;
    opt.kappa_threshold = a.kappa_threshold;
    return opt;
}

int run_gof(const TestArgs& a, const std::string& null_path, const Conventions& conv) {
    const Dataset data = read_csv_dataset(a.data_path);
    const WeightScheme w = make_weights(a.weights, data.size(), "gof");
    const MixtureSpec mixture = null_from_json(null_path, data.size(), w, conv);
    const NullModel null = make_null_model(mixture);
    if (null.dim >= 2 && null.continuous) {
        std::fprintf(stderr,
                     "warning: with a continuous multivariate null the KS supremum is "
                     "evaluated on the observed grid and is a lower bound\n");
    }
    const TestResult r = gof_test(data, w, null, to_options(a));
    warn_diagnostics(r.diagnostics);
    emit(result_json("gof", r), a.out_path);
    return 0;
}

int run_gof_family(const TestArgs& a, const std::string& family_name, const std::string& mu_rule,
                   const std::string& mu_file) {
    const Dataset data = read_csv_dataset(a.data_path);
    const WeightScheme w = make_weights(a.weights, data.size(), "gof-family");
    if (family_name != "exp-shifted") {
        throw std::invalid_argument("unknown family '" + family_name +
                                    "' (available: exp-shifted)");
    }
    const ParametricFamily family =
        make_shifted_exponential_family(mu_sequence(mu_rule, mu_file, data.size()), w);
    const TestResult r = gof_family_test(data, w, family, to_options(a));
    warn_diagnostics(r.diagnostics);
    emit(result_json("gof-family", r), a.out_path);
    return 0;
}

int run_homogeneity(const TestArgs& a, const std::string& data2_path, const WeightArgs& w2args) {
    const Dataset x = read_csv_dataset(a.data_path);
    const Dataset v = read_csv_dataset(data2_path);
    const WeightScheme wx = make_weights(a.weights, x.size(), "homogeneity");
    const WeightScheme wv = make_weights(w2args, v.size(), "homogeneity");
    const TestResult r = homogeneity_test(x, wx, v, wv, to_options(a));
    warn_diagnostics(r.diagnostics);
    emit(result_json("homogeneity", r), a.out_path);
    return 0;
}

int run_symmetry(const TestArgs& a) {
    const Dataset u = read_csv_dataset(a.data_path);
    const WeightScheme w = make_weights(a.weights, u.size(), "symmetry");
    const TestResult r = symmetry_test(u, w, to_options(a));
    warn_diagnostics(r.diagnostics);
    emit(result_json("symmetry", r), a.out_path);
    return 0;
}

int run_independence(const TestArgs& a, int k, int l) {
    const Dataset x = read_csv_dataset(a.data_path);
    const WeightScheme w = make_weights(a.weights, x.size(), "independence");
    if (l == 0) l = x.dim - k;
    const TestResult r = independence_test(x, w, k, l, to_options(a));
    warn_diagnostics(r.diagnostics);
    emit(result_json("independence", r), a.out_path);
    return 0;
}

struct SimulateArgs {
    int table = 0;
    std::string scenario;
    std::size_t meta = 1000;
    std::size_t B = 500;
    std::vector<std::size_t> sizes = {25, 50};
    std::vector<double> alphas = {0.025, 0.05, 0.1};
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out_path;
    bool list = false;
};

int run_simulate(const SimulateArgs& a) {
    if (a.list) {
        json rows = json::array();
        for (const Scenario& s : catalogue()) {
            if (a.table != 0 && s.table != a.table) continue;
            rows.push_back(json{{"table", s.table}, {"id", s.id}, {"description", s.description}});
        }
        std::cout << rows.dump(2) << "\n";
        return 0;
    }
    if (a.table == 0) throw std::invalid_argument("simulate: --table is required (or --list)");

    HarnessConfig cfg;
    cfg.meta = a.meta;
    cfg.B = a.B;
    cfg.alphas = a.alphas;
    cfg.sample_sizes = a.sizes;
    cfg.seed = a.seed;
    cfg.parallelism = a.threads;

    std::vector<ScenarioResult> results;
    if (!a.scenario.empty()) {
        const Scenario& s = find_scenario(a.table, a.scenario);
        for (std::size_t n : cfg.sample_sizes) results.push_back(run_scenario(s, n, cfg));
    } else {
        results = run_table(a.table, cfg);
    }

    if (a.out_path.empty()) {
        write_rates_csv(std::cout, results);
    } else {
        std::ofstream out(a.out_path);
        if (!out) throw DataError("cannot open " + a.out_path + " for writing");
        write_rates_csv(out, results);
    }
    return 0;
}

struct ValidateArgs {
    std::string data_path;
    std::string null_path;
    WeightArgs weights;
    std::size_t n = 0;
    double kappa_threshold = 10.0;
};

int run_validate(const ValidateArgs& a, const Conventions& conv) {
    json report;

    std::size_t n = a.n;
    if (!a.data_path.empty()) {
        const Dataset data = read_csv_dataset(a.data_path);
        n = data.size();
        report["data"] = json{{"path", a.data_path}, {"rows", data.size()}, {"dim", data.dim}};
    }
    if (n == 0) {
        throw std::invalid_argument("validate: need --data or --n to size the weight scheme");
    }

    const WeightScheme w = make_weights(a.weights, n, "validate");
    const WeightDiagnostics d = weight_diagnostics(w, a.kappa_threshold);
    report["weights"] = diagnostics_json(d);
    report["weights"]["n"] = n;
    report["weights"]["scheme"] = a.weights.file.empty() ? a.weights.scheme : "file";

    if (!a.null_path.empty()) {
        const MixtureSpec mixture = null_from_json(a.null_path, n, w, conv);
        report["null"] = json{{"path", a.null_path},
                              {"components", mixture.components().size()},
                              {"dim", mixture.dim()}};
    }

    report["ok"] = true;
    std::cout << report.dump(2) << "\n";
    warn_diagnostics(d);
    return 0;
}

json error_json(const std::string& type, const std::string& message) {
    return json{{"error", {{"type", type}, {"message", message}}}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kolmogorov-Smirnov and Cramer-von-Mises tests for independent, "
                 "non-identically distributed data"};
    app.require_subcommand(1);

    Conventions conv;
    app.add_option("--normal-param", conv.normal_param,
                   "Second normal parameter in configs: variance or stddev")
        ->capture_default_str()
        ->check(CLI::IsMember({"variance", "stddev"}));
    app.add_option("--gamma-param", conv.gamma_param,
                   "Second gamma parameter in configs: rate or scale")
        ->capture_default_str()
        ->check(CLI::IsMember({"rate", "scale"}));

    TestArgs gof_args;
    std::string gof_null;
    CLI::App* gof = app.add_subcommand("gof", "Goodness-of-fit against a known null mixture");
    add_test_options(gof, gof_args, true);
    gof->add_option("--null", gof_null, "Null config JSON: components list or index rule")
        ->required()
        ->check(CLI::ExistingFile);

    TestArgs fam_args;
    std::string fam_name = "exp-shifted";
    std::string fam_mu_rule = "0";
    std::string fam_mu_file;
    CLI::App* fam = app.add_subcommand(
        "gof-family", "Goodness-of-fit against a parametric family, parameter estimated");
    add_test_options(fam, fam_args, false);
    fam->add_option("--family", fam_name, "Family name (exp-shifted: Exp(theta + mu_i))")
        ->capture_default_str();
    fam->add_option("--mu-rule", fam_mu_rule, "Known shifts as an expression of i")
        ->capture_default_str();
    fam->add_option("--mu-file", fam_mu_file, "Known shifts as a single-column CSV")
        ->check(CLI::ExistingFile);

    TestArgs hom_args;
    std::string hom_data2;
    WeightArgs hom_w2;
    CLI::App* hom = app.add_subcommand("homogeneity", "Equality of two samples' mixture laws");
    add_test_options(hom, hom_args, false);
    hom->add_option("--data2", hom_data2, "Second sample CSV")
        ->required()
        ->check(CLI::ExistingFile);
    hom->add_option("--weights2", hom_w2.scheme, "Second sample weight scheme")
        ->capture_default_str();
    hom->add_option("--weights2-file", hom_w2.file, "Second sample weights CSV")
        ->check(CLI::ExistingFile);

    TestArgs sym_args;
    CLI::App* sym = app.add_subcommand("symmetry", "Central symmetry about the origin");
    add_test_options(sym, sym_args, false);

    TestArgs ind_args;
    int ind_k = 1, ind_l = 0;
    CLI::App* ind = app.add_subcommand(
        "independence", "Independence of the first k and remaining l coordinates");
    add_test_options(ind, ind_args, false);
    ind->add_option("--k", ind_k, "Size of the first coordinate block")->capture_default_str();
    ind->add_option("--l", ind_l, "Size of the second block (default: dim - k)");

    SimulateArgs sim_args;
    CLI::App* sim = app.add_subcommand("simulate", "Rejection-rate tables by simulation");
    sim->add_option("--table", sim_args.table, "Table number: 1, 3, 5, 7, or 9");
    sim->add_option("--scenario", sim_args.scenario, "Single row, e.g. S2 or P1");
    sim->add_option("--meta", sim_args.meta, "Outer replications per cell")
        ->capture_default_str();
    sim->add_option("--B", sim_args.B, "Monte-Carlo replicates inside each test")
        ->capture_default_str();
    sim->add_option("--n", sim_args.sizes, "Sample sizes (repeatable)")
        ->delimiter(',')
        ->capture_default_str();
    sim->add_option("--alpha", sim_args.alphas, "Levels (repeatable)")
        ->delimiter(',')
        ->capture_default_str();
    sim->add_option("--seed", sim_args.seed, "Master seed")->capture_default_str();
    sim->add_option("--threads", sim_args.threads, "Threads over outer replications")
        ->capture_default_str();
    sim->add_option("--out", sim_args.out_path, "Write the CSV here instead of stdout");
    sim->add_flag("--list", sim_args.list, "List scenarios instead of running");

    ValidateArgs val_args;
    CLI::App* val = app.add_subcommand("validate", "Check inputs and print diagnostics");
    val->add_option("--data", val_args.data_path, "Input CSV to check")
        ->check(CLI::ExistingFile);
    val->add_option("--null", val_args.null_path, "Null config JSON to check")
        ->check(CLI::ExistingFile);
    val->add_option("--weights", val_args.weights.scheme, "Weight scheme: uniform or linear")
        ->capture_default_str();
    val->add_option("--weights-file", val_args.weights.file, "Weights CSV to check")
        ->check(CLI::ExistingFile);
    val->add_option("--n", val_args.n, "Observation count when no --data is given");
    val->add_option("--kappa-threshold", val_args.kappa_threshold,
                    "Warn when kappa_hat exceeds this")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::cerr << error_json("usage", e.what()).dump() << "\n";
        return 2;
    }

    try {
        if (gof->parsed()) return run_gof(gof_args, gof_null, conv);
        if (fam->parsed()) return run_gof_family(fam_args, fam_name, fam_mu_rule, fam_mu_file);
        if (hom->parsed()) return run_homogeneity(hom_args, hom_data2, hom_w2);
        if (sym->parsed()) return run_symmetry(sym_args);
        if (ind->parsed()) return run_independence(ind_args, ind_k, ind_l);
        if (sim->parsed()) return run_simulate(sim_args);
        if (val->parsed()) return run_validate(val_args, conv);
        std::cerr << error_json("usage", "no subcommand").dump() << "\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << error_json("data", e.what()).dump() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << error_json("usage", e.what()).dump() << "\n";
        return 2;
    } catch (const EstimationError& e) {
        std::cerr << error_json("numerical", e.what()).dump() << "\n";
        return 4;
    } catch (const McError& e) {
        std::cerr << error_json("numerical", e.what()).dump() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << error_json("numerical", e.what()).dump() << "\n";
        return 4;
    }
}
