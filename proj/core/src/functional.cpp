#include "mixtest/functional.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mixtest {

namespace {

// Sum of m(y) (F(y) - G(y))^2 over the atoms of the pooled measure
// (F + G) / 2, exact because both CDFs are steps. The pooled atom list is
// built in canonical order, so the accumulation order (and hence the bits of
// the result) does not depend on which sample is passed first.
double half_pooled_cvm(const WeightedEcdf& f, const WeightedEcdf& g) {
    const int m = f.dim();
    std::vector<double> rows;
    rows.reserve((f.size() + g.size()) * static_cast<std::size_t>(m));
    rows.insert(rows.end(), f.data().values.begin(), f.data().values.end());
    rows.insert(rows.end(), g.data().values.begin(), g.data().values.end());
    std::vector<double> w;
    w.reserve(f.size() + g.size());
    for (std::size_t i = 0; i < f.size(); ++i) w.push_back(0.5 * f.weights()[i]);
    for (std::size_t i = 0; i < g.size(); ++i) w.push_back(0.5 * g.weights()[i]);

    const Dataset pooled(m, std::move(rows));
    const auto atoms = distinct_atoms(pooled, WeightScheme::from_values(std::move(w)));
    double acc = 0.0;
    for (std::size_t a = 0; a < atoms.rep.size(); ++a) {
        const auto y = pooled.row(atoms.rep[a]);
        const double d = f.eval(y) - g.eval(y);
        acc += atoms.mass[a] * (d * d);
    }
    return acc;
}

WeightDiagnostics merge_diagnostics(const WeightDiagnostics& a, const WeightDiagnostics& b) {
    WeightDiagnostics d;
    d.root_n_max = std::max(a.root_n_max, b.root_n_max);
    d.kappa_hat = std::max(a.kappa_hat, b.kappa_hat);
    d.threshold = a.threshold;
    d.exceeds_threshold = a.exceeds_threshold || b.exceeds_threshold;
    return d;
}

template <class T>
class Fenwick {
  public:
    explicit Fenwick(std::size_t n) : tree_(n + 1, T{}) {}
    void add(std::size_t i, T v) {
        for (std::size_t j = i + 1; j < tree_.size(); j += j & (~j + 1)) tree_[j] += v;
    }
    T prefix(std::size_t i) const {  // sum of positions [0, i]
        T s{};
        for (std::size_t j = i + 1; j > 0; j -= j & (~j + 1)) s += tree_[j];
        return s;
    }

  private:
    std::vector<T> tree_;
};

// Distinct sorted values of one coordinate with group masses, cumulative
// masses, and each observation's group rank. Uniform weights use exact counts
// so the derived doubles depend only on the counts, not on summation order.
struct ColumnAtoms {
    std::vector<double> vals, mass, cum;
    std::vector<std::size_t> rank;
};

ColumnAtoms column_atoms(const WeightedEcdf& f, int j) {
    const std::size_t n = f.size();
    const auto& w = f.weights();
    const bool uniform = w.kind() == WeightKind::uniform;
    const double w0 = w[0];

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double va = f.data().row(a)[j], vb = f.data().row(b)[j];
        if (va != vb) return va < vb;
        return w[a] < w[b];
    });

    ColumnAtoms c;
    c.rank.resize(n);
    std::vector<long long> counts;
    for (std::size_t pos = 0; pos < n; ++pos) {
        const std::size_t i = order[pos];
        const double v = f.data().row(i)[j];
        if (c.vals.empty() || c.vals.back() != v) {
            c.vals.push_back(v);
            c.mass.push_back(w[i]);
            counts.push_back(1);
        } else {
            c.mass.back() += w[i];
            ++counts.back();
        }
        c.rank[i] = c.vals.size() - 1;
    }
    c.cum.resize(c.vals.size());
    if (uniform) {
        long long running = 0;
        for (std::size_t r = 0; r < c.vals.size(); ++r) {
            c.mass[r] = static_cast<double>(counts[r]) * w0;
            running += counts[r];
            c.cum[r] = static_cast<double>(running) * w0;
        }
    } else {
        double running = 0.0;
        for (std::size_t r = 0; r < c.vals.size(); ++r) {
            running += c.mass[r];
            c.cum[r] = running;
        }
    }
    return c;
}

StatPair independence_fast(const WeightedEcdf& f) {
    const std::size_t n = f.size();
    const auto& w = f.weights();
    const bool uniform = w.kind() == WeightKind::uniform;
    const double w0 = w[0];

    const ColumnAtoms a = column_atoms(f, 0);
    const ColumnAtoms b = column_atoms(f, 1);
    const std::size_t ka = a.vals.size(), kb = b.vals.size();

    // Observations grouped into (a-rank, b-rank) cells in canonical order.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t s, std::size_t t) {
        if (a.rank[s] != a.rank[t]) return a.rank[s] < a.rank[t];
        if (b.rank[s] != b.rank[t]) return b.rank[s] < b.rank[t];
        return w[s] < w[t];
    });
    std::vector<std::size_t> cell_a, cell_b;
    std::vector<double> cell_w;
    std::vector<long long> cell_c;
    for (std::size_t pos = 0; pos < n; ++pos) {
        const std::size_t i = order[pos];
        if (!cell_a.empty() && cell_a.back() == a.rank[i] && cell_b.back() == b.rank[i]) {
            cell_w.back() += w[i];
            ++cell_c.back();
        } else {
            cell_a.push_back(a.rank[i]);
            cell_b.push_back(b.rank[i]);
            cell_w.push_back(w[i]);
            cell_c.push_back(1);
        }
    }

    // Sweep a-ranks in order, inserting each rank's cells into a tree indexed
    // by b-rank, so every joint CDF value is one prefix query.
    Fenwick<long long> fc(kb);
    Fenwick<double> fw(kb);
    std::size_t next_cell = 0;
    double ks = 0.0;
    std::vector<double> terms;
    terms.reserve(ka * kb);
    for (std::size_t ra = 0; ra < ka; ++ra) {
        while (next_cell < cell_a.size() && cell_a[next_cell] == ra) {
            if (uniform) {
                fc.add(cell_b[next_cell], cell_c[next_cell]);
            } else {
                fw.add(cell_b[next_cell], cell_w[next_cell]);
            }
            ++next_cell;
        }
        const double fa = a.cum[ra];
        for (std::size_t rb = 0; rb < kb; ++rb) {
            const double joint = uniform ? static_cast<double>(fc.prefix(rb)) * w0
                                         : fw.prefix(rb);
            const double d = joint - fa * b.cum[rb];
            ks = std::max(ks, std::abs(d));
            terms.push_back((a.mass[ra] * b.mass[rb]) * (d * d));
        }
    }
    std::sort(terms.begin(), terms.end());
    double cvm = 0.0;
    for (double t : terms) cvm += t;

    const double dn = static_cast<double>(n);
    return StatPair{std::sqrt(dn) * ks, dn * cvm};
}

StatPair independence_general(const WeightedEcdf& f, int k, int l) {
    const std::size_t n = f.size();
    if (n > 2000) {
        throw std::invalid_argument(
            "independence_statistics: block splits other than 1+1 require n <= 2000");
    }
    const auto& w = f.weights();
    std::vector<double> avals, bvals;
    avals.reserve(n * static_cast<std::size_t>(k));
    bvals.reserve(n * static_cast<std::size_t>(l));
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = f.data().row(i);
        avals.insert(avals.end(), row.begin(), row.begin() + k);
        bvals.insert(bvals.end(), row.begin() + k, row.end());
    }
    const Dataset adata(k, std::move(avals));
    const Dataset bdata(l, std::move(bvals));
    const auto aat = distinct_atoms(adata, w);
    const auto bat = distinct_atoms(bdata, w);

    auto leq = [](std::span<const double> x, std::span<const double> y) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (!(x[j] <= y[j])) return false;
        }
        return true;
    };
    auto marginal = [&](const Dataset& blocks, std::span<const double> at) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (leq(blocks.row(i), at)) acc += w[i];
        }
        return acc;
    };

    std::vector<double> fa(aat.rep.size()), fb(bat.rep.size());
    for (std::size_t r = 0; r < aat.rep.size(); ++r) fa[r] = marginal(adata, adata.row(aat.rep[r]));
    for (std::size_t s = 0; s < bat.rep.size(); ++s) fb[s] = marginal(bdata, bdata.row(bat.rep[s]));

    double ks = 0.0;
    std::vector<double> terms;
    terms.reserve(aat.rep.size() * bat.rep.size());
    for (std::size_t r = 0; r < aat.rep.size(); ++r) {
        const auto arow = adata.row(aat.rep[r]);
        for (std::size_t s = 0; s < bat.rep.size(); ++s) {
            const auto brow = bdata.row(bat.rep[s]);
            double joint = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (leq(adata.row(i), arow) && leq(bdata.row(i), brow)) joint += w[i];
            }
            const double d = joint - fa[r] * fb[s];
            ks = std::max(ks, std::abs(d));
            terms.push_back((aat.mass[r] * bat.mass[s]) * (d * d));
        }
    }
    std::sort(terms.begin(), terms.end());
    double cvm = 0.0;
    for (double t : terms) cvm += t;

    const double dn = static_cast<double>(n);
    return StatPair{std::sqrt(dn) * ks, dn * cvm};
}

}  // namespace

StatPair homogeneity_statistics(const WeightedEcdf& f, const WeightedEcdf& g) {
    if (f.dim() != g.dim()) {
        throw std::invalid_argument("homogeneity_statistics: dimension mismatch");
    }
    const double nr = static_cast<double>(f.size()) * static_cast<double>(g.size());
    const double sup = sup_diff_steps(f, g);
    const double cvm = half_pooled_cvm(f, g);
    return StatPair{std::pow(nr, 0.25) * sup, std::sqrt(nr) * cvm};
}

StatPair symmetry_statistics(const WeightedEcdf& f) {
    std::vector<double> neg(f.data().values.size());
    for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -f.data().values[i];
    const WeightedEcdf mirrored(Dataset(f.dim(), std::move(neg)), f.weights());
    const double dn = static_cast<double>(f.size());
    const double sup = sup_diff_steps(f, mirrored);
    const double cvm = half_pooled_cvm(f, mirrored);
    return StatPair{std::sqrt(dn) * sup, dn * cvm};
}

StatPair independence_statistics(const WeightedEcdf& f, int k, int l) {
    if (k < 1 || l < 1 || k + l != f.dim()) {
        throw std::invalid_argument(
            "independence_statistics: block sizes must be >= 1 and sum to the dimension");
    }
    if (k == 1 && l == 1) return independence_fast(f);
    return independence_general(f, k, l);
}

std::pair<Dataset, Dataset> resample_homogeneity(const WeightedEcdf& f, const WeightedEcdf& g,
                                                 RngStream& rng) {
    if (f.dim() != g.dim()) {
        throw std::invalid_argument("resample_homogeneity: dimension mismatch");
    }
    const int m = f.dim();
    auto draw_block = [&](std::size_t count) {
        std::vector<double> values;
        values.reserve(count * static_cast<std::size_t>(m));
        for (std::size_t i = 0; i < count; ++i) {
            const bool first = rng.uniform01() < 0.5;
            const auto& src = first ? f : g;
            const auto row = src.data().row(draw_index(src.weights(), rng));
            values.insert(values.end(), row.begin(), row.end());
        }
        return Dataset(m, std::move(values));
    };
    Dataset xs = draw_block(f.size());
    Dataset vs = draw_block(g.size());
    return {std::move(xs), std::move(vs)};
}

Dataset resample_symmetry(const WeightedEcdf& f, RngStream& rng) {
    const int m = f.dim();
    std::vector<double> values;
    values.reserve(f.size() * static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto row = f.data().row(draw_index(f.weights(), rng));
        const double sign = rng.uniform01() < 0.5 ? 1.0 : -1.0;
        for (double v : row) values.push_back(sign * v);
    }
    return Dataset(m, std::move(values));
}

Dataset resample_independence(const WeightedEcdf& f, int k, int l, RngStream& rng) {
    if (k < 1 || l < 1 || k + l != f.dim()) {
        throw std::invalid_argument(
            "resample_independence: block sizes must be >= 1 and sum to the dimension");
    }
    std::vector<double> values;
    values.reserve(f.size() * static_cast<std::size_t>(f.dim()));
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto arow = f.data().row(draw_index(f.weights(), rng));
        const auto brow = f.data().row(draw_index(f.weights(), rng));
        values.insert(values.end(), arow.begin(), arow.begin() + k);
        values.insert(values.end(), brow.begin() + k, brow.end());
    }
    return Dataset(f.dim(), std::move(values));
}

RunOutput homogeneity_run(const Dataset& x, const WeightScheme& alpha, const Dataset& v,
                          const WeightScheme& beta, const TestOptions& options) {
    validate_options(options);
    if (x.dim != v.dim) throw std::invalid_argument("homogeneity_run: dimension mismatch");

    RunOutput out;
    const WeightedEcdf f(x, alpha), g(v, beta);
    out.observed = homogeneity_statistics(f, g);

    const std::uint64_t mc_root = substream_seed(options.seed, kRoleMc);
    out.replicates = run_replicates(
        options.B, mc_root, options.parallelism, [&](std::size_t, std::uint64_t rep_seed) {
            RngStream data_rng(substream_seed(rep_seed, kRoleData));
            auto [xb, vb] = resample_homogeneity(f, g, data_rng);
            return homogeneity_statistics(WeightedEcdf(std::move(xb), alpha),
                                          WeightedEcdf(std::move(vb), beta));
        });
    return out;
}

RunOutput symmetry_run(const Dataset& u, const WeightScheme& alpha, const TestOptions& options) {
    validate_options(options);

    RunOutput out;
    const WeightedEcdf f(u, alpha);
    out.observed = symmetry_statistics(f);

    const std::uint64_t mc_root = substream_seed(options.seed, kRoleMc);
    out.replicates = run_replicates(
        options.B, mc_root, options.parallelism, [&](std::size_t, std::uint64_t rep_seed) {
            RngStream data_rng(substream_seed(rep_seed, kRoleData));
            return symmetry_statistics(WeightedEcdf(resample_symmetry(f, data_rng), alpha));
        });
    return out;
}

RunOutput independence_run(const Dataset& x, const WeightScheme& alpha, int k, int l,
                           const TestOptions& options) {
    validate_options(options);
    if (k < 1 || l < 1 || k + l != x.dim) {
        throw std::invalid_argument(
            "independence_run: block sizes must be >= 1 and sum to the dimension");
    }

    RunOutput out;
    const WeightedEcdf f(x, alpha);
    out.observed = independence_statistics(f, k, l);

    const std::uint64_t mc_root = substream_seed(options.seed, kRoleMc);
    out.replicates = run_replicates(
        options.B, mc_root, options.parallelism, [&](std::size_t, std::uint64_t rep_seed) {
            RngStream data_rng(substream_seed(rep_seed, kRoleData));
            return independence_statistics(
                WeightedEcdf(resample_independence(f, k, l, data_rng), alpha), k, l);
        });
    return out;
}

TestResult homogeneity_test(const Dataset& x, const WeightScheme& alpha, const Dataset& v,
                            const WeightScheme& beta, const TestOptions& options) {
    RunOutput run = homogeneity_run(x, alpha, v, beta, options);

    TestResult r;
    r.n = x.size();
    r.n2 = v.size();
    r.alpha = options.alpha;
    r.B = options.B;
    r.seed = options.seed;
    r.diagnostics = merge_diagnostics(weight_diagnostics(alpha, options.kappa_threshold),
                                      weight_diagnostics(beta, options.kappa_threshold));
    r.statistic_ks = run.observed.ks;
    r.statistic_cvm = run.observed.cvm;
    finalize_from_replicates(r, run.replicates, options.alpha);
    return r;
}

TestResult symmetry_test(const Dataset& u, const WeightScheme& alpha,
                         const TestOptions& options) {
    RunOutput run = symmetry_run(u, alpha, options);

    TestResult r;
    r.n = u.size();
    r.alpha = options.alpha;
    r.B = options.B;
    r.seed = options.seed;
    r.diagnostics = weight_diagnostics(alpha, options.kappa_threshold);
    r.statistic_ks = run.observed.ks;
    r.statistic_cvm = run.observed.cvm;
    finalize_from_replicates(r, run.replicates, options.alpha);
    return r;
}

TestResult independence_test(const Dataset& x, const WeightScheme& alpha, int k, int l,
                             const TestOptions& options) {
    RunOutput run = independence_run(x, alpha, k, l, options);

    TestResult r;
    r.n = x.size();
    r.alpha = options.alpha;
    r.B = options.B;
    r.seed = options.seed;
    r.diagnostics = weight_diagnostics(alpha, options.kappa_threshold);
    r.statistic_ks = run.observed.ks;
    r.statistic_cvm = run.observed.cvm;
    finalize_from_replicates(r, run.replicates, options.alpha);
    return r;
}

}  // namespace mixtest
