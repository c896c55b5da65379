#include "mixtest/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mixtest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double checked(double u, const char* what) {
    if (std::isnan(u)) throw std::runtime_error(std::string(what) + " returned NaN");
    return u;
}

double cube(double v) { return v * v * v; }

}  // namespace

AtomList distinct_atoms(const Dataset& data, const WeightScheme& weights) {
    if (weights.size() != data.size()) {
        throw std::invalid_argument("distinct_atoms: weight count must match observation count");
    }
    const std::size_t n = data.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto ra = data.row(a), rb = data.row(b);
        if (std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end())) return true;
        if (std::lexicographical_compare(rb.begin(), rb.end(), ra.begin(), ra.end())) return false;
        return weights[a] < weights[b];
    });
    AtomList out;
    for (std::size_t pos = 0; pos < n; ++pos) {
        const std::size_t i = order[pos];
        const auto ri = data.row(i);
        if (!out.rep.empty()) {
            const auto rp = data.row(out.rep.back());
            if (std::equal(ri.begin(), ri.end(), rp.begin())) {
                out.mass.back() += weights[i];
                continue;
            }
        }
        out.rep.push_back(i);
        out.mass.push_back(weights[i]);
    }
    return out;
}

Dataset::Dataset(int dim_in, std::vector<double> values_in)
    : dim(dim_in), values(std::move(values_in)) {
    if (dim < 1) throw std::invalid_argument("Dataset: dim must be >= 1");
    if (values.empty()) throw std::invalid_argument("Dataset: need at least one observation");
    if (values.size() % static_cast<std::size_t>(dim) != 0) {
        throw std::invalid_argument("Dataset: value count must be a multiple of dim");
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("Dataset: observations must be finite");
    }
}

WeightedEcdf::WeightedEcdf(Dataset data, WeightScheme weights)
    : data_(std::move(data)), weights_(std::move(weights)) {
    if (weights_.size() != data_.size()) {
        throw std::invalid_argument("WeightedEcdf: weight count must match observation count");
    }
    if (data_.dim == 1) {
        const auto atoms = distinct_atoms(data_, weights_);
        atoms1_.reserve(atoms.rep.size());
        cum1_.reserve(atoms.rep.size());
        double running = 0.0;
        for (std::size_t a = 0; a < atoms.rep.size(); ++a) {
            running += atoms.mass[a];
            atoms1_.push_back(data_.value1(atoms.rep[a]));
            cum1_.push_back(running);
        }
    }
}

const std::vector<double>& WeightedEcdf::atoms1() const {
    if (data_.dim != 1) throw std::invalid_argument("atoms1: dim == 1 only");
    return atoms1_;
}

const std::vector<double>& WeightedEcdf::cum1() const {
    if (data_.dim != 1) throw std::invalid_argument("cum1: dim == 1 only");
    return cum1_;
}

double WeightedEcdf::eval1(double t) const {
    if (data_.dim != 1) throw std::invalid_argument("eval1: dim == 1 only");
    if (std::isnan(t)) throw std::invalid_argument("eval1: NaN argument");
    const auto it = std::upper_bound(atoms1_.begin(), atoms1_.end(), t);
    if (it == atoms1_.begin()) return 0.0;
    return cum1_[static_cast<std::size_t>(it - atoms1_.begin()) - 1];
}

double WeightedEcdf::eval(std::span<const double> t) const {
    if (static_cast<int>(t.size()) != data_.dim) {
        throw std::invalid_argument("eval: point dimension mismatch");
    }
    if (data_.dim == 1) return eval1(t[0]);
    for (double v : t) {
        if (std::isnan(v)) throw std::invalid_argument("eval: NaN coordinate");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) {
        const auto r = data_.row(i);
        bool leq = true;
        for (int j = 0; j < data_.dim; ++j) {
            if (!(r[j] <= t[j])) {
                leq = false;
                break;
            }
        }
        if (leq) acc += weights_[i];
    }
    return acc;
}

double sup_diff1(const WeightedEcdf& f, const Cdf1Fn& null_cdf) {
    if (f.dim() != 1) throw std::invalid_argument("sup_diff1: dim == 1 only");
    const auto& atoms = f.atoms1();
    const auto& cum = f.cum1();
    double best = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const double u = checked(null_cdf(atoms[i]), "null CDF");
        best = std::max(best, std::abs(cum[i] - u));
        best = std::max(best, std::abs(prev - u));
        prev = cum[i];
    }
    // Right tail: F stays at its total mass while G increases to 1.
    best = std::max(best, std::abs(prev - 1.0));
    return best;
}

double sup_diff_grid(const WeightedEcdf& f, const CdfFn& null_cdf) {
    const int m = f.dim();
    if (m < 2) throw std::invalid_argument("sup_diff_grid: dim >= 2 only");
    std::vector<std::vector<double>> axis(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        auto& vals = axis[static_cast<std::size_t>(j)];
        vals.reserve(f.size() + 1);
        for (std::size_t i = 0; i < f.size(); ++i) vals.push_back(f.data().row(i)[j]);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        vals.push_back(kInf);
    }
    std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
    std::vector<double> pt(static_cast<std::size_t>(m));
    double best = 0.0;
    for (;;) {
        for (int j = 0; j < m; ++j) {
            pt[static_cast<std::size_t>(j)] = axis[static_cast<std::size_t>(j)][idx[static_cast<std::size_t>(j)]];
        }
        const double u = checked(null_cdf(pt), "null CDF");
        best = std::max(best, std::abs(f.eval(pt) - u));
        int j = 0;
        while (j < m) {
            auto& ij = idx[static_cast<std::size_t>(j)];
            if (++ij < axis[static_cast<std::size_t>(j)].size()) break;
            ij = 0;
            ++j;
        }
        if (j == m) break;
    }
    return best;
}

double sup_diff_steps(const WeightedEcdf& f, const WeightedEcdf& g) {
    const int m = f.dim();
    if (g.dim() != m) throw std::invalid_argument("sup_diff_steps: dimension mismatch");
    if (m == 1) {
        double best = 0.0;
        for (const auto* e : {&f, &g}) {
            for (double t : e->atoms1()) {
                best = std::max(best, std::abs(f.eval1(t) - g.eval1(t)));
            }
        }
        return best;
    }
    std::vector<std::vector<double>> axis(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        auto& vals = axis[static_cast<std::size_t>(j)];
        vals.reserve(f.size() + g.size() + 1);
        for (std::size_t i = 0; i < f.size(); ++i) vals.push_back(f.data().row(i)[j]);
        for (std::size_t i = 0; i < g.size(); ++i) vals.push_back(g.data().row(i)[j]);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        vals.push_back(kInf);
    }
    std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
    std::vector<double> pt(static_cast<std::size_t>(m));
    double best = 0.0;
    for (;;) {
        for (int j = 0; j < m; ++j) {
            pt[static_cast<std::size_t>(j)] =
                axis[static_cast<std::size_t>(j)][idx[static_cast<std::size_t>(j)]];
        }
        best = std::max(best, std::abs(f.eval(pt) - g.eval(pt)));
        int j = 0;
        while (j < m) {
            auto& ij = idx[static_cast<std::size_t>(j)];
            if (++ij < axis[static_cast<std::size_t>(j)].size()) break;
            ij = 0;
            ++j;
        }
        if (j == m) break;
    }
    return best;
}

double cvm_integral1(const WeightedEcdf& f, const Cdf1Fn& null_cdf) {
    if (f.dim() != 1) throw std::invalid_argument("cvm_integral1: dim == 1 only");
    const auto& atoms = f.atoms1();
    const auto& cum = f.cum1();
    const std::size_t k = atoms.size();
    // Segment i carries constant F = W_i while G runs from u_i to u_{i+1};
    // in u = G(t) coordinates each segment integrates to a difference of cubes.
    std::vector<double> u(k + 2);
    u[0] = 0.0;
    for (std::size_t i = 0; i < k; ++i) u[i + 1] = checked(null_cdf(atoms[i]), "null CDF");
    u[k + 1] = 1.0;
    double acc = 0.0;
    double w = 0.0;
    for (std::size_t i = 0; i <= k; ++i) {
        acc += cube(w - u[i]) - cube(w - u[i + 1]);
        if (i < k) w = cum[i];
    }
    return acc / 3.0;
}

double cvm_integral_atoms(const WeightedEcdf& f, const WeightedEcdf& g) {
    if (f.dim() != g.dim()) throw std::invalid_argument("cvm_integral_atoms: dimension mismatch");
    const auto atoms = distinct_atoms(g.data(), g.weights());
    double acc = 0.0;
    for (std::size_t a = 0; a < atoms.rep.size(); ++a) {
        const auto y = g.data().row(atoms.rep[a]);
        const double d = f.eval(y) - g.eval(y);
        acc += atoms.mass[a] * d * d;
    }
    return acc;
}

double cvm_integral_mc(const WeightedEcdf& f, const CdfFn& null_cdf, const DrawFn& draw,
                       std::size_t k, RngStream& rng) {
    if (k == 0) throw std::invalid_argument("cvm_integral_mc: k must be >= 1");
    std::vector<double> z(static_cast<std::size_t>(f.dim()));
    double acc = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        draw(rng, z);
        const double d = f.eval(z) - checked(null_cdf(z), "null CDF");
        acc += d * d;
    }
    return acc / static_cast<double>(k);
}

}  // namespace mixtest
