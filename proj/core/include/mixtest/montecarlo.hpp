#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "mixtest/rng.hpp"

namespace mixtest {

// One replicate's pair of test statistics.
struct StatPair {
    double ks = 0.0;
    double cvm = 0.0;
};

// Thrown when one or more replicates fail permanently. Collects every failing
// replicate index with its message, sorted by index.
class McError : public std::runtime_error {
  public:
    explicit McError(std::vector<std::pair<std::size_t, std::string>> failures);
    const std::vector<std::pair<std::size_t, std::string>>& failures() const {
        return failures_;
    }

  private:
    std::vector<std::pair<std::size_t, std::string>> failures_;
};

// Evaluates fn(index, substream_seed(run_seed, index)) for index in
// [0, count) across `parallelism` threads. Each replicate is a pure function
// of its own derived seed, so the result vector is bit-identical for every
// parallelism value; threads only decide who computes which index.
template <class R>
std::vector<R> run_indexed(std::size_t count, std::uint64_t run_seed, int parallelism,
                           const std::function<R(std::size_t, std::uint64_t)>& fn) {
    if (parallelism < 1) throw std::invalid_argument("run_indexed: parallelism must be >= 1");
    std::vector<R> out(count);
    if (count == 0) return out;

    const std::size_t nthreads =
        std::min<std::size_t>(static_cast<std::size_t>(parallelism), count);
    std::vector<std::vector<std::pair<std::size_t, std::string>>> errors(nthreads);

    auto run_range = [&](std::size_t t, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            try {
                out[i] = fn(i, substream_seed(run_seed, i));
            } catch (const std::exception& e) {
                errors[t].emplace_back(i, e.what());
            }
        }
    };

    if (nthreads == 1) {
        run_range(0, 0, count);
    } else {
        const std::size_t base = count / nthreads, rem = count % nthreads;
        std::vector<std::thread> threads;
        threads.reserve(nthreads);
        std::size_t lo = 0;
        for (std::size_t t = 0; t < nthreads; ++t) {
            const std::size_t hi = lo + base + (t < rem ? 1 : 0);
            threads.emplace_back(run_range, t, lo, hi);
            lo = hi;
        }
        for (auto& th : threads) th.join();
    }

    std::vector<std::pair<std::size_t, std::string>> merged;
    for (auto& e : errors) {
        merged.insert(merged.end(), e.begin(), e.end());
    }
    if (!merged.empty()) {
        std::sort(merged.begin(), merged.end());
        throw McError(std::move(merged));
    }
    return out;
}

inline std::vector<StatPair> run_replicates(
    std::size_t count, std::uint64_t run_seed, int parallelism,
    const std::function<StatPair(std::size_t, std::uint64_t)>& fn) {
    return run_indexed<StatPair>(count, run_seed, parallelism, fn);
}

// Critical value at level alpha from B null statistics: the k-th order
// statistic with k = ceil(B * (1 - alpha)), clamped to [1, B]. A small slack
// guards the ceil against cases like 500 * 0.95 landing just above 475.
double critical_value(const std::vector<double>& stats, double alpha);

// Monte Carlo p-value (1 + #{stat_b >= observed}) / (B + 1).
double p_value(const std::vector<double>& stats, double observed);

}  // namespace mixtest
