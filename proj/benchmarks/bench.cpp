#include <benchmark/benchmark.h>

#include "mixtest/functional.hpp"
#include "mixtest/gof.hpp"
#include "mixtest/harness.hpp"

namespace {

using namespace mixtest;

Dataset random_dataset(int dim, std::size_t n, std::uint64_t seed) {
    RngStream rng(seed);
    std::vector<double> v(n * static_cast<std::size_t>(dim));
    for (double& x : v) x = rng.uniform01() * 4.0 - 2.0;
    return Dataset(dim, std::move(v));
}

MixtureSpec logistic_mixture(std::size_t n) {
    std::vector<DistributionSpec> comps;
    comps.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        comps.push_back(DistributionSpec(Logistic{1.0 / std::log(i + 1.0), 1.0}));
    }
    return MixtureSpec(std::move(comps), WeightScheme::uniform(n));
}

void BM_KsSup1d(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const WeightedEcdf f(random_dataset(1, n, 11), WeightScheme::uniform(n));
    const MixtureSpec mix = logistic_mixture(n);
    const Cdf1Fn g = [&mix](double x) { return cdf1(mix, x); };
    for (auto _ : state) {
        benchmark::DoNotOptimize(sup_diff1(f, g));
    }
}
BENCHMARK(BM_KsSup1d)->Arg(25)->Arg(50)->Arg(200);

void BM_CvmClosedForm1d(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const WeightedEcdf f(random_dataset(1, n, 12), WeightScheme::uniform(n));
    const MixtureSpec mix = logistic_mixture(n);
    const Cdf1Fn g = [&mix](double x) { return cdf1(mix, x); };
    for (auto _ : state) {
        benchmark::DoNotOptimize(cvm_integral1(f, g));
    }
}
BENCHMARK(BM_CvmClosedForm1d)->Arg(25)->Arg(50)->Arg(200);

void BM_MixtureCdf(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const MixtureSpec mix = logistic_mixture(n);
    double x = -2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cdf1(mix, x));
        x = x < 2.0 ? x + 0.01 : -2.0;
    }
}
BENCHMARK(BM_MixtureCdf)->Arg(25)->Arg(50)->Arg(200);

void BM_IndependenceStatistic(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const WeightedEcdf f(random_dataset(2, n, 13), WeightScheme::uniform(n));
    for (auto _ : state) {
        benchmark::DoNotOptimize(independence_statistics(f, 1, 1));
    }
}
BENCHMARK(BM_IndependenceStatistic)->Arg(25)->Arg(50)->Arg(200);

void BM_GofTestEndToEnd(benchmark::State& state) {
    const std::size_t n = 25;
    const Dataset data = random_dataset(1, n, 14);
    const WeightScheme w = WeightScheme::uniform(n);
    const NullModel null = make_null_model(logistic_mixture(n));
    TestOptions opt;
    opt.B = static_cast<std::size_t>(state.range(0));
    opt.seed = 21;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gof_test(data, w, null, opt));
    }
}
BENCHMARK(BM_GofTestEndToEnd)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
