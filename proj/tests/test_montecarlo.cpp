#include "mixtest/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "mixtest/rng.hpp"

using namespace mixtest;

namespace {

std::vector<double> one_to(std::size_t b) {
    std::vector<double> v(b);
    std::iota(v.begin(), v.end(), 1.0);
    return v;
}

}  // namespace

TEST(CriticalValue, OrderStatisticSelection) {
    const std::vector<double> stats = one_to(100);
    // k = ceil(100 * 0.95) = 95.
    EXPECT_EQ(critical_value(stats, 0.05), 95.0);
    EXPECT_EQ(critical_value(stats, 0.025), 98.0);
    EXPECT_EQ(critical_value(stats, 0.10), 90.0);
    // Unsorted input gives the same answer.
    std::vector<double> shuffled = {3.0, 1.0, 2.0, 5.0, 4.0};
    EXPECT_EQ(critical_value(shuffled, 0.2), 4.0);
}

TEST(CriticalValue, CeilGuardAgainstFloatingPointDrift) {
    // 500 * (1 - 0.05) = 475 must select the 475th order statistic even if
    // the product lands a hair above 475 in floating point.
    const std::vector<double> stats = one_to(500);
    EXPECT_EQ(critical_value(stats, 0.05), 475.0);
    EXPECT_EQ(critical_value(stats, 0.025), 488.0);  // ceil(487.5)
    EXPECT_EQ(critical_value(stats, 0.1), 450.0);
}

TEST(CriticalValue, ClampsToValidRange) {
    const std::vector<double> one = {7.0};
    EXPECT_EQ(critical_value(one, 0.05), 7.0);
    EXPECT_EQ(critical_value(one, 0.999), 7.0);  // k clamps up to 1
    const std::vector<double> two = {1.0, 2.0};
    EXPECT_EQ(critical_value(two, 0.999), 1.0);
}

TEST(CriticalValue, Validation) {
    EXPECT_THROW(critical_value({}, 0.05), std::invalid_argument);
    EXPECT_THROW(critical_value({1.0}, 0.0), std::invalid_argument);
    EXPECT_THROW(critical_value({1.0}, 1.0), std::invalid_argument);
    EXPECT_THROW(critical_value({1.0, std::numeric_limits<double>::quiet_NaN()}, 0.05),
                 std::runtime_error);
}

TEST(PValue, AddOneSmoothedCount) {
    const std::vector<double> stats = one_to(99);
    // #{stats >= 90} = 10, so p = (1 + 10) / 100.
    EXPECT_DOUBLE_EQ(p_value(stats, 90.0), 0.11);
    EXPECT_DOUBLE_EQ(p_value(stats, 1000.0), 0.01);  // never below 1/(B+1)
    EXPECT_DOUBLE_EQ(p_value(stats, -1.0), 1.0);
    // Ties count: statistic equal to a replicate is "at least as extreme".
    EXPECT_DOUBLE_EQ(p_value(stats, 99.0), 0.02);
}

TEST(PValue, Validation) {
    EXPECT_THROW(p_value({}, 1.0), std::invalid_argument);
    EXPECT_THROW(p_value({1.0}, std::numeric_limits<double>::quiet_NaN()), std::runtime_error);
    EXPECT_THROW(p_value({std::numeric_limits<double>::quiet_NaN()}, 1.0), std::runtime_error);
}

TEST(RunIndexed, IdenticalAcrossParallelism) {
    // Each replicate value depends only on (index, derived seed), so the
    // output vector must be bitwise identical however work is split.
    const std::function<double(std::size_t, std::uint64_t)> fn =
        [](std::size_t i, std::uint64_t seed) {
            RngStream rng(seed);
            double acc = static_cast<double>(i);
            for (int k = 0; k < 10; ++k) acc += rng.uniform01();
            return acc;
        };
    const std::vector<double> p1 = run_indexed<double>(1000, 42, 1, fn);
    const std::vector<double> p2 = run_indexed<double>(1000, 42, 2, fn);
    const std::vector<double> p8 = run_indexed<double>(1000, 42, 8, fn);
    EXPECT_EQ(p1, p2);
    EXPECT_EQ(p1, p8);

    // Different run seeds give different streams.
    const std::vector<double> other = run_indexed<double>(1000, 43, 1, fn);
    EXPECT_NE(p1, other);
}

TEST(RunIndexed, SeedsFollowSubstreamDerivation) {
    const std::function<std::uint64_t(std::size_t, std::uint64_t)> fn =
        [](std::size_t, std::uint64_t seed) { return seed; };
    const std::vector<std::uint64_t> seeds = run_indexed<std::uint64_t>(4, 42, 1, fn);
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        EXPECT_EQ(seeds[i], substream_seed(42, i));
    }
}

TEST(RunIndexed, CollectsFailuresSortedByIndex) {
    const std::function<int(std::size_t, std::uint64_t)> fn =
        [](std::size_t i, std::uint64_t) -> int {
        if (i % 3 == 0) throw std::runtime_error("boom " + std::to_string(i));
        return static_cast<int>(i);
    };
    try {
        run_indexed<int>(10, 0, 4, fn);
        FAIL() << "expected McError";
    } catch (const McError& e) {
        const auto& f = e.failures();
        ASSERT_EQ(f.size(), 4u);  // indices 0, 3, 6, 9
        EXPECT_EQ(f[0].first, 0u);
        EXPECT_EQ(f[1].first, 3u);
        EXPECT_EQ(f[2].first, 6u);
        EXPECT_EQ(f[3].first, 9u);
        EXPECT_EQ(f[1].second, "boom 3");
        EXPECT_NE(std::string(e.what()).find("4 replicate(s) failed"), std::string::npos);
    }
}

TEST(RunIndexed, EdgeCases) {
    const std::function<int(std::size_t, std::uint64_t)> fn =
        [](std::size_t i, std::uint64_t) { return static_cast<int>(i); };
    EXPECT_TRUE(run_indexed<int>(0, 0, 4, fn).empty());
    EXPECT_THROW(run_indexed<int>(5, 0, 0, fn), std::invalid_argument);
    // More threads than work items is fine.
    const std::vector<int> out = run_indexed<int>(3, 0, 64, fn);
    EXPECT_EQ(out, (std::vector<int>{0, 1, 2}));
}

TEST(RunReplicates, StatPairVariant) {
    const std::function<StatPair(std::size_t, std::uint64_t)> fn =
        [](std::size_t i, std::uint64_t seed) {
            RngStream rng(seed);
            return StatPair{static_cast<double>(i) + rng.uniform01(), rng.uniform01()};
        };
    const std::vector<StatPair> a = run_replicates(50, 7, 1, fn);
    const std::vector<StatPair> b = run_replicates(50, 7, 3, fn);
    ASSERT_EQ(a.size(), 50u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].ks, b[i].ks);
        EXPECT_EQ(a[i].cvm, b[i].cvm);
    }
}
