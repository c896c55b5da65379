#include "mixtest/weights.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "mixtest/rng.hpp"

using namespace mixtest;

TEST(WeightScheme, UniformValues) {
    const WeightScheme w = WeightScheme::uniform(4);
    EXPECT_EQ(w.kind(), WeightKind::uniform);
    ASSERT_EQ(w.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(w[i], 0.25);
}

TEST(WeightScheme, LinearValues) {
    // alpha_i = 2i / (n(n+1)): for n = 3 that is 1/6, 1/3, 1/2.
    const WeightScheme w = WeightScheme::linear(3);
    EXPECT_EQ(w.kind(), WeightKind::linear);
    ASSERT_EQ(w.size(), 3u);
    EXPECT_NEAR(w[0], 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(w[1], 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(w[2], 1.0 / 2.0, 1e-15);
}

TEST(WeightScheme, FromValuesValidates) {
    EXPECT_NO_THROW(WeightScheme::from_values({0.5, 0.5}));
    EXPECT_NO_THROW(WeightScheme::from_values({0.0, 1.0}));  // zero weights allowed
    EXPECT_THROW(WeightScheme::from_values({}), std::invalid_argument);
    EXPECT_THROW(WeightScheme::from_values({0.6, 0.6}), std::invalid_argument);
    EXPECT_THROW(WeightScheme::from_values({-0.1, 1.1}), std::invalid_argument);
}

TEST(WeightScheme, CumulativeEndsAtOne) {
    const WeightScheme w = WeightScheme::from_values({0.2, 0.3, 0.5});
    const std::vector<double>& c = w.cumulative();
    ASSERT_EQ(c.size(), 3u);
    EXPECT_NEAR(c[0], 0.2, 1e-15);
    EXPECT_NEAR(c[1], 0.5, 1e-15);
    EXPECT_NEAR(c.back(), 1.0, 1e-12);
    for (std::size_t i = 1; i < c.size(); ++i) EXPECT_GE(c[i], c[i - 1]);
}

TEST(WeightDiagnostics, UniformKappaIsExactlyOne) {
    for (std::size_t n : {1u, 3u, 7u, 100u}) {
        const WeightDiagnostics d = weight_diagnostics(WeightScheme::uniform(n));
        EXPECT_EQ(d.kappa_hat, 1.0) << "n=" << n;  // bitwise, by construction
        EXPECT_NEAR(d.root_n_max, std::sqrt(static_cast<double>(n)) / n, 1e-15);
        EXPECT_FALSE(d.exceeds_threshold);
    }
}

TEST(WeightDiagnostics, LinearN3) {
    // kappa = n * sum alpha^2 = 3 * (1/36 + 1/9 + 1/4) = 7/6.
    const WeightDiagnostics d = weight_diagnostics(WeightScheme::linear(3));
    EXPECT_NEAR(d.kappa_hat, 7.0 / 6.0, 1e-12);
    EXPECT_NEAR(d.root_n_max, std::sqrt(3.0) * 0.5, 1e-12);
    EXPECT_FALSE(d.exceeds_threshold);
}

TEST(WeightDiagnostics, SpikeExceedsThreshold) {
    // One observation holding 99% of the mass across n = 100.
    std::vector<double> v(100, 0.01 / 99.0);
    v[0] = 0.99;
    const WeightDiagnostics d = weight_diagnostics(WeightScheme::from_values(v));
    EXPECT_GT(d.kappa_hat, 10.0);
    EXPECT_TRUE(d.exceeds_threshold);
    EXPECT_FALSE(weight_diagnostics(WeightScheme::from_values(v), 200.0).exceeds_threshold);
}

TEST(DrawIndex, RespectsWeights) {
    const WeightScheme w = WeightScheme::from_values({0.1, 0.0, 0.9});
    RngStream rng(5);
    std::vector<int> counts(3, 0);
    for (int k = 0; k < 20000; ++k) ++counts[draw_index(w, rng)];
    EXPECT_EQ(counts[1], 0);  // zero-weight index is never drawn
    EXPECT_NEAR(counts[0] / 20000.0, 0.1, 0.01);
    EXPECT_NEAR(counts[2] / 20000.0, 0.9, 0.01);
}

TEST(DrawIndex, DeterministicGivenSeed) {
    const WeightScheme w = WeightScheme::uniform(10);
    RngStream a(77), b(77);
    for (int k = 0; k < 100; ++k) EXPECT_EQ(draw_index(w, a), draw_index(w, b));
}
