#include "povsim/af_classifier.hpp"
#include "povsim/error.hpp"

#include "../support/oracles.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

namespace povsim {
namespace {

using Bits = std::vector<std::uint8_t>;
const std::vector<double> kUnit(10, 1.0);

TEST(DeprivationCount, Empty) { EXPECT_EQ(deprivation_count(Bits(10, 0), kUnit), 0.0); }

TEST(DeprivationCount, ReferenceDisagreementRows) {
  EXPECT_EQ(deprivation_count(Bits{1, 1, 0, 0, 0, 0, 1, 0, 1, 0}, kUnit), 4.0);
  EXPECT_EQ(deprivation_count(Bits{1, 1, 1, 1, 1, 0, 1, 1, 1, 0}, kUnit), 8.0);
}

TEST(DeprivationCount, Weighted) {
  const std::vector<double> w{0.5, 2.0, 1.0};
  EXPECT_DOUBLE_EQ(deprivation_count(Bits{1, 1, 0}, w), 2.5);
}

TEST(DeprivationCount, LengthMismatchIsConfigError) {
  EXPECT_THROW(deprivation_count(Bits(9, 1), kUnit), ConfigError);
  EXPECT_THROW(classify_af(Bits(9, 1), SimConfig{}), ConfigError);
}

TEST(ClassifyAf, ThresholdIsInclusive) {
  const SimConfig cfg;
  EXPECT_TRUE(classify_af(Bits{1, 1, 0, 0, 0, 0, 1, 0, 1, 0}, cfg));  // 4 flags
  EXPECT_FALSE(classify_af(Bits{1, 1, 0, 0, 0, 0, 1, 0, 0, 0}, cfg)); // 3 flags
}

TEST(ClassifyAf, MaximalDeprivationIsAlwaysPoor) {
  SimConfig cfg;
  for (std::size_t k = 1; k <= cfg.n_indicators; ++k) {
    cfg.af_threshold = k;
    EXPECT_TRUE(classify_af(Bits(10, 1), cfg)) << "k=" << k;
  }
}

TEST(ClassifyAf, EveryReferenceDisagreementRowIsAfPoor) {
  const std::vector<Bits> rows{
      {1, 1, 0, 0, 0, 0, 1, 0, 1, 0}, {0, 1, 1, 0, 1, 0, 0, 0, 1, 0},
      {1, 1, 1, 1, 1, 0, 1, 1, 1, 0}, {0, 1, 1, 1, 1, 1, 0, 0, 0, 0},
      {0, 1, 0, 1, 1, 0, 0, 1, 0, 0}, {0, 1, 1, 1, 0, 1, 1, 1, 1, 1},
      {0, 0, 1, 1, 1, 0, 1, 0, 0, 0}, {1, 1, 1, 1, 0, 1, 0, 1, 1, 1},
      {1, 1, 0, 1, 1, 1, 1, 0, 1, 1}, {1, 0, 1, 0, 1, 0, 1, 1, 1, 1}};
  for (const auto &x : rows) EXPECT_TRUE(classify_af(x, SimConfig{}));
}

TEST(ClassifyAf, WeightedThresholdUsesSameComparison) {
  SimConfig cfg;
  cfg.n_indicators = 3;
  cfg.af_threshold = 2;
  cfg.af_weights = {0.5, 1.5, 1.0};
  EXPECT_TRUE(classify_af(Bits{1, 1, 0}, cfg));  // 2.0 >= 2
  EXPECT_FALSE(classify_af(Bits{1, 0, 1}, cfg)); // 1.5 < 2
  const AfDecision d = decide_af(Bits{0, 1, 1}, cfg.af_weights, cfg.af_threshold);
  EXPECT_DOUBLE_EQ(d.weighted_count, 2.5);
  EXPECT_TRUE(d.is_poor);
}

TEST(ClassifyAf, MatchesThresholdSetOnAllVectors) {
  // Unit weights: poor exactly when popcount >= k, for every x in {0,1}^10.
  SimConfig cfg;
  for (std::size_t k = 1; k <= 10; ++k) {
    cfg.af_threshold = k;
    for (unsigned bits = 0; bits < 1024; ++bits) {
      Bits x(10);
      for (int i = 0; i < 10; ++i) x[i] = (bits >> i) & 1U;
      ASSERT_EQ(classify_af(x, cfg), static_cast<std::size_t>(__builtin_popcount(bits)) >= k);
    }
  }
}

TEST(ClassifyAf, MonotoneInDeprivations) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> w(0.0, 3.0);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 2000; ++trial) {
    SimConfig cfg;
    cfg.af_weights.resize(10);
    for (auto &v : cfg.af_weights) v = w(gen);
    cfg.af_threshold = 1 + static_cast<std::size_t>(trial % 10);
    Bits x(10);
    for (auto &v : x) v = coin(gen);
    const bool before = classify_af(x, cfg);
    for (std::size_t i = 0; i < 10; ++i) {
      if (x[i]) continue;
      Bits y = x;
      y[i] = 1;
      ASSERT_TRUE(!before || classify_af(y, cfg));
    }
  }
}

TEST(AfOracle, BinomialMixtureValue) {
  const double v = testing::af_accuracy_oracle(0.3, 0.7, 0.2, 10, 4);
  EXPECT_NEAR(v, 0.91221, 1e-5);
}

} // namespace
} // namespace povsim
