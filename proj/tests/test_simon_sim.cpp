#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <vector>

#include "notezipf/errors.hpp"
#include "notezipf/rng.hpp"
#include "notezipf/simon_sim.hpp"
#include "enumeration.hpp"
#include "oracles.hpp"

namespace notezipf::simon {
namespace {

TEST(Rng, SplitMixReferenceValue) {
  SplitMix64 sm(0);
  EXPECT_EQ(sm.next(), 0xE220A8397B1DCDAFull);
  EXPECT_EQ(sm.next(), 0x6E789E6AA1B965F4ull);
}

TEST(Rng, XoshiroFirstOutputFromSeededState) {
  SplitMix64 sm(42);
  sm.next();
  const std::uint64_t s1 = sm.next();
  const std::uint64_t x = s1 * 5;
  Xoshiro256 rng(42);
  EXPECT_EQ(rng.next(), ((x << 7) | (x >> 57)) * 9);
}

TEST(Rng, RangesAndDeterminism) {
  Xoshiro256 a(5);
  Xoshiro256 b(5);
  for (int i = 0; i < 10000; ++i) {
    const double u = a.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_EQ(u, b.uniform());
    const std::uint64_t n = 1 + static_cast<std::uint64_t>(i);
    ASSERT_LT(a.below(n), n);
    b.below(n);
  }
  EXPECT_NE(Xoshiro256(5).split(1).next(), Xoshiro256(5).split(2).next());
}

TEST(Simulate, AlwaysInnovate) {
  const auto r = simulate(SimConfig::constant(1.0, 50, 3));
  EXPECT_EQ(r.distinct, 50u);
  EXPECT_EQ(r.tokens.size(), 50u);
}

TEST(Simulate, NeverInnovate) {
  const auto r = simulate(SimConfig::constant(0.0, 50, 3));
  EXPECT_EQ(r.distinct, 1u);
  EXPECT_EQ(r.tokens, std::vector<TokenId>(50, 1));
}

TEST(Simulate, IdsAreDenseInFirstAppearanceOrder) {
  for (const auto& config : {SimConfig::constant(0.3, 2000, 1), SimConfig::sublinear(0.5, 2000, 2)}) {
    const auto r = simulate(config);
    TokenId next_new = 1;
    std::size_t prev_distinct = 0;
    std::size_t seen = 0;
    for (const auto id : r.tokens) {
      ASSERT_LE(id, next_new);
      if (id == next_new) ++next_new, ++seen;
      ASSERT_GE(seen, prev_distinct);
      prev_distinct = seen;
    }
    EXPECT_EQ(seen, r.distinct);
  }
}

TEST(Simulate, Reproducible) {
  const auto config = SimConfig::sublinear(0.4, 20000, 99);
  EXPECT_EQ(simulate(config).tokens, simulate(config).tokens);
  EXPECT_NE(simulate(config).tokens, simulate(SimConfig::sublinear(0.4, 20000, 100)).tokens);
}

TEST(Simulate, ExpectedVocabularyInConstantMode) {
  constexpr double alpha = 0.1;
  constexpr std::uint64_t steps = 5000;
  constexpr int seeds = 40;
  double sum = 0.0;
  for (int s = 0; s < seeds; ++s) sum += static_cast<double>(simulate(SimConfig::constant(alpha, steps, s)).distinct);
  const double mean = sum / seeds;
  const double expected = 1.0 + alpha * (steps - 1);
  const double se = std::sqrt(alpha * (1 - alpha) * (steps - 1) / seeds);
  EXPECT_NEAR(mean, expected, 3 * se);
}

TEST(Simulate, SublinearGrowthAndRankExponent) {
  constexpr std::uint64_t steps = 100000;
  double v_sum = 0.0;
  double z_sum = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto r = simulate(SimConfig::sublinear(0.5, steps, seed));
    v_sum += static_cast<double>(r.distinct);
    z_sum += verify_zipf(r).z_hat;
  }
  const double v_scale = v_sum / 10 / std::sqrt(static_cast<double>(steps));
  EXPECT_GE(v_scale, 0.7);
  EXPECT_LE(v_scale, 1.3);
  EXPECT_GE(z_sum / 10, 1.6);
  EXPECT_LE(z_sum / 10, 2.4);
}

TEST(InnovationProbability, Schedules) {
  EXPECT_EQ(innovation_probability(SimConfig::constant(0.25, 10, 0), 7), 0.25);
  const auto sub = SimConfig::sublinear(0.5, 10, 0);
  EXPECT_EQ(innovation_probability(sub, 1), 1.0);
  EXPECT_NEAR(innovation_probability(sub, 2), 0.5 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(innovation_probability(sub, 100), 0.05, 1e-15);
  EXPECT_NEAR(innovation_probability(SimConfig::sublinear(0.01, 10, 0), 3), 0.01 * std::pow(3.0, -0.99), 1e-15);
}

TEST(Validate, RejectsBadConfigs) {
  EXPECT_THROW(validate(SimConfig::constant(1.5, 10, 0)), Error);
  EXPECT_THROW(validate(SimConfig::constant(-0.1, 10, 0)), Error);
  EXPECT_THROW(validate(SimConfig::sublinear(1.0, 10, 0)), Error);
  EXPECT_THROW(validate(SimConfig::sublinear(0.0, 10, 0)), Error);
  EXPECT_THROW(validate(SimConfig::constant(0.5, 0, 0)), Error);
  EXPECT_NO_THROW(validate(SimConfig::constant(0.0, 1, 0)));
}

TEST(VerifyZipf, NeedsFiftyDistinct) {
  try {
    verify_zipf(simulate(SimConfig::constant(0.01, 100, 0)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientSupport);
  }
}

TEST(SimonProcess, UniformHistoryMatchesCountProportionalExactly) {
  using oracle::Rational;
  for (const Rational alpha : {Rational(1, 3), Rational(0), Rational(1), Rational(2, 7)}) {
    for (std::size_t steps = 1; steps <= 6; ++steps) {
      oracle::SequenceDistribution uniform;
      oracle::SequenceDistribution proportional;
      std::vector<TokenId> seq;
      oracle::enumerate_uniform_history(seq, 0, steps, alpha, Rational(1), uniform);
      std::vector<std::uint32_t> seq2;
      oracle::enumerate_count_proportional(seq2, 0, steps, alpha, Rational(1), proportional);
      std::erase_if(uniform, [](const auto& kv) { return kv.second.num == 0; });
      std::erase_if(proportional, [](const auto& kv) { return kv.second.num == 0; });
      ASSERT_EQ(uniform, proportional) << "T=" << steps;
      Rational total(0);
      for (const auto& [s, p] : uniform) total = total + p;
      ASSERT_EQ(total, Rational(1));
    }
  }
}

}  // namespace
}  // namespace notezipf::simon
