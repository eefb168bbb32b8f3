#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mcs/errors.hpp"
#include "mcs/model.hpp"
#include "test_support.hpp"

namespace mcs {
namespace {

constexpr double kE = std::numbers::e;

TEST(DemandDistribution, RejectsBadSupport) {
  EXPECT_THROW(DemandDistribution::uniform(5.0, 5.0), ConfigError);
  EXPECT_THROW(DemandDistribution::uniform(-1.0, 5.0), ConfigError);
  EXPECT_THROW(DemandDistribution::uniform(6.0, 5.0), ConfigError);
  EXPECT_THROW(DemandDistribution::truncated_exponential(0.0, 5.0, 0.0), ConfigError);
}

TEST(DemandDistribution, UniformBasics) {
  const auto d = DemandDistribution::uniform(0.0, 25.0);
  EXPECT_DOUBLE_EQ(d.density(10.0), 1.0 / 25.0);
  EXPECT_DOUBLE_EQ(d.density(-1.0), 0.0);
  EXPECT_DOUBLE_EQ(d.density(26.0), 0.0);
  EXPECT_DOUBLE_EQ(d.cdf(0.0), 0.0);
  EXPECT_DOUBLE_EQ(d.cdf(20.0), 0.8);
  EXPECT_DOUBLE_EQ(d.cdf(25.0), 1.0);
  EXPECT_DOUBLE_EQ(d.quantile(0.0), 0.0);
  EXPECT_DOUBLE_EQ(d.quantile(1.0), 25.0);
  EXPECT_DOUBLE_EQ(d.quantile(0.4), 10.0);
  EXPECT_THROW(d.quantile(1.5), DomainError);
  EXPECT_THROW(d.quantile(-0.1), DomainError);
  EXPECT_TRUE(d.non_increasing_density());
  EXPECT_TRUE(d.admissible());
}

TEST(DemandDistribution, CdfMonotoneAndQuantileRoundTrip) {
  const std::vector<DemandDistribution> dists{
      DemandDistribution::uniform(0.0, 25.0), DemandDistribution::uniform(3.0, 7.5),
      DemandDistribution::truncated_exponential(0.0, 25.0, 0.1),
      DemandDistribution::truncated_exponential(2.0, 20.0, 0.3)};
  RngStream rng(11);
  for (const auto& d : dists) {
    double prev = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double xi = d.lo() - 1.0 + (d.hi() - d.lo() + 2.0) * i / 200.0;
      const double f = d.cdf(xi);
      EXPECT_GE(f, prev);
      prev = f;
    }
    EXPECT_DOUBLE_EQ(d.cdf(d.lo()), 0.0);
    EXPECT_DOUBLE_EQ(d.cdf(d.hi()), 1.0);
    for (int i = 0; i < 1000; ++i) {
      const double xi = rng.uniform(d.lo(), d.hi());
      EXPECT_NEAR(d.quantile(d.cdf(xi)), xi, 1e-9) << to_string(d.kind());
    }
  }
}

TEST(DemandDistribution, TruncatedExponentialExpectedMinMatchesMonteCarlo) {
  const auto d = DemandDistribution::truncated_exponential(0.0, 25.0, 0.1);
  RngStream rng(5);
  const int n = 1'000'000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = std::min(d.sample(rng), 12.0);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum_sq / n - mean * mean) / n);
  EXPECT_NEAR(d.expected_min(12.0), mean, 3.0 * se);
}

TEST(AggregateB, Examples) {
  EXPECT_DOUBLE_EQ(aggregate_b(AllocationProfile{{0.0, 0.0, 0.0}}), 1.0);
  EXPECT_NEAR(aggregate_b(AllocationProfile{{kE - 1.0}}), 2.0, 1e-15);
  EXPECT_NEAR(aggregate_b(AllocationProfile{{1.0, 1.0}}), 2.38629436111989061883, 1e-14);
  EXPECT_THROW(aggregate_b(AllocationProfile{{1.0, -0.1}}), DomainError);
}

TEST(SpUtility, Examples) {
  EXPECT_DOUBLE_EQ(sp_utility(AllocationProfile{{0, 0, 0, 0, 0}}, 50.0), 0.0);
  EXPECT_NEAR(sp_utility(AllocationProfile{{kE - 1.0}}, 50.0), 34.6573590279972654709, 1e-12);
  EXPECT_NEAR(sp_utility(AllocationProfile{{20, 20, 20, 20, 20}}, 50.0), 139.320304155376352244, 1e-12);
}

TEST(SpUtility, StrictlyIncreasingAndConcaveAlongCoordinates) {
  RngStream rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    AllocationProfile x{{rng.uniform(0, 20), rng.uniform(0, 20), rng.uniform(0, 20)}};
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double h = 0.05;
      AllocationProfile up = x;
      AllocationProfile down = x;
      up[i] += h;
      if (x[i] < h) continue;
      down[i] = x[i] - h;
      EXPECT_GT(sp_utility(up, 50.0), sp_utility(x, 50.0));
      EXPECT_LT(sp_utility(up, 50.0) - 2 * sp_utility(x, 50.0) + sp_utility(down, 50.0), 0.0);
    }
  }
}

TEST(SpPayoff, Examples) {
  EXPECT_DOUBLE_EQ(sp_payoff(AllocationProfile{{0.0, 0.0}}, PriceProfile{{0.7, 0.3}}, 50.0), 0.0);
  EXPECT_NEAR(sp_payoff(AllocationProfile{{kE - 1.0}}, PriceProfile{{0.5}}, 50.0), 33.7982181137677428532, 1e-12);
  EXPECT_NEAR(sp_payoff(AllocationProfile{{10.0, 10.0}}, PriceProfile{{1.0, 1.0}}, 50.0), 67.8565943027358448926,
              1e-12);
  EXPECT_THROW(sp_payoff(AllocationProfile{{1.0}}, PriceProfile{{1.0, 1.0}}, 50.0), ShapeError);
}

TEST(MuProfile, RejectsDegenerateMargins) {
  const auto d = DemandDistribution::uniform(0.0, 25.0);
  EXPECT_THROW(MuProfile(20.0, 0.5, 0.5, d), ConfigError);
  EXPECT_THROW(MuProfile(20.0, 0.4, 0.5, d), ConfigError);
  EXPECT_THROW(MuProfile(0.0, 1.0, 0.0, d), ConfigError);
  EXPECT_THROW(MuProfile(20.0, 1.0, -0.1, d), ConfigError);
  EXPECT_NO_THROW(MuProfile(20.0, 1.0, 0.0, d));
}

TEST(Scenario, RejectsBadInstances) {
  EXPECT_THROW(Scenario(0.0, {testing::reference_mu()}, 1), ConfigError);
  EXPECT_THROW(Scenario(50.0, {}, 1), ConfigError);
}

TEST(MuOwnProfit, Examples) {
  const MuProfile mu = testing::reference_mu();
  EXPECT_DOUBLE_EQ(mu_own_profit(mu, 0.0), 0.0);
  EXPECT_NEAR(mu_own_profit(mu, 20.0), 12.0, 1e-12);
  EXPECT_NEAR(mu_own_profit(mu, 10.0), 8.0, 1e-12);
  EXPECT_THROW(mu_own_profit(mu, -0.5), DomainError);
  EXPECT_THROW(mu_own_profit(mu, 20.5), DomainError);
}

TEST(MuOwnProfit, ClosedFormMatchesMonteCarlo) {
  const MuProfile mu = testing::reference_mu();
  for (double q : {20.0, 10.0}) {
    RngStream rng(17);
    const int n = 1'000'000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double v = std::min(mu.demand().sample(rng), q);
      sum += v;
      sum_sq += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / n);
    EXPECT_NEAR(mu_own_profit(mu, q), mean, std::min(1e-2, 3.0 * se));
  }
}

TEST(MuOwnProfit, ConcaveAndNondecreasing) {
  RngStream rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const MuProfile mu = testing::random_mu(rng);
    std::vector<double> v;
    for (int i = 0; i < 100; ++i) v.push_back(mu_own_profit(mu, std::min(mu.tau(), mu.tau() * i / 99.0)));
    for (std::size_t i = 1; i < v.size(); ++i) EXPECT_GE(v[i] - v[i - 1], -1e-12);
    for (std::size_t i = 2; i < v.size(); ++i) EXPECT_LE(v[i] - 2 * v[i - 1] + v[i - 2], 1e-9);
  }
  const MuProfile exp_mu(20.0, 1.0, 0.2, DemandDistribution::truncated_exponential(0.0, 25.0, 0.1));
  std::vector<double> v;
  for (int i = 0; i < 100; ++i) v.push_back(mu_own_profit(exp_mu, std::min(20.0, 20.0 * i / 99.0)));
  for (std::size_t i = 2; i < v.size(); ++i) {
    EXPECT_GE(v[i] - v[i - 1], -1e-12);
    EXPECT_LE(v[i] - 2 * v[i - 1] + v[i - 2], 1e-9);
  }
}

TEST(MuPayoff, Examples) {
  const MuProfile mu = testing::reference_mu();
  EXPECT_DOUBLE_EQ(mu_payoff(mu, 0.0, 0.37), 0.0);
  EXPECT_NEAR(mu_payoff(mu, 10.0, 0.6), 2.0, 1e-12);
  EXPECT_NEAR(mu_payoff(mu, 20.0, 1.0), 8.0, 1e-12);
  EXPECT_THROW(mu_payoff(mu, 21.0, 1.0), DomainError);
}

TEST(ValidateAllocation, ChecksShapeAndRange) {
  const Scenario s(50.0, {testing::reference_mu(), testing::reference_mu()}, 1);
  EXPECT_NO_THROW(validate_allocation(s, AllocationProfile{{0.0, 20.0}}));
  EXPECT_THROW(validate_allocation(s, AllocationProfile{{0.0}}), ShapeError);
  EXPECT_THROW(validate_allocation(s, AllocationProfile{{0.0, 20.5}}), DomainError);
}

}  // namespace
}  // namespace mcs
