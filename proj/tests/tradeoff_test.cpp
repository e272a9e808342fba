#include "swipt/tradeoff.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace swipt::tradeoff {
namespace {

const double kPdcMin = 57.79799157435;
const double kPdcMax = 86.51549157435;

// Closed-form inverse of the budget-line power for zero-mean Gaussian
// inputs: with P_r = P_a - x, Q = Q~ = 3 P_a^2 - 4 P_a x + 4 x^2.
double closed_form_p_i(double p_a, double p_d, const ChannelParams& ch) {
  const RectennaCoeffs c = coeffs(ch);
  const double q = (p_d - (c.beta + c.beta_tilde) * p_a - c.gamma) / (c.alpha + c.alpha_tilde);
  return 0.5 * (p_a - std::sqrt(q - 2.0 * p_a * p_a));
}

// The P_i in [0, p_a/2] on a uniform grid with the largest rate whose power
// still meets p_d.
double grid_search_p_i(double p_a, double p_d, const ChannelParams& ch, double step) {
  double best = 0.0, best_rate = -1.0;
  const auto n = static_cast<std::size_t>(std::floor(0.5 * p_a / step));
  for (std::size_t j = 0; j <= n; ++j) {
    const double p_i = static_cast<double>(j) * step;
    const PowerAllocation a{p_a - p_i, p_i};
    if (delivered_power(a, ch) < p_d) continue;
    const double r = rate_gaussian(a, ch);
    if (r > best_rate) {
      best_rate = r;
      best = p_i;
    }
  }
  return best;
}

TEST(Rate, Corners) {
  const ChannelParams ch;
  EXPECT_DOUBLE_EQ(snr_scale(ch), 2e4);
  EXPECT_NEAR(rate_gaussian({0.5, 0.5}, ch), std::log2(1.0 + 1e4), 1e-12);
  EXPECT_NEAR(rate_gaussian({1.0, 0.0}, ch), 0.5 * std::log2(1.0 + 2e4), 1e-12);
  EXPECT_NEAR(rate_gaussian({0.5, 0.5}, ch), 13.2878, 1e-4);
  EXPECT_NEAR(rate_gaussian({1.0, 0.0}, ch), 7.1439, 1e-4);
  EXPECT_EQ(rate_gaussian({0.0, 0.0}, ch), 0.0);
}

TEST(Rate, ConcaveAlongBudgetLine) {
  const ChannelParams ch;
  const double h = 1e-3;
  for (double x = 0.01; x < 0.99; x += 0.01) {
    const double r0 = rate_gaussian({1 - x + h, x - h}, ch);
    const double r1 = rate_gaussian({1 - x, x}, ch);
    const double r2 = rate_gaussian({1 - x - h, x + h}, ch);
    EXPECT_LE(r0 + r2 - 2 * r1, 1e-12);
  }
}

TEST(Endpoints, FigureConstants) {
  const ChannelParams ch;
  EXPECT_NEAR(p_dc_min(1.0, ch), kPdcMin, 1e-9 * kPdcMin);
  EXPECT_NEAR(p_dc_max(1.0, ch), kPdcMax, 1e-9 * kPdcMax);
  EXPECT_NEAR(delivered_power(PowerAllocation{0.5, 0.5}, ch), p_dc_min(1.0, ch), 1e-12);
  EXPECT_NEAR(delivered_power(PowerAllocation{1.0, 0.0}, ch), p_dc_max(1.0, ch), 1e-12);
}

TEST(OptimalAllocation, BelowMinimumGivesEqualSplit) {
  const ChannelParams ch;
  EXPECT_EQ(optimal_allocation(1.0, 50.0, ch), (PowerAllocation{0.5, 0.5}));
  EXPECT_EQ(optimal_allocation(1.0, kPdcMin, ch), (PowerAllocation{0.5, 0.5}));
  EXPECT_EQ(optimal_allocation(2.0, 0.0, ch), (PowerAllocation{1.0, 1.0}));
}

TEST(OptimalAllocation, AtMaximumGivesSingleAxis) {
  const ChannelParams ch;
  EXPECT_EQ(optimal_allocation(1.0, p_dc_max(1.0, ch), ch), (PowerAllocation{1.0, 0.0}));
}

TEST(OptimalAllocation, AboveMaximumIsInfeasible) {
  const ChannelParams ch;
  EXPECT_THROW(optimal_allocation(1.0, 1000.0, ch), InfeasibleTarget);
  try {
    optimal_allocation(1.0, 90.0, ch);
    FAIL() << "expected InfeasibleTarget";
  } catch (const InfeasibleTarget& e) {
    EXPECT_EQ(e.requested(), 90.0);
    EXPECT_NEAR(e.achievable(), kPdcMax, 1e-9);
  }
}

TEST(OptimalAllocation, RejectsBadArguments) {
  ChannelParams ch;
  EXPECT_THROW(optimal_allocation(0.0, 10.0, ch), std::invalid_argument);
  EXPECT_THROW(optimal_allocation(1.0, 60.0, ch, 0.0), std::invalid_argument);
  ch.k4 = -1.0;
  EXPECT_THROW(optimal_allocation(1.0, 60.0, ch), std::invalid_argument);
}

TEST(OptimalAllocation, MidpointTarget) {
  const ChannelParams ch;
  const double p_d = 0.5 * (kPdcMin + kPdcMax);
  const PowerAllocation a = optimal_allocation(1.0, p_d, ch);
  EXPECT_NEAR(a.total(), 1.0, 1e-15);
  EXPECT_GE(a.p_r, a.p_i);
  EXPECT_LE(std::abs(delivered_power(a, ch) - p_d), 1e-9 * p_d);
  EXPECT_NEAR(a.p_i, closed_form_p_i(1.0, p_d, ch), 1e-9);
  EXPECT_NEAR(a.p_i, grid_search_p_i(1.0, p_d, ch, 1e-6), 1e-5);
  const KktReport k = kkt_check(a, 0.0, 0.0, 1.0, p_d, ch, 1e-6);
  EXPECT_TRUE(k.ok()) << k.max_residual();
  EXPECT_TRUE(k.budget_active);
  EXPECT_TRUE(k.power_active);
  EXPECT_GT(k.lambda1, 0.0);
  EXPECT_GT(k.lambda2, 0.0);
}

TEST(OptimalAllocation, RandomizedInstances) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
  std::uniform_real_distribution<double> frac(0.02, 0.98);
  for (int trial = 0; trial < 20; ++trial) {
    ChannelParams ch;
    ch.h = std::polar(mag(rng), phase(rng));
    ch.h_tilde = std::polar(mag(rng), phase(rng));
    const double lo = p_dc_min(1.0, ch), hi = p_dc_max(1.0, ch);
    const double p_d = lo + frac(rng) * (hi - lo);
    const PowerAllocation a = optimal_allocation(1.0, p_d, ch);
    EXPECT_LE(std::abs(delivered_power(a, ch) - p_d), 1e-9 * p_d) << "trial " << trial;
    EXPECT_NEAR(a.p_i, closed_form_p_i(1.0, p_d, ch), 1e-8) << "trial " << trial;
    const KktReport k = kkt_check(a, 0.0, 0.0, 1.0, p_d, ch, 1e-6);
    EXPECT_TRUE(k.ok()) << "trial " << trial << " residual " << k.max_residual();
  }
}

TEST(OptimalAllocation, GridSearchAgreementOnRandomTargets) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> frac(0.05, 0.95);
  const ChannelParams ch;
  for (int trial = 0; trial < 3; ++trial) {
    const double p_d = kPdcMin + frac(rng) * (kPdcMax - kPdcMin);
    const PowerAllocation a = optimal_allocation(1.0, p_d, ch);
    EXPECT_NEAR(a.p_i, grid_search_p_i(1.0, p_d, ch, 1e-6), 1e-5);
  }
}

TEST(Kkt, EqualSplitBelowMinimum) {
  const ChannelParams ch;
  const KktReport k = kkt_check({0.5, 0.5}, 0.0, 0.0, 1.0, 50.0, ch, 1e-6);
  EXPECT_TRUE(k.ok());
  EXPECT_TRUE(k.budget_active);
  EXPECT_FALSE(k.power_active);
  EXPECT_EQ(k.lambda2, 0.0);
  EXPECT_GT(k.lambda1, 0.0);
}

TEST(Kkt, SingleAxisAtMaximum) {
  const ChannelParams ch;
  const KktReport k = kkt_check({1.0, 0.0}, 0.0, 0.0, 1.0, kPdcMax, ch, 1e-6);
  EXPECT_TRUE(k.primal_feasible);
  EXPECT_TRUE(k.ok()) << k.max_residual();
  EXPECT_GE(k.zeta_i, -1e-9);
}

TEST(Kkt, PerturbedSplitFails) {
  const ChannelParams ch;
  const double p_d = 0.5 * (kPdcMin + kPdcMax);
  PowerAllocation a = optimal_allocation(1.0, p_d, ch);
  a.p_r -= 0.01;
  a.p_i += 0.01;
  EXPECT_FALSE(kkt_check(a, 0.0, 0.0, 1.0, p_d, ch, 1e-6).ok());
  // Off the budget line with slack power: stationarity cannot hold.
  EXPECT_FALSE(kkt_check({0.3, 0.3}, 0.0, 0.0, 1.0, 10.0, ch, 1e-6).ok());
  // An unequal split with an inactive power constraint.
  EXPECT_FALSE(kkt_check({0.7, 0.3}, 0.0, 0.0, 1.0, 10.0, ch, 1e-6).ok());
}

TEST(Kkt, NonzeroMeanFailsStationarity) {
  const ChannelParams ch;
  const KktReport k = kkt_check({0.5, 0.5}, 0.3, 0.0, 1.0, 10.0, ch, 1e-6);
  EXPECT_FALSE(k.ok());
  EXPECT_GT(std::abs(k.stationarity_residual_mu_r), 1e-6);
  EXPECT_EQ(k.stationarity_residual_mu_i, 0.0);
}

TEST(Region, MonotoneFrontierWithCorners) {
  const ChannelParams ch;
  const auto pts = rp_region(1.0, ch, 101);
  ASSERT_EQ(pts.size(), 101U);
  EXPECT_EQ(pts.front().allocation, (PowerAllocation{1.0, 0.0}));
  EXPECT_EQ(pts.back().allocation, (PowerAllocation{0.5, 0.5}));
  EXPECT_NEAR(pts.front().power, kPdcMax, 1e-9 * kPdcMax);
  EXPECT_NEAR(pts.back().power, kPdcMin, 1e-9 * kPdcMin);
  for (std::size_t j = 1; j < pts.size(); ++j) {
    EXPECT_GT(pts[j].rate, pts[j - 1].rate);
    EXPECT_LT(pts[j].power, pts[j - 1].power);
    EXPECT_NEAR(pts[j].allocation.total(), 1.0, 1e-15);
  }
  EXPECT_THROW(rp_region(1.0, ch, 1), std::invalid_argument);
}

TEST(Region, MarkedAllocationsOrdered) {
  const ChannelParams ch;
  const PowerAllocation marks[] = {{1.0, 0.0}, {0.97, 0.03}, {0.8, 0.2}, {0.5, 0.5}};
  for (int j = 1; j < 4; ++j) {
    const RPPoint prev = evaluate(marks[j - 1], ch);
    const RPPoint cur = evaluate(marks[j], ch);
    EXPECT_GT(cur.rate, prev.rate);
    EXPECT_LT(cur.power, prev.power);
  }
}

TEST(Region, SwappedAxesAreEquivalent) {
  ChannelParams ch;
  ch.h = {0.7, 0.4};
  ch.h_tilde = {1.1, -0.2};
  const PowerAllocation a{0.8, 0.2}, b{0.2, 0.8};
  EXPECT_NEAR(rate_gaussian(a, ch), rate_gaussian(b, ch), 1e-12);
  EXPECT_NEAR(delivered_power(a, ch), delivered_power(b, ch), 1e-12);
}

TEST(Region, LinearModelHasNoTradeoff) {
  ChannelParams ch;
  ch.k4 = 0.0;
  const auto pts = rp_region(1.0, ch, 21);
  for (const auto& p : pts) EXPECT_NEAR(p.power, pts.front().power, 1e-15);
  EXPECT_EQ(p_dc_min(1.0, ch), p_dc_max(1.0, ch));
  EXPECT_EQ(optimal_allocation(1.0, p_dc_max(1.0, ch), ch), (PowerAllocation{0.5, 0.5}));
}

TEST(Region, FullBudgetBeatsPartialBudget) {
  const ChannelParams ch;
  for (double s : {0.2, 0.5, 0.9}) {
    EXPECT_GT(rate_gaussian({0.5, 0.5}, ch), rate_gaussian({0.5 * s, 0.5 * s}, ch));
    EXPECT_GT(delivered_power(PowerAllocation{0.5, 0.5}, ch),
              delivered_power(PowerAllocation{0.5 * s, 0.5 * s}, ch));
  }
}

}  // namespace
}  // namespace swipt::tradeoff
