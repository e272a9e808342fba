#include "swipt/moments.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

namespace swipt {
namespace {

// Moments of a random three-point law on each axis; always realizable.
MomentProfile random_profile(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> point(-2.0, 2.0);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  auto axis = [&](double& mu, double& p, double& t, double& q) {
    double w[3], x[3], total = 0.0;
    for (int k = 0; k < 3; ++k) {
      w[k] = weight(rng);
      x[k] = point(rng);
      total += w[k];
    }
    mu = p = t = q = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double pk = w[k] / total;
      mu += pk * x[k];
      p += pk * x[k] * x[k];
      t += pk * x[k] * x[k] * x[k];
      q += pk * x[k] * x[k] * x[k] * x[k];
    }
  };
  MomentProfile m;
  axis(m.mu_r, m.p_r, m.t_r, m.q_r);
  axis(m.mu_i, m.p_i, m.t_i, m.q_i);
  return m;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

TEST(QTilde, ZeroMeanSymmetricGaussian) {
  const MomentProfile m = gaussian_profile(0, 0, 0.5, 0.5);
  EXPECT_DOUBLE_EQ(q_tilde(m), 2.0);
  EXPECT_DOUBLE_EQ(derive(m).fourth, 2.0);
}

TEST(QTilde, DeterministicInput) {
  const double cr = 0.7, ci = -1.3;
  MomentProfile m{cr, ci, cr * cr, ci * ci, cr * cr * cr, ci * ci * ci,
                  cr * cr * cr * cr, ci * ci * ci * ci};
  const double c2 = cr * cr + ci * ci;
  EXPECT_NEAR(q_tilde(m), c2 * c2, 1e-12);
}

TEST(QTilde, IntermediateFormExamples) {
  const MomentProfile sym = gaussian_profile(0, 0, 0.5, 0.5);
  const DerivedMoments d = derive(sym);
  EXPECT_NEAR(q_tilde_intermediate(sym), (d.fourth + 4.0 * d.power * d.power) / 3.0, 1e-15);

  const MomentProfile single = gaussian_profile(0, 0, 1, 0);
  EXPECT_NEAR(q_tilde(single), 3.0, 1e-15);
  EXPECT_NEAR(q_tilde_intermediate(single), 3.0, 1e-15);
}

TEST(QTilde, FormsAgreeOnRandomProfiles) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 2000; ++i) {
    const MomentProfile m = random_profile(rng);
    ASSERT_NO_THROW(m.validate());
    ASSERT_LE(rel(q_tilde_intermediate(m), q_tilde(m)), 1e-10) << describe(m);
  }
}

TEST(QTilde, MatchesCumulantOracle) {
  // Exact E|sum_l s_l X_l|^4 from cumulants of the per-axis laws, with the
  // infinite-window sums of the s_l powers.
  std::mt19937_64 rng(99);
  const auto sums = oracle::infinite_sums();
  for (int i = 0; i < 500; ++i) {
    const MomentProfile m = random_profile(rng);
    const double expected = oracle::q_tilde_cumulant({m.mu_r, m.p_r, m.t_r, m.q_r},
                                                     {m.mu_i, m.p_i, m.t_i, m.q_i}, sums);
    ASSERT_LE(rel(q_tilde(m), expected), 1e-10) << describe(m);
  }
}

TEST(QTilde, SwapSymmetry) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const MomentProfile m = random_profile(rng);
    const MomentProfile s{m.mu_i, m.mu_r, m.p_i, m.p_r, m.t_i, m.t_r, m.q_i, m.q_r};
    ASSERT_LE(rel(q_tilde(s), q_tilde(m)), 1e-13);
  }
}

TEST(QTilde, GaussianClosure) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const double pr = u(rng), pi = u(rng);
    const MomentProfile m = gaussian_profile(0, 0, pr, pi);
    const double closed = 3.0 * (pr * pr + pi * pi) + 2.0 * pr * pi;
    ASSERT_LE(rel(q_tilde(m), closed), 1e-12);
    ASSERT_LE(rel(derive(m).fourth, closed), 1e-12);
  }
}

TEST(GaussianProfile, Examples) {
  const MomentProfile a = gaussian_profile(0, 0, 0.5, 0.5);
  EXPECT_EQ(a.p_r, 0.5);
  EXPECT_EQ(a.p_i, 0.5);
  EXPECT_EQ(a.t_r, 0.0);
  EXPECT_EQ(a.q_r, 0.75);
  EXPECT_EQ(a.q_i, 0.75);

  const MomentProfile b = gaussian_profile(0, 0, 1, 0);
  EXPECT_EQ(b.p_r, 1.0);
  EXPECT_EQ(b.q_r, 3.0);
  EXPECT_EQ(b.p_i, 0.0);
  EXPECT_EQ(b.t_i, 0.0);
  EXPECT_EQ(b.q_i, 0.0);

  const MomentProfile c = gaussian_profile(1, 0, 1, 0);
  EXPECT_EQ(c.p_r, 2.0);
  EXPECT_EQ(c.t_r, 4.0);
  EXPECT_EQ(c.q_r, 10.0);

  EXPECT_THROW(gaussian_profile(0, 0, -1e-3, 1), std::invalid_argument);
}

TEST(EmpiricalProfile, Examples) {
  const std::vector<std::complex<double>> two = {{1, 1}, {-1, -1}};
  const MomentProfile m = empirical_profile(two);
  EXPECT_EQ(m.mu_r, 0.0);
  EXPECT_EQ(m.mu_i, 0.0);
  EXPECT_EQ(m.p_r, 1.0);
  EXPECT_EQ(m.p_i, 1.0);
  EXPECT_EQ(m.q_r, 1.0);
  EXPECT_EQ(m.q_i, 1.0);

  const std::complex<double> c{0.3, -0.9};
  const std::vector<std::complex<double>> same(17, c);
  const MomentProfile d = empirical_profile(same);
  EXPECT_NEAR(d.mu_r, 0.3, 1e-15);
  EXPECT_NEAR(d.t_i, -0.729, 1e-15);
  EXPECT_NEAR(d.q_r, 0.0081, 1e-15);
  EXPECT_NO_THROW(d.validate());

  EXPECT_THROW(empirical_profile(std::vector<std::complex<double>>{}), std::invalid_argument);
  EXPECT_THROW(empirical_profile(std::vector<std::complex<double>>{{1, 0}}),
               std::invalid_argument);
}

TEST(Validate, NamesTheViolatedInvariant) {
  MomentProfile jensen = gaussian_profile(0, 0, 1, 1);
  jensen.q_r = 0.5;
  try {
    jensen.validate();
    FAIL() << "expected InvalidProfile";
  } catch (const InvalidProfile& e) {
    EXPECT_NE(std::string(e.what()).find("Jensen violation"), std::string::npos);
  }

  MomentProfile variance = gaussian_profile(0, 0, 1, 1);
  variance.mu_i = 2.0;
  EXPECT_THROW(variance.validate(), InvalidProfile);

  MomentProfile nan = gaussian_profile(0, 0, 1, 1);
  nan.t_r = std::nan("");
  EXPECT_THROW(nan.validate(), InvalidProfile);

  MomentProfile negative = gaussian_profile(0, 0, 1, 1);
  negative.p_i = -1.0;
  EXPECT_THROW(negative.validate(), InvalidProfile);
}

TEST(Derive, PseudoMoments) {
  const MomentProfile m = gaussian_profile(0.5, -0.25, 0.3, 0.7);
  const DerivedMoments d = derive(m);
  EXPECT_NEAR(d.power, m.p_r + m.p_i, 1e-15);
  EXPECT_NEAR(d.fourth, m.q_r + m.q_i + 2 * m.p_r * m.p_i, 1e-15);
  EXPECT_NEAR(d.p_bar.real(), m.p_r - m.p_i, 1e-15);
  EXPECT_NEAR(d.p_bar.imag(), 2 * 0.5 * -0.25, 1e-15);
  // E[|X|^2 X] for independent parts: E[a^3] + E[a] E[b^2] + j(...).
  EXPECT_NEAR(d.t_bar.real(), m.t_r + m.mu_r * m.p_i, 1e-15);
  EXPECT_NEAR(d.t_bar.imag(), m.t_i + m.mu_i * m.p_r, 1e-15);
}

}  // namespace
}  // namespace swipt
