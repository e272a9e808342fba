#include "swipt/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace swipt::tradeoff {

InfeasibleTarget::InfeasibleTarget(double requested, double achievable)
    : std::domain_error("delivered power target " + std::to_string(requested) +
                        " exceeds the maximum achievable " + std::to_string(achievable)),
      requested_(requested),
      achievable_(achievable) {}

double snr_scale(const ChannelParams& ch) {
  ch.validate();
  return 2.0 * std::norm(ch.h) / (ch.f_w * ch.sigma_w2);
}

double rate_gaussian(const PowerAllocation& alloc, const ChannelParams& ch) {
  const double a = snr_scale(ch);
  return 0.5 * ch.f_w * (std::log2(1.0 + a * alloc.p_r) + std::log2(1.0 + a * alloc.p_i));
}

double delivered_power(const PowerAllocation& alloc, const ChannelParams& ch) {
  return delivered_power_gaussian_zero_mean(alloc.p_r, alloc.p_i, ch);
}

double p_dc_min(double p_a, const ChannelParams& ch) {
  const RectennaCoeffs c = coeffs(ch);
  return 2.0 * (c.alpha + c.alpha_tilde) * p_a * p_a + (c.beta + c.beta_tilde) * p_a + c.gamma;
}

double p_dc_max(double p_a, const ChannelParams& ch) {
  const RectennaCoeffs c = coeffs(ch);
  return 3.0 * (c.alpha + c.alpha_tilde) * p_a * p_a + (c.beta + c.beta_tilde) * p_a + c.gamma;
}

RPPoint evaluate(const PowerAllocation& alloc, const ChannelParams& ch) {
  return {rate_gaussian(alloc, ch), delivered_power(alloc, ch), alloc};
}

PowerAllocation optimal_allocation(double p_a, double p_d, const ChannelParams& ch, double tol) {
  if (!(p_a > 0.0)) throw std::invalid_argument("power budget must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (ch.k4 < 0.0) throw std::invalid_argument("k4 must be nonnegative");

  const double lo_power = p_dc_min(p_a, ch);
  const double hi_power = p_dc_max(p_a, ch);
  const double slack = tol * std::abs(p_d);

  if (p_d <= lo_power + slack) return {p_a / 2.0, p_a / 2.0};
  if (p_d > hi_power * (1.0 + tol)) throw InfeasibleTarget(p_d, hi_power);
  if (std::abs(p_d - hi_power) <= slack || p_d > hi_power) return {p_a, 0.0};

  // Power strictly decreases in P_i on [0, p_a/2]: excess(lo) > 0 > excess(hi).
  auto excess = [&](double p_i) { return delivered_power(PowerAllocation{p_a - p_i, p_i}, ch) - p_d; };
  double lo = 0.0, hi = p_a / 2.0;
  double best = lo, best_gap = std::abs(excess(lo));
  for (int it = 0; it < kMaxBisectionIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double e = excess(mid);
    if (std::abs(e) < best_gap) {
      best = mid;
      best_gap = std::abs(e);
    }
    if (std::abs(e) <= slack) break;
    (e > 0.0 ? lo : hi) = mid;
  }
  return {p_a - best, best};
}

std::vector<RPPoint> rp_region(double p_a, const ChannelParams& ch, std::size_t n_points) {
  if (!(p_a > 0.0)) throw std::invalid_argument("power budget must be positive");
  if (n_points < 2) throw std::invalid_argument("region sweep needs at least two points");
  std::vector<RPPoint> out;
  out.reserve(n_points);
  for (std::size_t j = 0; j < n_points; ++j) {
    const double p_i = j + 1 == n_points
                           ? p_a / 2.0
                           : 0.5 * p_a * static_cast<double>(j) / static_cast<double>(n_points - 1);
    out.push_back(evaluate({p_a - p_i, p_i}, ch));
  }
  return out;
}

double KktReport::max_residual() const {
  return std::max({std::abs(stationarity_residual_p_r), std::abs(stationarity_residual_p_i),
                   std::abs(stationarity_residual_mu_r), std::abs(stationarity_residual_mu_i)});
}

bool KktReport::ok() const {
  return primal_feasible && dual_feasible && complementary_slackness_ok &&
         max_residual() <= tolerance;
}

KktReport kkt_check(const PowerAllocation& alloc, double mu_r, double mu_i, double p_a,
                    double p_d, const ChannelParams& ch, double tol) {
  const RectennaCoeffs c = coeffs(ch);
  const double a = snr_scale(ch);
  const double c1 = ch.f_w * std::numbers::log2e / 2.0;
  const double scale = c1 * a;
  const double A = c.alpha + c.alpha_tilde;
  const double B = c.beta + c.beta_tilde;

  const double var_r = alloc.p_r - mu_r * mu_r;
  const double var_i = alloc.p_i - mu_i * mu_i;
  const double g_r = 2.0 * A * (3.0 * alloc.p_r + alloc.p_i) + B;
  const double g_i = 2.0 * A * (3.0 * alloc.p_i + alloc.p_r) + B;
  // Rate slope in each variance, normalized by c1 a.
  const double d_r = 1.0 / (1.0 + a * var_r);
  const double d_i = 1.0 / (1.0 + a * var_i);

  const double power =
      delivered_power(gaussian_profile(mu_r, mu_i, std::max(var_r, 0.0), std::max(var_i, 0.0)), ch);
  const double budget_gap = alloc.p_r + alloc.p_i - p_a;
  const double power_scale = std::max(1.0, std::abs(p_d));

  KktReport rep;
  rep.tolerance = tol;
  rep.budget_active = std::abs(budget_gap) <= tol * p_a;
  rep.power_active = std::abs(power - p_d) <= tol * power_scale;
  rep.primal_feasible = budget_gap <= tol * p_a && power >= p_d - tol * power_scale &&
                        var_r >= -tol && var_i >= -tol;

  const bool free_r = var_r <= tol;  // zeta_r may be nonzero
  const bool free_i = var_i <= tol;

  // Normalized multipliers: l1 = lambda1 / (c1 a), l2 = lambda2 / (c1 a).
  // With zeta = 0 the equations read l1 - l2 g = d.
  double l1 = 0.0, l2 = 0.0;
  if (rep.budget_active && rep.power_active) {
    if (std::abs(g_r - g_i) > 1e-12 * std::max(g_r, g_i)) {
      l2 = (d_r - d_i) / (g_i - g_r);
      l1 = d_r + l2 * g_r;
    } else {
      l1 = 0.5 * (d_r + d_i);
    }
  } else if (rep.budget_active || rep.power_active) {
    // Least squares over the equations without a free zeta (or both if
    // neither variance constraint is tight).
    const bool use_r = !free_r || (free_r && free_i);
    const bool use_i = !free_i || (free_r && free_i);
    if (rep.budget_active) {
      double sum = 0.0, count = 0.0;
      if (use_r) sum += d_r, count += 1.0;
      if (use_i) sum += d_i, count += 1.0;
      l1 = sum / count;
    } else {
      double num = 0.0, den = 0.0;
      if (use_r) num += g_r * d_r, den += g_r * g_r;
      if (use_i) num += g_i * d_i, den += g_i * g_i;
      l2 = den > 0.0 ? -num / den : 0.0;
    }
  }

  const double e_r = l1 - l2 * g_r - d_r;
  const double e_i = l1 - l2 * g_i - d_i;
  const double z_r = free_r ? e_r : 0.0;
  const double z_i = free_i ? e_i : 0.0;

  rep.lambda1 = l1 * scale;
  rep.lambda2 = l2 * scale;
  rep.zeta_r = z_r * scale;
  rep.zeta_i = z_i * scale;
  rep.stationarity_residual_p_r = free_r ? 0.0 : e_r;
  rep.stationarity_residual_p_i = free_i ? 0.0 : e_i;
  rep.stationarity_residual_mu_r = 2.0 * d_r * mu_r + 8.0 * l2 * A * mu_r * mu_r * mu_r + 2.0 * z_r * mu_r;
  rep.stationarity_residual_mu_i = 2.0 * d_i * mu_i + 8.0 * l2 * A * mu_i * mu_i * mu_i + 2.0 * z_i * mu_i;

  const double g_max = std::max({g_r, g_i, 1e-300});
  rep.dual_feasible = l1 >= -tol && l2 * g_max >= -tol && z_r >= -tol && z_i >= -tol;
  rep.complementary_slackness_ok = std::abs(l1 * budget_gap) <= tol * p_a &&
                                   std::abs(l2 * (power - p_d)) <= tol * power_scale &&
                                   std::abs(z_r * var_r) <= tol && std::abs(z_i * var_i) <= tol;
  return rep;
}

}  // namespace swipt::tradeoff
