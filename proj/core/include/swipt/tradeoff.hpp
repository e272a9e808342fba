#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "swipt/rectenna.hpp"

namespace swipt::tradeoff {

/// Variances of the real and imaginary parts of a zero-mean Gaussian input.
struct PowerAllocation {
  double p_r = 0.0;
  double p_i = 0.0;

  double total() const { return p_r + p_i; }
  bool operator==(const PowerAllocation&) const = default;
};

struct RPPoint {
  double rate = 0.0;   // bits per second
  double power = 0.0;  // delivered power, rectenna-model units
  PowerAllocation allocation;
};

/// The requested delivered power exceeds what any allocation of the budget
/// can deliver.
class InfeasibleTarget : public std::domain_error {
 public:
  InfeasibleTarget(double requested, double achievable);
  double requested() const { return requested_; }
  double achievable() const { return achievable_; }

 private:
  double requested_;
  double achievable_;
};

/// a = 2 |h|^2 / (f_w sigma_w^2).
double snr_scale(const ChannelParams& ch);

/// (f_w / 2)(log2(1 + a P_r) + log2(1 + a P_i)).
double rate_gaussian(const PowerAllocation& alloc, const ChannelParams& ch);

double delivered_power(const PowerAllocation& alloc, const ChannelParams& ch);

/// Delivered power at the equal split (rate-maximizing corner).
double p_dc_min(double p_a, const ChannelParams& ch);
/// Delivered power with the whole budget on one axis (power-maximizing corner).
double p_dc_max(double p_a, const ChannelParams& ch);

RPPoint evaluate(const PowerAllocation& alloc, const ChannelParams& ch);

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr int kMaxBisectionIterations = 200;

/// Rate-maximizing zero-mean Gaussian split of budget p_a that delivers at
/// least p_d. `tol` is relative to p_d:
///   p_d <= P_dc,min            -> (p_a/2, p_a/2)
///   p_d within tol of P_dc,max -> (p_a, 0)
///   otherwise                  -> the split on P_r + P_i = p_a whose power
///                                 equals p_d, found by bisection on
///                                 P_i in [0, p_a/2].
/// The larger share is always reported on the real axis. Throws
/// InfeasibleTarget if p_d > P_dc,max (1 + tol), std::invalid_argument for
/// p_a <= 0, tol <= 0 or k4 < 0.
PowerAllocation optimal_allocation(double p_a, double p_d, const ChannelParams& ch,
                                   double tol = kDefaultTolerance);

/// Frontier sweep over P_i = j p_a / (2 (n_points - 1)), j = 0..n_points-1.
/// Rates are nondecreasing and powers nonincreasing along the result.
std::vector<RPPoint> rp_region(double p_a, const ChannelParams& ch, std::size_t n_points);

/// Multipliers and residuals of the KKT system of the mean/variance problem
///   max (f_w/2) sum log2(1 + a sigma^2)
///   s.t. P_r + P_i <= P_a, P_del >= P_d, sigma_r^2, sigma_i^2 >= 0.
///
/// Stationarity residuals are divided by c1 a (the rate slope at zero
/// power), so they are dimensionless.
struct KktReport {
  double lambda1 = 0.0;  // budget multiplier
  double lambda2 = 0.0;  // delivered-power multiplier
  double zeta_r = 0.0;
  double zeta_i = 0.0;
  double stationarity_residual_p_r = 0.0;
  double stationarity_residual_p_i = 0.0;
  double stationarity_residual_mu_r = 0.0;
  double stationarity_residual_mu_i = 0.0;
  bool primal_feasible = false;
  bool dual_feasible = false;
  bool complementary_slackness_ok = false;
  bool budget_active = false;
  bool power_active = false;
  double tolerance = 0.0;

  double max_residual() const;
  /// Every condition holds to `tolerance`.
  bool ok() const;
};

/// Evaluates the KKT conditions at (alloc, mu). Multipliers are fixed by
/// complementary slackness first (a multiplier is free only when its
/// constraint is active), the free ones are fitted to the P-stationarity
/// equations, and whatever is left over is reported as residual. The
/// P-derivative of the delivered power is 2(alpha + alpha~)(3 P_own +
/// P_other) + beta + beta~ in both dimensions.
KktReport kkt_check(const PowerAllocation& alloc, double mu_r, double mu_i, double p_a,
                    double p_d, const ChannelParams& ch, double tol);

}  // namespace swipt::tradeoff
