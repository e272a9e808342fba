#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>

namespace swipt {

/// Raised when a moment set cannot come from any distribution with
/// independent real and imaginary parts. The message names the violated
/// condition ("variance violation", "Jensen violation", ...).
class InvalidProfile : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Per-dimension moments of one channel-input symbol X = Re{X} + j Im{X}.
///
/// The real and imaginary parts are treated as independent: every derived
/// quantity (Q, pseudo-variance, ...) factorizes across the two dimensions.
struct MomentProfile {
  double mu_r = 0.0, mu_i = 0.0;  // E[Re X], E[Im X]
  double p_r = 0.0, p_i = 0.0;    // second moments
  double t_r = 0.0, t_i = 0.0;    // third moments
  double q_r = 0.0, q_i = 0.0;    // fourth moments

  /// Throws InvalidProfile if the moment set is infeasible.
  void validate() const;

  bool operator==(const MomentProfile&) const = default;
};

/// Whole-symbol moments assembled from a MomentProfile.
struct DerivedMoments {
  double power;                 // P = E|X|^2
  double fourth;                // Q = E|X|^4
  std::complex<double> mean;    // mu = E[X]
  std::complex<double> p_bar;   // E[X^2]
  std::complex<double> t_bar;   // E[|X|^2 X]
  double q_tilde;               // E|X~|^4 of the half-sample interpolant
};

DerivedMoments derive(const MomentProfile& profile);

/// Fourth moment of X~ = sum_n X_n s_{k-n}, written in per-dimension moments.
double q_tilde(const MomentProfile& profile);

/// Same quantity from the complex-moment form
/// (Q + 4P(P - |mu|^2) + 2(|Pbar|^2 - Re{Pbar mu*^2}) + 2 Re{Tbar mu*}) / 3.
double q_tilde_intermediate(const MomentProfile& profile);

/// Independent Gaussian real/imaginary parts with the given means and
/// variances. Throws std::invalid_argument on negative variance.
MomentProfile gaussian_profile(double mu_r, double mu_i, double var_r, double var_i);

/// Plain sample averages (no bias correction). Needs at least two samples.
MomentProfile empirical_profile(std::span<const std::complex<double>> samples);

std::string describe(const MomentProfile& profile);

}  // namespace swipt
