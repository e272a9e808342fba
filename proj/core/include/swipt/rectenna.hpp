#pragma once

#include <complex>

#include "swipt/moments.hpp"

namespace swipt {

/// Flat-fading channel plus the truncated diode model k2 y^2 + k4 y^4.
///
/// `h` is the gain seen at the symbol instants t = k / f_w, `h_tilde` the
/// gain at the half-symbol instants t = (2k + 1) / (2 f_w). Defaults are the
/// reference setting used throughout the tests (unit gains, k2 = 0.17,
/// k4 = 19.145, noise variance 1e-4, unit bandwidth).
struct ChannelParams {
  std::complex<double> h{1.0, 0.0};
  std::complex<double> h_tilde{1.0, 0.0};
  double sigma_w2 = 1e-4;
  double f_w = 1.0;
  double k2 = 0.17;
  double k4 = 19.145;

  /// Throws std::invalid_argument unless sigma_w2 > 0 and f_w > 0.
  void validate() const;

  bool operator==(const ChannelParams&) const = default;
};

struct RectennaCoeffs {
  double alpha = 0.0;
  double alpha_tilde = 0.0;
  double beta = 0.0;
  double beta_tilde = 0.0;
  double gamma = 0.0;
};

RectennaCoeffs coeffs(const ChannelParams& ch);

/// alpha Q + alpha~ Q~ + (beta + beta~) P + gamma. The output is a diode
/// current in the model's units; it is reported as "power" unscaled.
double delivered_power(const MomentProfile& profile, const ChannelParams& ch);

/// Specialization to zero-mean Gaussian inputs, where Q = Q~ =
/// 3(P_r^2 + P_i^2) + 2 P_r P_i.
double delivered_power_gaussian_zero_mean(double p_r, double p_i, const ChannelParams& ch);

/// Expected time average (k2 <|Y|^2> + 3/2 k4 <|Y|^4>) / f_w of a waveform
/// whose symbol and half-symbol samples carry h X + W and h~ X~ + W~:
/// alpha Q + alpha~ Q~ + (beta + beta~) P / 2 + gamma. delivered_power()
/// carries twice this P coefficient; the waveform simulator estimates this
/// quantity.
double time_averaged_power(const MomentProfile& profile, const ChannelParams& ch);

/// E|Y_k|^4 for Y_k = h X + W with CSCG noise:
/// |h|^4 Q + 4 sigma^2 |h|^2 P + 2 sigma^4.
double even_sample_fourth_moment(const MomentProfile& profile, const ChannelParams& ch);

}  // namespace swipt
