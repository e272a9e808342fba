#include "swipt/rectenna.hpp"

#include <cmath>
#include <stdexcept>

namespace swipt {

void ChannelParams::validate() const {
  if (!(sigma_w2 > 0.0) || !std::isfinite(sigma_w2)) {
    throw std::invalid_argument("sigma_w2 must be positive and finite");
  }
  if (!(f_w > 0.0) || !std::isfinite(f_w)) {
    throw std::invalid_argument("f_w must be positive and finite");
  }
  if (!std::isfinite(k2) || !std::isfinite(k4) || !std::isfinite(std::abs(h)) ||
      !std::isfinite(std::abs(h_tilde))) {
    throw std::invalid_argument("channel parameters must be finite");
  }
}

RectennaCoeffs coeffs(const ChannelParams& ch) {
  ch.validate();
  const double g2 = std::norm(ch.h);
  const double gt2 = std::norm(ch.h_tilde);
  const double s2 = ch.sigma_w2;
  RectennaCoeffs c;
  c.alpha = 3.0 * ch.k4 * g2 * g2 / (4.0 * ch.f_w);
  c.alpha_tilde = 3.0 * ch.k4 * gt2 * gt2 / (4.0 * ch.f_w);
  c.beta = (ch.k2 + 6.0 * ch.k4 * s2) * g2 / ch.f_w;
  c.beta_tilde = (ch.k2 + 6.0 * ch.k4 * s2) * gt2 / ch.f_w;
  c.gamma = (ch.k2 * s2 + 3.0 * ch.k4 * s2 * s2) / ch.f_w;
  return c;
}

double delivered_power(const MomentProfile& profile, const ChannelParams& ch) {
  profile.validate();
  const RectennaCoeffs c = coeffs(ch);
  const DerivedMoments d = derive(profile);
  return c.alpha * d.fourth + c.alpha_tilde * d.q_tilde + (c.beta + c.beta_tilde) * d.power +
         c.gamma;
}

double time_averaged_power(const MomentProfile& profile, const ChannelParams& ch) {
  profile.validate();
  const RectennaCoeffs c = coeffs(ch);
  const DerivedMoments d = derive(profile);
  return c.alpha * d.fourth + c.alpha_tilde * d.q_tilde +
         0.5 * (c.beta + c.beta_tilde) * d.power + c.gamma;
}

double delivered_power_gaussian_zero_mean(double p_r, double p_i, const ChannelParams& ch) {
  if (!(p_r >= 0.0) || !(p_i >= 0.0)) {
    throw std::invalid_argument("power split must be nonnegative");
  }
  const RectennaCoeffs c = coeffs(ch);
  const double q = 3.0 * (p_r * p_r + p_i * p_i) + 2.0 * p_r * p_i;
  return (c.alpha + c.alpha_tilde) * q + (c.beta + c.beta_tilde) * (p_r + p_i) + c.gamma;
}

double even_sample_fourth_moment(const MomentProfile& profile, const ChannelParams& ch) {
  const DerivedMoments d = derive(profile);
  const double g2 = std::norm(ch.h);
  const double s2 = ch.sigma_w2;
  return g2 * g2 * d.fourth + 4.0 * s2 * g2 * d.power + 2.0 * s2 * s2;
}

}  // namespace swipt
