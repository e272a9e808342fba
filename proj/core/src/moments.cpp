#include "swipt/moments.hpp"

#include <cmath>
#include <sstream>

namespace swipt {

namespace {

// Empirical moments satisfy the inequalities exactly in real arithmetic but
// can miss by a few ulps after rounding.
constexpr double kSlack = 1e-12;

bool below(double value, double bound) {
  return value < bound - kSlack * std::max(1.0, std::abs(bound));
}

void check_dimension(const char* axis, double mu, double p, double t, double q) {
  if (!std::isfinite(mu) || !std::isfinite(p) || !std::isfinite(t) || !std::isfinite(q)) {
    throw InvalidProfile(std::string("non-finite moment on ") + axis + " axis");
  }
  if (p < 0.0 || q < 0.0) {
    throw InvalidProfile(std::string("negative even moment on ") + axis + " axis");
  }
  if (below(p, mu * mu)) {
    throw InvalidProfile(std::string("variance violation: P_") + axis + " < mu_" + axis +
                         "^2");
  }
  if (below(q, p * p)) {
    throw InvalidProfile(std::string("Jensen violation: Q_") + axis + " < P_" + axis +
                         "^2");
  }
}

}  // namespace

void MomentProfile::validate() const {
  check_dimension("r", mu_r, p_r, t_r, q_r);
  check_dimension("i", mu_i, p_i, t_i, q_i);
}

double q_tilde(const MomentProfile& m) {
  return (m.q_r + m.q_i + 2.0 * (m.mu_r * m.t_r + m.mu_i * m.t_i) + 6.0 * m.p_r * m.p_i +
          6.0 * m.p_r * (m.p_r - m.mu_r * m.mu_r) + 6.0 * m.p_i * (m.p_i - m.mu_i * m.mu_i)) /
         3.0;
}

DerivedMoments derive(const MomentProfile& m) {
  DerivedMoments d{};
  d.power = m.p_r + m.p_i;
  d.fourth = m.q_r + m.q_i + 2.0 * m.p_r * m.p_i;
  d.mean = {m.mu_r, m.mu_i};
  // E[(a + jb)^2] with E[ab] = mu_r mu_i.
  d.p_bar = {m.p_r - m.p_i, 2.0 * m.mu_r * m.mu_i};
  // E[(a^2 + b^2)(a + jb)].
  d.t_bar = {m.t_r + m.mu_r * m.p_i, m.t_i + m.mu_i * m.p_r};
  d.q_tilde = q_tilde(m);
  return d;
}

double q_tilde_intermediate(const MomentProfile& m) {
  const DerivedMoments d = derive(m);
  const double mu2 = std::norm(d.mean);
  const std::complex<double> mu_conj = std::conj(d.mean);
  return (d.fourth + 4.0 * d.power * (d.power - mu2) +
          2.0 * (std::norm(d.p_bar) - std::real(d.p_bar * mu_conj * mu_conj)) +
          2.0 * std::real(d.t_bar * mu_conj)) /
         3.0;
}

MomentProfile gaussian_profile(double mu_r, double mu_i, double var_r, double var_i) {
  if (!(var_r >= 0.0) || !(var_i >= 0.0)) {
    throw std::invalid_argument("Gaussian variances must be nonnegative");
  }
  auto fill = [](double mu, double var, double& p, double& t, double& q) {
    p = mu * mu + var;
    t = mu * mu * mu + 3.0 * mu * var;
    q = mu * mu * mu * mu + 6.0 * mu * mu * var + 3.0 * var * var;
  };
  MomentProfile m;
  m.mu_r = mu_r;
  m.mu_i = mu_i;
  fill(mu_r, var_r, m.p_r, m.t_r, m.q_r);
  fill(mu_i, var_i, m.p_i, m.t_i, m.q_i);
  return m;
}

MomentProfile empirical_profile(std::span<const std::complex<double>> samples) {
  if (samples.size() < 2) {
    throw std::invalid_argument("empirical_profile needs at least two samples");
  }
  MomentProfile m;
  for (const auto& x : samples) {
    const double a = x.real(), b = x.imag();
    const double a2 = a * a, b2 = b * b;
    m.mu_r += a;
    m.mu_i += b;
    m.p_r += a2;
    m.p_i += b2;
    m.t_r += a2 * a;
    m.t_i += b2 * b;
    m.q_r += a2 * a2;
    m.q_i += b2 * b2;
  }
  const double n = static_cast<double>(samples.size());
  for (double* v : {&m.mu_r, &m.mu_i, &m.p_r, &m.p_i, &m.t_r, &m.t_i, &m.q_r, &m.q_i}) {
    *v /= n;
  }
  return m;
}

std::string describe(const MomentProfile& m) {
  std::ostringstream os;
  os.precision(17);
  os << "mu=(" << m.mu_r << ", " << m.mu_i << ") P=(" << m.p_r << ", " << m.p_i
     << ") T=(" << m.t_r << ", " << m.t_i << ") Q=(" << m.q_r << ", " << m.q_i << ")";
  return os.str();
}

}  // namespace swipt
