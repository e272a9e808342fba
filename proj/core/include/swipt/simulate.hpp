#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "swipt/moments.hpp"
#include "swipt/rectenna.hpp"

namespace swipt::simulate {

// Input symbol laws. Real and imaginary parts are drawn independently for
// the Gaussian families; constellations are drawn as points.

struct GaussianZeroMean {
  double p_r = 0.5;
  double p_i = 0.5;
};

struct GaussianGeneral {
  double mu_r = 0.0;
  double mu_i = 0.0;
  double var_r = 0.5;
  double var_i = 0.5;
};

struct FiniteConstellation {
  std::vector<std::complex<double>> points;
  std::vector<double> probs;
};

using InputDistribution = std::variant<GaussianZeroMean, GaussianGeneral, FiniteConstellation>;

/// Throws std::invalid_argument for negative variances, empty or mismatched
/// constellations, negative probabilities, or probabilities not summing to 1
/// within 1e-12.
void validate(const InputDistribution& dist);

/// Exact per-dimension moments of the law. The closed forms built on a
/// profile assume independent components, which holds for the Gaussian
/// families and for product constellations such as QPSK.
MomentProfile analytic_profile(const InputDistribution& dist);

/// Unit-power QPSK, (+-1 +- j)/sqrt(2) equiprobable.
FiniteConstellation qpsk();

/// Mean and standard error of per-block estimates. `n_samples` counts the
/// blocks the standard error is taken over.
struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Seed of the independent substream `index` of a run seeded with `seed`.
/// Every block draws from its own substream, so results do not depend on
/// how blocks are scheduled across threads.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

/// Draws one symbol per call.
class SymbolSampler {
 public:
  explicit SymbolSampler(const InputDistribution& dist);
  std::complex<double> operator()(std::mt19937_64& rng);

 private:
  InputDistribution dist_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::discrete_distribution<std::size_t> pick_;
};

/// n i.i.d. symbols, deterministic in (dist, n, seed).
std::vector<std::complex<double>> draw_symbols(const InputDistribution& dist, std::size_t n,
                                               std::uint64_t seed);

/// X~_k = sum_l X_{k-l} s_l over l in [-window, window-1], i.e. the
/// band-limited signal at t = k + 1/2 symbol periods from the 2*window
/// nearest symbols. Throws std::out_of_range if the symbols do not cover
/// indices [k - window + 1, k + window].
std::complex<double> half_sample_value(std::span<const std::complex<double>> symbols,
                                       std::int64_t k, std::size_t window);

/// Estimates E|X~|^4, one independent interpolated value per block.
McEstimate mc_q_tilde(const InputDistribution& dist, std::size_t n_blocks, std::size_t window,
                      std::uint64_t seed, unsigned threads = 0);

enum class PowerEstimator {
  Oversampled,  // time average of the interpolated waveform on a fine grid
  HalfRate,     // average over the symbol and half-symbol samples
};

struct McPowerConfig {
  std::size_t n_symbols = 200000;
  std::size_t oversample = 8;
  std::size_t window = 512;
  std::size_t block_size = 1000;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// All statistics gathered by one waveform run.
struct McPowerReport {
  McEstimate oversampled;   // delivered power, fine-grid time average
  McEstimate half_rate;     // delivered power, half-symbol-rate samples
  McEstimate even_fourth;   // E|Y_k|^4 at symbol instants
  McEstimate odd_fourth;    // E|Y~_k|^4 at half-symbol instants
  std::size_t n_symbols = 0;  // symbols inside the averaged regions
  std::size_t n_blocks = 0;
};

/// Waveform simulation of the receiver.
///
/// Symbol-instant samples are Y_k = h X_k + W_k and half-symbol samples are
/// Y~_k = h~ X~_k + W~_k with independent CSCG noise of variance sigma_w2 at
/// every sample. The waveform between samples is the band-limited
/// interpolation of this half-rate grid. Delivered power is estimated as
/// (k2 <|Y|^2> + 3/2 k4 <|Y|^4>) / f_w, where <.> is the time average;
/// 3/2 comes from averaging the carrier out of Y_rf^4.
///
/// Each block simulates `block_size` symbols plus a guard of 2*window
/// symbols on each side that feeds the interpolators but is excluded from
/// the averages. Throws std::invalid_argument if oversample < 2 (the grid
/// would alias |Y|^2) or n_symbols < 1000.
McPowerReport mc_delivered_power(const InputDistribution& dist, const ChannelParams& ch,
                                 const McPowerConfig& config);

McEstimate mc_delivered_power(const InputDistribution& dist, const ChannelParams& ch,
                              std::size_t n_symbols, std::size_t oversample, std::uint64_t seed,
                              PowerEstimator estimator = PowerEstimator::Oversampled);

}  // namespace swipt::simulate
