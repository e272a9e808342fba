#include "swipt/simulate.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "swipt/series.hpp"

namespace swipt::simulate {

namespace {

using cd = std::complex<double>;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

// Runs fn(block) for every block and returns the results in block order.
template <typename Result, typename Fn>
std::vector<Result> run_blocks(std::size_t n_blocks, unsigned threads, Fn fn) {
  std::vector<Result> out(n_blocks);
  const unsigned n_workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), n_blocks));
  if (n_workers <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) out[b] = fn(b);
    return out;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> workers;
    workers.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
      workers.emplace_back([&] {
        for (std::size_t b = next++; b < n_blocks; b = next++) out[b] = fn(b);
      });
    }
  }
  return out;
}

McEstimate summarize(std::span<const double> values, std::uint64_t seed) {
  const auto n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = values.size() > 1 ? ss / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n), values.size(), seed};
}

// Taps of sum_l x[k - l] s_l, l in [-window, window - 1].
std::vector<double> half_sample_taps(std::size_t window) {
  std::vector<double> taps(2 * window);
  const auto w = static_cast<std::int64_t>(window);
  for (std::int64_t l = -w; l < w; ++l) taps[static_cast<std::size_t>(l + w)] = series::s_coeff(l);
  return taps;
}

double sinc(double x) {
  if (x == 0.0) return 1.0;
  return std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
}

}  // namespace

void validate(const InputDistribution& dist) {
  std::visit(
      [](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, GaussianZeroMean>) {
          if (!(d.p_r >= 0.0) || !(d.p_i >= 0.0)) {
            throw std::invalid_argument("Gaussian powers must be nonnegative");
          }
        } else if constexpr (std::is_same_v<T, GaussianGeneral>) {
          if (!(d.var_r >= 0.0) || !(d.var_i >= 0.0)) {
            throw std::invalid_argument("Gaussian variances must be nonnegative");
          }
          if (!std::isfinite(d.mu_r) || !std::isfinite(d.mu_i)) {
            throw std::invalid_argument("Gaussian means must be finite");
          }
        } else {
          if (d.points.empty()) throw std::invalid_argument("constellation is empty");
          if (d.points.size() != d.probs.size()) {
            throw std::invalid_argument("constellation points and probs differ in length");
          }
          double total = 0.0;
          for (double p : d.probs) {
            if (!(p >= 0.0)) throw std::invalid_argument("negative constellation probability");
            total += p;
          }
          if (std::abs(total - 1.0) > 1e-12) {
            throw std::invalid_argument("constellation probabilities do not sum to 1");
          }
        }
      },
      dist);
}

MomentProfile analytic_profile(const InputDistribution& dist) {
  validate(dist);
  if (const auto* g = std::get_if<GaussianZeroMean>(&dist)) {
    return gaussian_profile(0.0, 0.0, g->p_r, g->p_i);
  }
  if (const auto* g = std::get_if<GaussianGeneral>(&dist)) {
    return gaussian_profile(g->mu_r, g->mu_i, g->var_r, g->var_i);
  }
  const auto& c = std::get<FiniteConstellation>(dist);
  MomentProfile m;
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    const double w = c.probs[i];
    const double a = c.points[i].real(), b = c.points[i].imag();
    m.mu_r += w * a;
    m.mu_i += w * b;
    m.p_r += w * a * a;
    m.p_i += w * b * b;
    m.t_r += w * a * a * a;
    m.t_i += w * b * b * b;
    m.q_r += w * a * a * a * a;
    m.q_i += w * b * b * b * b;
  }
  return m;
}

FiniteConstellation qpsk() {
  const double a = 1.0 / std::numbers::sqrt2;
  return {{cd{a, a}, cd{-a, a}, cd{-a, -a}, cd{a, -a}}, {0.25, 0.25, 0.25, 0.25}};
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index));
}

SymbolSampler::SymbolSampler(const InputDistribution& dist) : dist_(dist) {
  validate(dist_);
  if (const auto* c = std::get_if<FiniteConstellation>(&dist_)) {
    pick_ = std::discrete_distribution<std::size_t>(c->probs.begin(), c->probs.end());
  }
}

cd SymbolSampler::operator()(std::mt19937_64& rng) {
  if (const auto* g = std::get_if<GaussianZeroMean>(&dist_)) {
    const double a = std::sqrt(g->p_r) * normal_(rng);
    const double b = std::sqrt(g->p_i) * normal_(rng);
    return {a, b};
  }
  if (const auto* g = std::get_if<GaussianGeneral>(&dist_)) {
    const double a = g->mu_r + std::sqrt(g->var_r) * normal_(rng);
    const double b = g->mu_i + std::sqrt(g->var_i) * normal_(rng);
    return {a, b};
  }
  const auto& c = std::get<FiniteConstellation>(dist_);
  return c.points[pick_(rng)];
}

std::vector<cd> draw_symbols(const InputDistribution& dist, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("draw_symbols needs n >= 1");
  SymbolSampler sampler(dist);
  std::mt19937_64 rng(substream_seed(seed, 0));
  std::vector<cd> out(n);
  for (auto& x : out) x = sampler(rng);
  return out;
}

cd half_sample_value(std::span<const cd> symbols, std::int64_t k, std::size_t window) {
  if (window == 0) throw std::invalid_argument("window must be positive");
  const auto w = static_cast<std::int64_t>(window);
  const auto n = static_cast<std::int64_t>(symbols.size());
  if (k - w + 1 < 0 || k + w > n - 1) {
    throw std::out_of_range("half_sample_value: window exceeds available symbols");
  }
  cd acc{0.0, 0.0};
  for (std::int64_t l = -w; l < w; ++l) {
    acc += symbols[static_cast<std::size_t>(k - l)] * series::s_coeff(l);
  }
  return acc;
}

McEstimate mc_q_tilde(const InputDistribution& dist, std::size_t n_blocks, std::size_t window,
                      std::uint64_t seed, unsigned threads) {
  validate(dist);
  if (n_blocks < 2) throw std::invalid_argument("mc_q_tilde needs at least two blocks");
  if (window == 0) throw std::invalid_argument("window must be positive");

  const std::vector<double> taps = half_sample_taps(window);
  const auto values = run_blocks<double>(n_blocks, threads, [&](std::size_t b) {
    SymbolSampler sampler(dist);
    std::mt19937_64 rng(substream_seed(seed, b));
    // The draws are i.i.d., so which symbol meets which tap is immaterial.
    cd acc{0.0, 0.0};
    for (double tap : taps) acc += sampler(rng) * tap;
    const double m2 = std::norm(acc);
    return m2 * m2;
  });
  return summarize(values, seed);
}

McPowerReport mc_delivered_power(const InputDistribution& dist, const ChannelParams& ch,
                                 const McPowerConfig& config) {
  validate(dist);
  ch.validate();
  if (config.oversample < 2) {
    throw std::invalid_argument("oversample must be >= 2 (|Y|^2 aliases on coarser grids)");
  }
  if (config.n_symbols < 1000) throw std::invalid_argument("n_symbols must be >= 1000");
  if (config.window == 0) throw std::invalid_argument("window must be positive");
  if (config.block_size == 0) throw std::invalid_argument("block_size must be positive");

  std::size_t block = config.block_size;
  std::size_t n_blocks = config.n_symbols / block;
  if (n_blocks < 10) {
    n_blocks = 10;
    block = config.n_symbols / n_blocks;
  }

  const std::size_t L = config.oversample;
  const std::size_t W = config.window;
  const auto Wi = static_cast<std::int64_t>(W);
  const std::vector<double> taps = half_sample_taps(W);

  // Interpolation kernels on the half-rate grid for each fractional offset
  // r / L; taps d in [-2W + 1, 2W].
  std::vector<std::vector<double>> kernels(L);
  for (std::size_t r = 1; r < L; ++r) {
    const double phi = static_cast<double>(r) / static_cast<double>(L);
    auto& ker = kernels[r];
    ker.reserve(4 * W);
    for (std::int64_t d = -2 * Wi + 1; d <= 2 * Wi; ++d) {
      ker.push_back(sinc(phi - static_cast<double>(d)));
    }
  }

  const double k2 = ch.k2, k4 = ch.k4, fw = ch.f_w;
  const double noise_sd = std::sqrt(ch.sigma_w2 / 2.0);
  const cd h = ch.h, ht = ch.h_tilde;

  struct BlockStats {
    std::array<double, 4> v{};
  };

  const auto stats = run_blocks<BlockStats>(n_blocks, config.threads, [&](std::size_t b) {
    SymbolSampler sampler(dist);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::mt19937_64 rng(substream_seed(config.seed, b));

    const auto C = static_cast<std::int64_t>(block);
    // Symbols n in [-2W, C + 2W]; x[n + 2W].
    std::vector<cd> x(static_cast<std::size_t>(C + 4 * Wi + 1));
    for (auto& v : x) v = sampler(rng);

    // Half-rate samples m in [-2W, 2C + 2W + 1]; grid[m + 2W]. Even m = 2k
    // is the symbol instant k, odd m = 2k + 1 the half-symbol instant.
    std::vector<cd> grid(static_cast<std::size_t>(2 * C + 4 * Wi + 2));
    for (std::int64_t k = -Wi; k <= C + Wi; ++k) {
      const cd xk = x[static_cast<std::size_t>(k + 2 * Wi)];
      cd xt{0.0, 0.0};
      // sum_l x_{k-l} s_l; taps[l + W].
      for (std::int64_t l = -Wi; l < Wi; ++l) {
        xt += x[static_cast<std::size_t>(k - l + 2 * Wi)] * taps[static_cast<std::size_t>(l + Wi)];
      }
      const cd w_even{noise_sd * normal(rng), noise_sd * normal(rng)};
      const cd w_odd{noise_sd * normal(rng), noise_sd * normal(rng)};
      grid[static_cast<std::size_t>(2 * k + 2 * Wi)] = h * xk + w_even;
      grid[static_cast<std::size_t>(2 * k + 1 + 2 * Wi)] = ht * xt + w_odd;
    }

    double even2 = 0.0, even4 = 0.0, odd2 = 0.0, odd4 = 0.0;
    for (std::int64_t k = 0; k < C; ++k) {
      const double e = std::norm(grid[static_cast<std::size_t>(2 * k + 2 * Wi)]);
      const double o = std::norm(grid[static_cast<std::size_t>(2 * k + 1 + 2 * Wi)]);
      even2 += e;
      even4 += e * e;
      odd2 += o;
      odd4 += o * o;
    }
    const double cn = static_cast<double>(C);
    const double half_rate =
        (k2 * (even2 + odd2) / (2.0 * cn) + 1.5 * k4 * (even4 + odd4) / (2.0 * cn)) / fw;

    double fine2 = 0.0, fine4 = 0.0;
    for (std::int64_t k = 0; k < C; ++k) {
      for (std::size_t j = 0; j < L; ++j) {
        const std::size_t v = 2 * j;
        const auto base = 2 * k + static_cast<std::int64_t>(v / L);
        const std::size_t r = v % L;
        cd y;
        if (r == 0) {
          y = grid[static_cast<std::size_t>(base + 2 * Wi)];
        } else {
          const auto& ker = kernels[r];
          const cd* src = &grid[static_cast<std::size_t>(base - 2 * Wi + 1 + 2 * Wi)];
          double re = 0.0, im = 0.0;
          for (std::size_t t = 0; t < ker.size(); ++t) {
            re += src[t].real() * ker[t];
            im += src[t].imag() * ker[t];
          }
          y = {re, im};
        }
        const double p = std::norm(y);
        fine2 += p;
        fine4 += p * p;
      }
    }
    const double fn = cn * static_cast<double>(L);
    const double oversampled = (k2 * fine2 / fn + 1.5 * k4 * fine4 / fn) / fw;

    return BlockStats{{oversampled, half_rate, even4 / cn, odd4 / cn}};
  });

  McPowerReport report;
  std::vector<double> column(n_blocks);
  auto take = [&](std::size_t idx) {
    for (std::size_t b = 0; b < n_blocks; ++b) column[b] = stats[b].v[idx];
    return summarize(column, config.seed);
  };
  report.oversampled = take(0);
  report.half_rate = take(1);
  report.even_fourth = take(2);
  report.odd_fourth = take(3);
  report.n_symbols = n_blocks * block;
  report.n_blocks = n_blocks;
  return report;
}

McEstimate mc_delivered_power(const InputDistribution& dist, const ChannelParams& ch,
                              std::size_t n_symbols, std::size_t oversample, std::uint64_t seed,
                              PowerEstimator estimator) {
  McPowerConfig config;
  config.n_symbols = n_symbols;
  config.oversample = oversample;
  config.seed = seed;
  const McPowerReport r = mc_delivered_power(dist, ch, config);
  return estimator == PowerEstimator::Oversampled ? r.oversampled : r.half_rate;
}

}  // namespace swipt::simulate
