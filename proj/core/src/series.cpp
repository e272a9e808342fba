#include "swipt/series.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace swipt::series {

namespace {

constexpr std::array<std::string_view, 9> kNames = {"T0", "T1", "S0", "S1", "S2",
                                                    "S3", "S4", "S5", "S6"};

// Compensated (Neumaier) accumulator; the brute-force sums add millions of
// terms of mixed sign.
class Accumulator {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

std::vector<double> window_values(std::size_t n) {
  std::vector<double> s;
  s.reserve(2 * n);
  const auto lo = -static_cast<std::int64_t>(n);
  for (std::int64_t l = lo; l < static_cast<std::int64_t>(n); ++l) {
    s.push_back(s_coeff(l));
  }
  return s;
}

}  // namespace

std::string_view name(SeriesId id) { return kNames[static_cast<std::size_t>(id)]; }

std::optional<SeriesId> parse_series_id(std::string_view text) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == text) return static_cast<SeriesId>(i);
  }
  return std::nullopt;
}

double s_coeff(std::int64_t l) {
  const double sign = (l % 2 == 0) ? 1.0 : -1.0;
  return 2.0 * sign / (std::numbers::pi * static_cast<double>(2 * l + 1));
}

double analytic_value(SeriesId id) {
  switch (id) {
    case SeriesId::T0: return 1.0;
    case SeriesId::T1: return 0.5;
    case SeriesId::S0: return 1.0;
    case SeriesId::S1: return 0.0;
    case SeriesId::S2: return 0.0;
    case SeriesId::S3: return 2.0 / 3.0;
    case SeriesId::S4: return -1.0 / 3.0;
    case SeriesId::S5: return 1.0 / 3.0;
    // T1*T0 - S5 = 1/2 - 1/3.
    case SeriesId::S6: return 1.0 / 6.0;
  }
  throw std::invalid_argument("unknown series id");
}

PowerSums window_power_sums(std::size_t n_terms) {
  if (n_terms == 0) throw std::invalid_argument("n_terms must be positive");
  // Pair (l, -l-1): both indices carry the same value, so each pair
  // contributes 2 s_l^j. Summing from the tail keeps small terms intact.
  Accumulator a1, a2, a3, a4;
  for (auto l = static_cast<std::int64_t>(n_terms) - 1; l >= 0; --l) {
    const double s = s_coeff(l);
    const double s2 = s * s;
    a1.add(2.0 * s);
    a2.add(2.0 * s2);
    a3.add(2.0 * s2 * s);
    a4.add(2.0 * s2 * s2);
  }
  return {a1.value(), a2.value(), a3.value(), a4.value()};
}

double from_power_sums(SeriesId id, const PowerSums& p) {
  const double p1 = p.p1, p2 = p.p2, p3 = p.p3, p4 = p.p4;
  switch (id) {
    case SeriesId::T0: return p1;
    case SeriesId::T1: return p3;
    case SeriesId::S0: return p2;
    case SeriesId::S5: return p4;
    // sum_{k != l} s_l s_k
    case SeriesId::S1: return p1 * p1 - p2;
    // sum_{k != l} s_l^2 s_k^2
    case SeriesId::S3: return p2 * p2 - p4;
    // sum_{k != l} s_l^3 s_k
    case SeriesId::S6: return p3 * p1 - p4;
    // sum over distinct (l, k, d) of s_l^2 s_k s_d
    case SeriesId::S4: return p2 * p1 * p1 - 2.0 * p1 * p3 + 2.0 * p4 - p2 * p2;
    // sum over distinct (l, k, d, m) of s_l s_k s_d s_m
    case SeriesId::S2:
      return p1 * p1 * p1 * p1 - 6.0 * p1 * p1 * p2 + 3.0 * p2 * p2 + 8.0 * p1 * p3 -
             6.0 * p4;
  }
  throw std::invalid_argument("unknown series id");
}

double partial_sum(SeriesId id, std::size_t n_terms) {
  return from_power_sums(id, window_power_sums(n_terms));
}

double brute_force_sum(SeriesId id, std::size_t window) {
  if (window == 0) throw std::invalid_argument("window must be positive");
  const bool higher = id == SeriesId::S2 || id == SeriesId::S4;
  const bool two = id == SeriesId::S1 || id == SeriesId::S3 || id == SeriesId::S6;
  if (higher && window > kMaxHigherSumWindow) {
    throw std::invalid_argument("brute force for " + std::string(name(id)) +
                                " limited to window " +
                                std::to_string(kMaxHigherSumWindow));
  }
  if (two && window > kMaxDoubleSumWindow) {
    throw std::invalid_argument("brute force for " + std::string(name(id)) +
                                " limited to window " +
                                std::to_string(kMaxDoubleSumWindow));
  }

  const std::vector<double> s = window_values(window);
  const std::size_t n = s.size();
  Accumulator acc;
  switch (id) {
    case SeriesId::T0:
      for (double v : s) acc.add(v);
      break;
    case SeriesId::T1:
      for (double v : s) acc.add(v * v * v);
      break;
    case SeriesId::S0:
      for (double v : s) acc.add(v * v);
      break;
    case SeriesId::S5:
      for (double v : s) acc.add(v * v * v * v);
      break;
    case SeriesId::S1:
    case SeriesId::S3:
    case SeriesId::S6:
      for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t k = 0; k < n; ++k) {
          if (k == l) continue;
          const double a = s[l], b = s[k];
          if (id == SeriesId::S1) {
            acc.add(a * b);
          } else if (id == SeriesId::S3) {
            acc.add(a * a * b * b);
          } else {
            acc.add(a * a * a * b);
          }
        }
      }
      break;
    case SeriesId::S4:
      for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t k = 0; k < n; ++k) {
          if (k == l) continue;
          for (std::size_t d = 0; d < n; ++d) {
            if (d == l || d == k) continue;
            acc.add(s[l] * s[l] * s[k] * s[d]);
          }
        }
      }
      break;
    case SeriesId::S2:
      for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t k = 0; k < n; ++k) {
          if (k == l) continue;
          for (std::size_t d = 0; d < n; ++d) {
            if (d == l || d == k) continue;
            const double prod = s[l] * s[k] * s[d];
            for (std::size_t m = 0; m < n; ++m) {
              if (m == l || m == k || m == d) continue;
              acc.add(prod * s[m]);
            }
          }
        }
      }
      break;
  }
  return acc.value();
}

SeriesReport verify(SeriesId id, std::size_t n_terms) {
  const double analytic = analytic_value(id);
  const double partial = partial_sum(id, n_terms);
  return {id, analytic, partial, n_terms, std::abs(analytic - partial)};
}

std::vector<SeriesReport> verify_all(std::size_t n_terms) {
  const PowerSums sums = window_power_sums(n_terms);
  std::vector<SeriesReport> out;
  out.reserve(kAllSeries.size());
  for (SeriesId id : kAllSeries) {
    const double analytic = analytic_value(id);
    const double partial = from_power_sums(id, sums);
    out.push_back({id, analytic, partial, n_terms, std::abs(analytic - partial)});
  }
  return out;
}

}  // namespace swipt::series
