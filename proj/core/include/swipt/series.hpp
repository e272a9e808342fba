#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace swipt::series {

// Half-integer sinc samples s_l = sinc(l + 1/2) and the constants built from
// them. A window of size N always means the paired index set
// l in [-N, N-1]: N pairs (l, -l-1) with s_{-l-1} = s_l.

enum class SeriesId { T0, T1, S0, S1, S2, S3, S4, S5, S6 };

inline constexpr std::array<SeriesId, 9> kAllSeries = {
    SeriesId::T0, SeriesId::T1, SeriesId::S0, SeriesId::S1, SeriesId::S2,
    SeriesId::S3, SeriesId::S4, SeriesId::S5, SeriesId::S6};

std::string_view name(SeriesId id);
std::optional<SeriesId> parse_series_id(std::string_view text);

struct SeriesReport {
  SeriesId id;
  double analytic;
  double partial_sum;
  std::size_t truncation;
  double abs_error;
};

/// sinc(l + 1/2) = (-1)^l / (pi (l + 1/2)).
double s_coeff(std::int64_t l);

/// Closed-form limit of the series.
double analytic_value(SeriesId id);

/// Power sums p_j = sum_l s_l^j over the window of size n_terms.
struct PowerSums {
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
  double p4 = 0.0;
};

PowerSums window_power_sums(std::size_t n_terms);

/// Windowed value of a series from power sums. The multi-index series use
/// the exact finite-window reductions (index exclusions included), so the
/// result is the same finite sum brute_force_sum enumerates.
double from_power_sums(SeriesId id, const PowerSums& sums);

/// O(N) evaluation over l in [-n_terms, n_terms - 1]. Throws
/// std::invalid_argument for n_terms == 0.
double partial_sum(SeriesId id, std::size_t n_terms);

/// Direct enumeration of the defining (multi-)sum over the same window.
/// Limits: window <= 2000 for the double sums (S1, S3, S6), window <= 200
/// for S4 and S2. Single sums are accepted at any window.
double brute_force_sum(SeriesId id, std::size_t window);

inline constexpr std::size_t kMaxDoubleSumWindow = 2000;
inline constexpr std::size_t kMaxHigherSumWindow = 200;

SeriesReport verify(SeriesId id, std::size_t n_terms);
std::vector<SeriesReport> verify_all(std::size_t n_terms);

}  // namespace swipt::series
