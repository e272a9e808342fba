#pragma once

#include <nlohmann/json.hpp>

#include "swipt/moments.hpp"
#include "swipt/rectenna.hpp"
#include "swipt/series.hpp"
#include "swipt/simulate.hpp"
#include "swipt/tradeoff.hpp"

// JSON encodings. Complex numbers are [re, im] pairs. Decoding rejects
// unknown keys and, where a type has invariants, validates the result.
//
//   MomentProfile       {"mu_r","mu_i","P_r","P_i","T_r","T_i","Q_r","Q_i"}
//   ChannelParams       {"h","h_tilde","sigma_w2","f_w","k2","k4"}
//   InputDistribution   {"kind": "gaussian_zero_mean", "P_r", "P_i"}
//                       {"kind": "gaussian_general", "mu_r", "mu_i", "var_r", "var_i"}
//                       {"kind": "constellation", "points": [[re, im], ...], "probs": [...]}

namespace swipt {

/// Malformed or unexpected JSON content.
class JsonFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws JsonFormatError if `j` is not an object or has keys outside `allowed`.
void require_keys(const nlohmann::json& j, std::initializer_list<std::string_view> allowed,
                  std::string_view what);

nlohmann::json complex_to_json(std::complex<double> z);
std::complex<double> complex_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const MomentProfile& m);
void from_json(const nlohmann::json& j, MomentProfile& m);

void to_json(nlohmann::json& j, const ChannelParams& ch);
void from_json(const nlohmann::json& j, ChannelParams& ch);

void to_json(nlohmann::json& j, const RectennaCoeffs& c);

}  // namespace swipt

namespace swipt::series {
void to_json(nlohmann::json& j, const SeriesReport& r);
}

namespace swipt::simulate {
void to_json(nlohmann::json& j, const InputDistribution& d);
void from_json(const nlohmann::json& j, InputDistribution& d);
void to_json(nlohmann::json& j, const McEstimate& e);
}  // namespace swipt::simulate

namespace swipt::tradeoff {
void to_json(nlohmann::json& j, const PowerAllocation& a);
void to_json(nlohmann::json& j, const RPPoint& p);
void to_json(nlohmann::json& j, const KktReport& r);
}  // namespace swipt::tradeoff
