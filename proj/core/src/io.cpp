#include "swipt/io.hpp"

#include <algorithm>
#include <string>

namespace swipt {

using nlohmann::json;

namespace {

double number(const json& j, const char* key, std::string_view what) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw JsonFormatError(std::string(what) + ": missing key '" + key + "'");
  }
  if (!it->is_number()) {
    throw JsonFormatError(std::string(what) + ": key '" + key + "' must be a number");
  }
  return it->get<double>();
}

double number_or(const json& j, const char* key, double fallback, std::string_view what) {
  return j.contains(key) ? number(j, key, what) : fallback;
}

}  // namespace

void require_keys(const json& j, std::initializer_list<std::string_view> allowed,
                  std::string_view what) {
  if (!j.is_object()) throw JsonFormatError(std::string(what) + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw JsonFormatError(std::string(what) + ": unknown key '" + key + "'");
    }
  }
}

json complex_to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::complex<double> complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw JsonFormatError("complex numbers are encoded as [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

void to_json(json& j, const MomentProfile& m) {
  j = json{{"mu_r", m.mu_r}, {"mu_i", m.mu_i}, {"P_r", m.p_r}, {"P_i", m.p_i},
           {"T_r", m.t_r},   {"T_i", m.t_i},   {"Q_r", m.q_r}, {"Q_i", m.q_i}};
}

void from_json(const json& j, MomentProfile& m) {
  constexpr std::string_view what = "moment profile";
  require_keys(j, {"mu_r", "mu_i", "P_r", "P_i", "T_r", "T_i", "Q_r", "Q_i"}, what);
  MomentProfile out;
  out.mu_r = number(j, "mu_r", what);
  out.mu_i = number(j, "mu_i", what);
  out.p_r = number(j, "P_r", what);
  out.p_i = number(j, "P_i", what);
  out.t_r = number(j, "T_r", what);
  out.t_i = number(j, "T_i", what);
  out.q_r = number(j, "Q_r", what);
  out.q_i = number(j, "Q_i", what);
  out.validate();
  m = out;
}

void to_json(json& j, const ChannelParams& ch) {
  j = json{{"h", complex_to_json(ch.h)},
           {"h_tilde", complex_to_json(ch.h_tilde)},
           {"sigma_w2", ch.sigma_w2},
           {"f_w", ch.f_w},
           {"k2", ch.k2},
           {"k4", ch.k4}};
}

void from_json(const json& j, ChannelParams& ch) {
  constexpr std::string_view what = "channel";
  require_keys(j, {"h", "h_tilde", "sigma_w2", "f_w", "k2", "k4"}, what);
  ChannelParams out;
  if (j.contains("h")) out.h = complex_from_json(j.at("h"));
  if (j.contains("h_tilde")) out.h_tilde = complex_from_json(j.at("h_tilde"));
  out.sigma_w2 = number_or(j, "sigma_w2", out.sigma_w2, what);
  out.f_w = number_or(j, "f_w", out.f_w, what);
  out.k2 = number_or(j, "k2", out.k2, what);
  out.k4 = number_or(j, "k4", out.k4, what);
  out.validate();
  ch = out;
}

void to_json(json& j, const RectennaCoeffs& c) {
  j = json{{"alpha", c.alpha},
           {"alpha_tilde", c.alpha_tilde},
           {"beta", c.beta},
           {"beta_tilde", c.beta_tilde},
           {"gamma", c.gamma}};
}

}  // namespace swipt

namespace swipt::series {

void to_json(nlohmann::json& j, const SeriesReport& r) {
  j = nlohmann::json{{"id", std::string(name(r.id))},
                     {"analytic", r.analytic},
                     {"partial_sum", r.partial_sum},
                     {"truncation", r.truncation},
                     {"abs_error", r.abs_error}};
}

}  // namespace swipt::series

namespace swipt::simulate {

using nlohmann::json;

void to_json(json& j, const InputDistribution& d) {
  if (const auto* g = std::get_if<GaussianZeroMean>(&d)) {
    j = json{{"kind", "gaussian_zero_mean"}, {"P_r", g->p_r}, {"P_i", g->p_i}};
  } else if (const auto* g = std::get_if<GaussianGeneral>(&d)) {
    j = json{{"kind", "gaussian_general"},
             {"mu_r", g->mu_r},
             {"mu_i", g->mu_i},
             {"var_r", g->var_r},
             {"var_i", g->var_i}};
  } else {
    const auto& c = std::get<FiniteConstellation>(d);
    json points = json::array();
    for (const auto& p : c.points) points.push_back(complex_to_json(p));
    j = json{{"kind", "constellation"}, {"points", points}, {"probs", c.probs}};
  }
}

void from_json(const json& j, InputDistribution& d) {
  constexpr std::string_view what = "distribution";
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw JsonFormatError("distribution: expected an object with a string 'kind'");
  }
  const auto kind = j.at("kind").get<std::string>();
  auto num = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
      throw JsonFormatError(std::string(what) + ": missing numeric key '" + key + "'");
    }
    return j.at(key).get<double>();
  };
  InputDistribution out;
  if (kind == "gaussian_zero_mean") {
    require_keys(j, {"kind", "P_r", "P_i"}, what);
    out = GaussianZeroMean{num("P_r"), num("P_i")};
  } else if (kind == "gaussian_general") {
    require_keys(j, {"kind", "mu_r", "mu_i", "var_r", "var_i"}, what);
    out = GaussianGeneral{num("mu_r"), num("mu_i"), num("var_r"), num("var_i")};
  } else if (kind == "constellation") {
    require_keys(j, {"kind", "points", "probs"}, what);
    FiniteConstellation c;
    if (!j.contains("points") || !j.at("points").is_array() || !j.contains("probs") ||
        !j.at("probs").is_array()) {
      throw JsonFormatError("distribution: constellation needs 'points' and 'probs' arrays");
    }
    for (const auto& p : j.at("points")) c.points.push_back(complex_from_json(p));
    for (const auto& p : j.at("probs")) {
      if (!p.is_number()) throw JsonFormatError("distribution: probs must be numbers");
      c.probs.push_back(p.get<double>());
    }
    out = std::move(c);
  } else {
    throw JsonFormatError("distribution: unknown kind '" + kind + "'");
  }
  validate(out);
  d = std::move(out);
}

void to_json(json& j, const McEstimate& e) {
  j = json{{"mean", e.mean}, {"std_error", e.std_error}, {"n", e.n_samples}, {"seed", e.seed}};
}

}  // namespace swipt::simulate

namespace swipt::tradeoff {

using nlohmann::json;

void to_json(json& j, const PowerAllocation& a) { j = json{{"P_r", a.p_r}, {"P_i", a.p_i}}; }

void to_json(json& j, const RPPoint& p) {
  j = json{{"P_r", p.allocation.p_r},
           {"P_i", p.allocation.p_i},
           {"rate_bits", p.rate},
           {"delivered_power", p.power}};
}

void to_json(json& j, const KktReport& r) {
  j = json{{"lambda1", r.lambda1},
           {"lambda2", r.lambda2},
           {"zeta_r", r.zeta_r},
           {"zeta_i", r.zeta_i},
           {"stationarity_residual_Pr", r.stationarity_residual_p_r},
           {"stationarity_residual_Pi", r.stationarity_residual_p_i},
           {"stationarity_residual_mu_r", r.stationarity_residual_mu_r},
           {"stationarity_residual_mu_i", r.stationarity_residual_mu_i},
           {"primal_feasible", r.primal_feasible},
           {"dual_feasible", r.dual_feasible},
           {"complementary_slackness_ok", r.complementary_slackness_ok},
           {"tolerance", r.tolerance},
           {"ok", r.ok()}};
}

}  // namespace swipt::tradeoff
