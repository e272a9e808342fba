#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "swipt/io.hpp"
#include "swipt/series.hpp"
#include "swipt/tradeoff.hpp"

namespace swipt::cli {

using nlohmann::json;

namespace {

std::string format_name(Format f) { return f == Format::Json ? "json" : "csv"; }

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw ConfigError("format must be 'json' or 'csv', got '" + s + "'");
}

template <typename T>
T unsigned_value(const json& j, const char* key, std::string_view what) {
  const auto& v = j.at(key);
  if (!v.is_number_unsigned()) {
    throw ConfigError(std::string(what) + ": '" + key + "' must be a nonnegative integer");
  }
  return v.get<T>();
}

json read_json_text(const std::string& text) {
  try {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
      return json::parse(text);
    }
    std::ifstream in(text);
    if (!in) throw ConfigError("cannot open '" + text + "'");
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

std::string csv_row(std::initializer_list<double> values) {
  std::string line;
  for (double v : values) {
    if (!line.empty()) line += ',';
    line += format_number(v);
  }
  return line;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void RunConfig::validate() const {
  channel.validate();
  simulate::validate(distribution);
  if (!(budget > 0.0) || !std::isfinite(budget)) throw ConfigError("budget must be positive");
  for (double t : targets) {
    if (!std::isfinite(t)) throw ConfigError("targets must be finite");
  }
  if (n_points < 2) throw ConfigError("sweep.n_points must be at least 2");
  if (mc.n_symbols < 1000) throw ConfigError("mc.n_symbols must be at least 1000");
  if (mc.window == 0) throw ConfigError("mc.window must be positive");
}

bool RunConfig::operator==(const RunConfig& other) const {
  return json(*this) == json(other);
}

void to_json(json& j, const RunConfig& c) {
  j = json{{"channel", c.channel},
           {"budget", c.budget},
           {"targets", c.targets},
           {"distribution", c.distribution},
           {"mc",
            {{"n_symbols", c.mc.n_symbols},
             {"oversample", c.mc.oversample},
             {"window", c.mc.window},
             {"seed", c.mc.seed},
             {"threads", c.mc.threads}}},
           {"sweep", {{"n_points", c.n_points}}},
           {"output", {{"format", format_name(c.format)}, {"path", c.out_path}}}};
}

void from_json(const json& j, RunConfig& c) {
  require_keys(j, {"channel", "budget", "targets", "distribution", "mc", "sweep", "output"},
               "config");
  RunConfig out;
  if (j.contains("channel")) out.channel = j.at("channel").get<ChannelParams>();
  if (j.contains("budget")) {
    if (!j.at("budget").is_number()) throw ConfigError("config: 'budget' must be a number");
    out.budget = j.at("budget").get<double>();
  }
  if (j.contains("targets")) {
    const auto& t = j.at("targets");
    if (!t.is_array()) throw ConfigError("config: 'targets' must be an array");
    for (const auto& v : t) {
      if (!v.is_number()) throw ConfigError("config: targets must be numbers");
      out.targets.push_back(v.get<double>());
    }
  }
  if (j.contains("distribution")) {
    out.distribution = j.at("distribution").get<simulate::InputDistribution>();
  }
  if (j.contains("mc")) {
    const auto& m = j.at("mc");
    require_keys(m, {"n_symbols", "oversample", "window", "seed", "threads"}, "mc");
    if (m.contains("n_symbols")) out.mc.n_symbols = unsigned_value<std::size_t>(m, "n_symbols", "mc");
    if (m.contains("oversample")) {
      out.mc.oversample = unsigned_value<std::size_t>(m, "oversample", "mc");
    }
    if (m.contains("window")) out.mc.window = unsigned_value<std::size_t>(m, "window", "mc");
    if (m.contains("seed")) out.mc.seed = unsigned_value<std::uint64_t>(m, "seed", "mc");
    if (m.contains("threads")) out.mc.threads = unsigned_value<unsigned>(m, "threads", "mc");
  }
  if (j.contains("sweep")) {
    const auto& s = j.at("sweep");
    require_keys(s, {"n_points"}, "sweep");
    if (s.contains("n_points")) out.n_points = unsigned_value<std::size_t>(s, "n_points", "sweep");
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    require_keys(o, {"format", "path"}, "output");
    if (o.contains("format")) {
      if (!o.at("format").is_string()) throw ConfigError("output: 'format' must be a string");
      out.format = parse_format(o.at("format").get<std::string>());
    }
    if (o.contains("path")) {
      if (!o.at("path").is_string()) throw ConfigError("output: 'path' must be a string");
      out.out_path = o.at("path").get<std::string>();
    }
  }
  out.validate();
  c = std::move(out);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return j.get<RunConfig>();
}

simulate::InputDistribution parse_distribution(const std::string& text) {
  if (text == "symmetric") return simulate::GaussianZeroMean{0.5, 0.5};
  if (text == "asymmetric") return simulate::GaussianZeroMean{1.0, 0.0};
  if (text == "nonzero-mean") return simulate::GaussianGeneral{0.5, 0.0, 0.25, 0.5};
  if (text == "qpsk") return simulate::qpsk();
  return read_json_text(text).get<simulate::InputDistribution>();
}

MomentProfile parse_profile(const std::string& text) {
  return read_json_text(text).get<MomentProfile>();
}

int cmd_series_verify(const RunConfig& config, std::size_t n_terms, double tolerance,
                      std::ostream& out, std::ostream& err) {
  if (n_terms == 0) throw ConfigError("n-terms must be positive");
  const auto reports = series::verify_all(n_terms);
  std::vector<std::string> failing;
  for (const auto& r : reports) {
    if (!(r.abs_error <= tolerance)) failing.emplace_back(series::name(r.id));
  }
  if (config.format == Format::Json) {
    json j{{"n_terms", n_terms},
           {"tolerance", tolerance},
           {"reports", reports},
           {"failing", failing},
           {"pass", failing.empty()}};
    out << j.dump(2) << '\n';
  } else {
    out << "id,analytic,partial_sum,truncation,abs_error\n";
    for (const auto& r : reports) {
      out << series::name(r.id) << ',' << csv_row({r.analytic, r.partial_sum}) << ','
          << r.truncation << ',' << format_number(r.abs_error) << '\n';
    }
  }
  if (failing.empty()) return kExitOk;
  err << "series outside tolerance " << format_number(tolerance) << ":";
  for (const auto& f : failing) err << ' ' << f;
  err << '\n';
  return kExitValidation;
}

int cmd_power_eval(const RunConfig& config, const std::optional<MomentProfile>& profile,
                   std::ostream& out, std::ostream&) {
  const MomentProfile m = profile ? *profile : simulate::analytic_profile(config.distribution);
  m.validate();
  const RectennaCoeffs c = coeffs(config.channel);
  const DerivedMoments d = derive(m);
  const double p_del = delivered_power(m, config.channel);
  if (config.format == Format::Json) {
    json j{{"alpha", c.alpha}, {"alpha_tilde", c.alpha_tilde}, {"beta", c.beta},
           {"beta_tilde", c.beta_tilde}, {"gamma", c.gamma}, {"Q", d.fourth},
           {"Q_tilde", d.q_tilde}, {"P", d.power}, {"P_del", p_del}};
    out << j.dump(2) << '\n';
  } else {
    out << "alpha,alpha_tilde,beta,beta_tilde,gamma,Q,Q_tilde,P,P_del\n"
        << csv_row({c.alpha, c.alpha_tilde, c.beta, c.beta_tilde, c.gamma, d.fourth, d.q_tilde,
                    d.power, p_del})
        << '\n';
  }
  return kExitOk;
}

int cmd_mc_validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const MomentProfile m = simulate::analytic_profile(config.distribution);
  simulate::McPowerConfig mc;
  mc.n_symbols = config.mc.n_symbols;
  mc.oversample = config.mc.oversample;
  mc.window = config.mc.window;
  mc.seed = config.mc.seed;
  mc.threads = config.mc.threads;
  const simulate::McPowerReport r = simulate::mc_delivered_power(config.distribution, config.channel, mc);

  const double closed_form = delivered_power(m, config.channel);
  const double fourth = even_sample_fourth_moment(m, config.channel);
  auto z_of = [](const simulate::McEstimate& e, double ref) { return (e.mean - ref) / e.std_error; };

  struct Row {
    const char* name;
    const simulate::McEstimate* est;
    double reference;
  };
  const Row rows[] = {{"oversampled", &r.oversampled, closed_form},
                      {"half_rate", &r.half_rate, closed_form},
                      {"even_fourth_moment", &r.even_fourth, fourth}};
  const double z_over = z_of(r.oversampled, closed_form);
  const double z_half = z_of(r.half_rate, closed_form);
  const bool pass = std::abs(z_over) <= 4.0 && std::abs(z_half) <= 4.0;

  if (config.format == Format::Json) {
    json estimators = json::object();
    for (const auto& row : rows) {
      estimators[row.name] = json{{"estimate", row.est->mean},
                                  {"std_error", row.est->std_error},
                                  {"closed_form", row.reference},
                                  {"z_score", z_of(*row.est, row.reference)},
                                  {"n", row.est->n_samples},
                                  {"seed", row.est->seed}};
    }
    json j{{"distribution", config.distribution},
           {"channel", config.channel},
           {"n_symbols", r.n_symbols},
           {"n_blocks", r.n_blocks},
           {"oversample", mc.oversample},
           {"window", mc.window},
           {"seed", mc.seed},
           {"closed_form", closed_form},
           {"time_average_reference", time_averaged_power(m, config.channel)},
           {"estimators", estimators},
           {"pass", pass}};
    out << j.dump(2) << '\n';
  } else {
    out << "estimator,estimate,std_error,closed_form,z_score,n,seed\n";
    for (const auto& row : rows) {
      out << row.name << ','
          << csv_row({row.est->mean, row.est->std_error, row.reference, z_of(*row.est, row.reference)})
          << ',' << row.est->n_samples << ',' << row.est->seed << '\n';
    }
  }
  if (pass) return kExitOk;
  err << "Monte-Carlo estimate disagrees with the closed form: z = " << format_number(z_over)
      << " (oversampled), " << format_number(z_half) << " (half-rate)\n";
  return kExitValidation;
}

int cmd_region(const RunConfig& config, std::ostream& out, std::ostream&) {
  const auto points = tradeoff::rp_region(config.budget, config.channel, config.n_points);

  struct TargetResult {
    double p_d;
    bool feasible;
    tradeoff::RPPoint point;
    tradeoff::KktReport kkt;
  };
  std::vector<TargetResult> results;
  for (double p_d : config.targets) {
    try {
      const auto alloc = tradeoff::optimal_allocation(config.budget, p_d, config.channel);
      const auto kkt = tradeoff::kkt_check(alloc, 0.0, 0.0, config.budget, p_d, config.channel, 1e-6);
      results.push_back({p_d, true, tradeoff::evaluate(alloc, config.channel), kkt});
    } catch (const tradeoff::InfeasibleTarget&) {
      results.push_back({p_d, false, {}, {}});
    }
  }

  if (config.format == Format::Json) {
    json targets = json::array();
    for (const auto& t : results) {
      if (t.feasible) {
        targets.push_back(json{{"P_d", t.p_d}, {"status", "ok"}, {"point", t.point}, {"kkt", t.kkt}});
      } else {
        targets.push_back(json{{"P_d", t.p_d}, {"status", "infeasible"}});
      }
    }
    out << json{{"region", points}, {"targets", targets}}.dump(2) << '\n';
    return kExitOk;
  }

  out << "P_r,P_i,rate_bits,delivered_power\n";
  for (const auto& p : points) {
    out << csv_row({p.allocation.p_r, p.allocation.p_i, p.rate, p.power}) << '\n';
  }
  if (!results.empty()) {
    out << "\nP_d,status,P_r,P_i,rate_bits,delivered_power,kkt_ok,kkt_max_residual\n";
    for (const auto& t : results) {
      out << format_number(t.p_d);
      if (t.feasible) {
        out << ",ok,"
            << csv_row({t.point.allocation.p_r, t.point.allocation.p_i, t.point.rate, t.point.power})
            << ',' << (t.kkt.ok() ? "true" : "false") << ',' << format_number(t.kkt.max_residual())
            << '\n';
      } else {
        out << ",infeasible,,,,,,\n";
      }
    }
  }
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rectenna delivered-power model and rate-power tradeoff tools", "swipt"};
  app.require_subcommand(1);

  std::string config_path, format_text, out_path, dist_text, profile_text;
  std::uint64_t seed = 0;
  std::size_t n_terms = 1000000;
  double tolerance = 1e-4;
  std::size_t n_symbols = 0, oversample = 0, window = 0, n_points = 0;
  unsigned threads = 0;
  double budget = 0.0;
  std::vector<double> targets;

  std::vector<CLI::App*> subs;
  auto* series_cmd = app.add_subcommand("series-verify", "Check the sinc series constants");
  auto* power_cmd = app.add_subcommand("power-eval", "Evaluate the delivered-power closed form");
  auto* mc_cmd = app.add_subcommand("mc-validate", "Compare waveform Monte-Carlo with the closed form");
  auto* region_cmd = app.add_subcommand("region", "Sweep the rate-power frontier and solve targets");
  std::vector<CLI::Option*> seed_opts, format_opts, out_opts, config_opts;
  for (auto* s : {series_cmd, power_cmd, mc_cmd, region_cmd}) {
    config_opts.push_back(s->add_option("--config", config_path, "JSON run configuration"));
    seed_opts.push_back(s->add_option("--seed", seed, "Random seed"));
    format_opts.push_back(
        s->add_option("--format", format_text, "Output format")->check(CLI::IsMember({"json", "csv"})));
    out_opts.push_back(s->add_option("--out", out_path, "Write output to this file"));
  }
  series_cmd->add_option("--n-terms", n_terms, "Window half-width N")->capture_default_str();
  series_cmd->add_option("--tolerance", tolerance, "Allowed absolute error")->capture_default_str();
  power_cmd->add_option("--profile", profile_text, "Moment profile (JSON text or file)");
  auto* power_dist = power_cmd->add_option("--dist", dist_text, "Input distribution (preset, JSON text or file)");
  auto* mc_dist = mc_cmd->add_option("--dist", dist_text, "Input distribution (preset, JSON text or file)");
  auto* opt_n = mc_cmd->add_option("--n-symbols", n_symbols, "Symbols to simulate");
  auto* opt_l = mc_cmd->add_option("--oversample", oversample, "Fine-grid points per symbol");
  auto* opt_w = mc_cmd->add_option("--window", window, "Interpolation half-width in symbols");
  auto* opt_t = mc_cmd->add_option("--threads", threads, "Worker threads (0: all cores)");
  auto* opt_b = region_cmd->add_option("--budget", budget, "Power budget P_a");
  auto* opt_p = region_cmd->add_option("--n-points", n_points, "Frontier sample count");
  auto* opt_d = region_cmd->add_option("--target", targets, "Delivered-power target (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  auto given = [](const std::vector<CLI::Option*>& opts) {
    for (const auto* o : opts) {
      if (o->count() > 0) return true;
    }
    return false;
  };

  std::ostringstream buffer;
  RunConfig config;
  int code = kExitOk;
  try {
    if (given(config_opts)) config = load_config(config_path);
    if (given(seed_opts)) config.mc.seed = seed;
    if (given(format_opts)) config.format = parse_format(format_text);
    if (given(out_opts)) config.out_path = out_path;
    if (power_dist->count() > 0 || mc_dist->count() > 0) config.distribution = parse_distribution(dist_text);
    if (opt_n->count() > 0) config.mc.n_symbols = n_symbols;
    if (opt_l->count() > 0) config.mc.oversample = oversample;
    if (opt_w->count() > 0) config.mc.window = window;
    if (opt_t->count() > 0) config.mc.threads = threads;
    if (opt_b->count() > 0) config.budget = budget;
    if (opt_p->count() > 0) config.n_points = n_points;
    if (opt_d->count() > 0) config.targets = targets;
    config.validate();

    if (*series_cmd) {
      code = cmd_series_verify(config, n_terms, tolerance, buffer, err);
    } else if (*power_cmd) {
      std::optional<MomentProfile> profile;
      if (!profile_text.empty()) profile = parse_profile(profile_text);
      code = cmd_power_eval(config, profile, buffer, err);
    } else if (*mc_cmd) {
      code = cmd_mc_validate(config, buffer, err);
    } else {
      code = cmd_region(config, buffer, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (config.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(config.out_path, std::ios::binary);
    if (!(file << buffer.str())) {
      err << "error: cannot write '" << config.out_path << "'\n";
      return kExitUsage;
    }
  }
  return code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("swipt");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace swipt::cli
