#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "swipt/moments.hpp"
#include "swipt/rectenna.hpp"
#include "swipt/simulate.hpp"

namespace swipt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

/// Bad flags, unreadable files or config content that fails validation.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Json, Csv };

struct McSettings {
  std::size_t n_symbols = 200000;
  std::size_t oversample = 8;
  std::size_t window = 512;
  std::uint64_t seed = 1;
  unsigned threads = 0;

  bool operator==(const McSettings&) const = default;
};

/// Everything a subcommand reads. The JSON form is
///   {"channel": {...}, "budget": 1, "targets": [...],
///    "distribution": {...}, "mc": {"n_symbols", "oversample", "window",
///    "seed", "threads"}, "sweep": {"n_points"},
///    "output": {"format": "json"|"csv", "path"}}
/// with every key optional and unknown keys rejected.
struct RunConfig {
  ChannelParams channel;
  double budget = 1.0;
  std::vector<double> targets;
  simulate::InputDistribution distribution = simulate::GaussianZeroMean{0.5, 0.5};
  McSettings mc;
  std::size_t n_points = 101;
  Format format = Format::Json;
  std::string out_path;  // empty: standard output

  void validate() const;
  bool operator==(const RunConfig&) const;
};

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

/// Reads and validates a config file. Throws ConfigError.
RunConfig load_config(const std::string& path);

/// Parses a distribution given as a preset name (symmetric, asymmetric,
/// nonzero-mean, qpsk), inline JSON, or a path to a JSON file.
simulate::InputDistribution parse_distribution(const std::string& text);

/// Parses a moment profile given as inline JSON or a JSON file path.
MomentProfile parse_profile(const std::string& text);

/// Formats a double with 17 significant digits.
std::string format_number(double v);

int cmd_series_verify(const RunConfig& config, std::size_t n_terms, double tolerance,
                      std::ostream& out, std::ostream& err);
int cmd_power_eval(const RunConfig& config, const std::optional<MomentProfile>& profile,
                   std::ostream& out, std::ostream& err);
int cmd_mc_validate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_region(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command-line entry point. Output goes to `out` unless the config
/// names a path.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace swipt::cli
