#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "brody/error.hpp"
#include "brody/lattice.hpp"
#include "brody/serialize.hpp"

namespace brody {

inline constexpr int kReportSchemaVersion = 1;

std::string library_version();

// Invalid configuration (CLI exit status 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct ExperimentConfig {
  std::string subcommand;
  std::uint64_t seed = 42;
  double eps = 0.19634954084936207;  // pi/16
  int height = 1;
  int n_max = 100;
  std::uint64_t budget = 10000;
  std::uint64_t probes = 100000;
  std::uint64_t probes_per_ball = 1000;
  std::uint64_t max_centers = 1000000;
  double time_limit = 0.0;  // seconds, 0 = unlimited
  int count = 100;
  std::string family = "constant";
  std::string lattice = "gaussian";
  std::vector<double> ts{0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0};
  ArithmeticMode mode = ArithmeticMode::floating;
  std::string out_dir = "brody_out";
  std::string config_file;
};

const std::vector<std::string>& subcommand_names();

// Parses "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> read_config_file(const std::string& path);

// Sets one parameter from its textual form (keys as the long flag names,
// '_' and '-' interchangeable). Throws ConfigError.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

// Defaults, then the config file, then the flags.
ExperimentConfig resolve_config(const std::string& subcommand, const std::map<std::string, std::string>& flags);

void validate(const ExperimentConfig& config);

Json config_to_json(const ExperimentConfig& config);

struct RunOutcome {
  int exit_code = 0;
  Json report;
  // File name (relative to out_dir) -> contents, report.json included.
  std::map<std::string, std::string> files;
};

// Validates and runs; failures of asserted postconditions give exit code 1.
RunOutcome run(const ExperimentConfig& config);

void write_outputs(const RunOutcome& outcome, const std::string& out_dir);

}  // namespace brody
