#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpgcli {

/// Raised for malformed or inconsistent configurations (exit code 2).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Command { Run, ConvergeSpace, ConvergeTime, ConvergeProjection, HeatIdentity };

enum class KPolicy { Fixed, LinearInH, QuadraticInH, List };

struct RunConfig {
  Command command = Command::Run;
  std::string case_id = "heat-decay";
  int p = 0;
  std::vector<std::size_t> levels = {8};
  KPolicy k_policy = KPolicy::Fixed;
  double k = 0.1;
  double k_coeff = 1.0;
  std::vector<double> k_list;
  double T_end = 1.0;
  /// Overrides T_end with steps * k for every level.
  std::optional<std::size_t> steps;
  /// Time step of the self-reference in converge-time.
  double reference_k = 1.0 / 512.0;
  /// Time at which converge-projection samples the exact solution.
  double projection_time = 0.0;
  std::string output_path = "dpgmarch.csv";
  bool snapshot = false;
  std::string snapshot_path;
};

Command parse_command(const std::string& name);
std::string command_name(Command c);
KPolicy parse_k_policy(const std::string& name);
std::string k_policy_name(KPolicy p);

/// Builds a config from a JSON object text plus key=value overrides, then
/// validates it. Override values are read as JSON when they parse, else as
/// strings. `command` comes from the command line and wins over the file.
RunConfig parse_config(const std::string& json_text, const std::vector<std::string>& overrides, Command command);

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides, Command command);

/// Throws ConfigError on any inconsistency.
void validate(const RunConfig& config);

/// Time step used on a mesh with the given h_max.
double step_for_level(const RunConfig& config, double h_max);

/// End time used with time step k.
double end_time_for_step(const RunConfig& config, double k);

} // namespace dpgcli
