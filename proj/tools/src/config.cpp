#include "dpgcli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dpg/pde_case.hpp"

namespace dpgcli {

using nlohmann::json;

namespace {

const std::set<std::string> kKeys = {"command",     "case_id", "p",        "levels",     "k_policy",
                                     "k",           "k_coeff", "k_list",   "T_end",      "steps",
                                     "reference_k", "projection_time",     "output_path", "snapshot",
                                     "snapshot_path"};

template <class T>
T read(const json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config: key '" + key + "' has the wrong type");
  }
}

std::size_t read_count(const json& value, const std::string& key) {
  if (!value.is_number_integer() || value.get<long long>() <= 0) {
    throw ConfigError("config: '" + key + "' must be a positive integer");
  }
  return value.get<std::size_t>();
}

} // namespace

Command parse_command(const std::string& name) {
  if (name == "run") return Command::Run;
  if (name == "converge-space") return Command::ConvergeSpace;
  if (name == "converge-time") return Command::ConvergeTime;
  if (name == "converge-projection") return Command::ConvergeProjection;
  if (name == "heat-identity") return Command::HeatIdentity;
  throw ConfigError("unknown command '" + name + "'");
}

std::string command_name(Command c) {
  switch (c) {
  case Command::Run: return "run";
  case Command::ConvergeSpace: return "converge-space";
  case Command::ConvergeTime: return "converge-time";
  case Command::ConvergeProjection: return "converge-projection";
  case Command::HeatIdentity: return "heat-identity";
  }
  return "";
}

KPolicy parse_k_policy(const std::string& name) {
  if (name == "fixed") return KPolicy::Fixed;
  if (name == "c_h") return KPolicy::LinearInH;
  if (name == "c_h2") return KPolicy::QuadraticInH;
  if (name == "list") return KPolicy::List;
  throw ConfigError("config: invalid k_policy '" + name + "' (expected fixed, c_h, c_h2 or list)");
}

std::string k_policy_name(KPolicy p) {
  switch (p) {
  case KPolicy::Fixed: return "fixed";
  case KPolicy::LinearInH: return "c_h";
  case KPolicy::QuadraticInH: return "c_h2";
  case KPolicy::List: return "list";
  }
  return "";
}

RunConfig parse_config(const std::string& json_text, const std::vector<std::string>& overrides, Command command) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");

  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq);
    const std::string text = item.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;
    j[key] = value;
  }

  for (const auto& [key, value] : j.items()) {
    if (!kKeys.count(key)) throw ConfigError("config: unknown key '" + key + "'");
  }

  RunConfig c;
  c.command = command;
  if (j.contains("command") && parse_command(read<std::string>(j, "command")) != command) {
    throw ConfigError("config: 'command' in the file disagrees with the command line");
  }
  if (j.contains("case_id")) c.case_id = read<std::string>(j, "case_id");
  if (j.contains("p")) {
    if (!j["p"].is_number_integer()) throw ConfigError("config: 'p' must be 0 or 1");
    c.p = j["p"].get<int>();
  }
  if (j.contains("levels")) {
    if (!j["levels"].is_array()) throw ConfigError("config: 'levels' must be a list of subdivisions");
    c.levels.clear();
    for (const auto& v : j["levels"]) c.levels.push_back(read_count(v, "levels"));
  }
  if (j.contains("k_policy")) c.k_policy = parse_k_policy(read<std::string>(j, "k_policy"));
  if (j.contains("k")) c.k = read<double>(j, "k");
  if (j.contains("k_coeff")) c.k_coeff = read<double>(j, "k_coeff");
  if (j.contains("k_list")) c.k_list = read<std::vector<double>>(j, "k_list");
  if (j.contains("T_end")) c.T_end = read<double>(j, "T_end");
  if (j.contains("steps")) c.steps = read_count(j["steps"], "steps");
  if (j.contains("reference_k")) c.reference_k = read<double>(j, "reference_k");
  if (j.contains("projection_time")) c.projection_time = read<double>(j, "projection_time");
  if (j.contains("output_path")) c.output_path = read<std::string>(j, "output_path");
  if (j.contains("snapshot")) c.snapshot = read<bool>(j, "snapshot");
  if (j.contains("snapshot_path")) c.snapshot_path = read<std::string>(j, "snapshot_path");
  if (c.snapshot_path.empty()) {
    const auto dot = c.output_path.find_last_of('.');
    const auto slash = c.output_path.find_last_of('/');
    const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    c.snapshot_path = (has_ext ? c.output_path.substr(0, dot) : c.output_path) + ".vtk";
  }
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides, Command command) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), overrides, command);
}

void validate(const RunConfig& c) {
  const auto& ids = dpg::case_ids();
  if (std::find(ids.begin(), ids.end(), c.case_id) == ids.end()) {
    throw ConfigError("config: unknown case_id '" + c.case_id + "'");
  }
  if (c.p != 0 && c.p != 1) throw ConfigError("config: p must be 0 or 1");
  if (c.levels.empty()) throw ConfigError("config: levels must be nonempty");
  for (std::size_t i = 1; i < c.levels.size(); ++i) {
    if (c.levels[i] <= c.levels[i - 1]) throw ConfigError("config: levels must be strictly increasing");
  }
  if (c.output_path.empty()) throw ConfigError("config: output_path must be set");

  const bool time_study = c.command == Command::ConvergeTime;
  if (time_study) {
    if (c.k_policy != KPolicy::List) throw ConfigError("config: converge-time requires k_policy = list");
    if (c.levels.size() != 1) throw ConfigError("config: converge-time requires a single mesh level");
    if (c.k_list.size() < 2) throw ConfigError("config: converge-time needs at least two entries in k_list");
    for (std::size_t i = 0; i < c.k_list.size(); ++i) {
      if (!(c.k_list[i] > 0.0)) throw ConfigError("config: k_list entries must be positive");
      if (i > 0 && !(c.k_list[i] < c.k_list[i - 1])) throw ConfigError("config: k_list must be decreasing");
    }
    if (!(c.reference_k > 0.0) || !(c.reference_k < c.k_list.back())) {
      throw ConfigError("config: reference_k must be positive and below every k in k_list");
    }
  } else if (c.k_policy == KPolicy::List) {
    throw ConfigError("config: k_policy = list is only valid for converge-time");
  }
  if (c.k_policy == KPolicy::Fixed && !(c.k > 0.0)) throw ConfigError("config: k must be positive");
  if ((c.k_policy == KPolicy::LinearInH || c.k_policy == KPolicy::QuadraticInH) && !(c.k_coeff > 0.0)) {
    throw ConfigError("config: k_coeff must be positive");
  }
  if (!c.steps && !(c.T_end > 0.0)) throw ConfigError("config: T_end must be positive");
  if (c.command == Command::ConvergeProjection && c.projection_time < 0.0) {
    throw ConfigError("config: projection_time must be nonnegative");
  }
  if (c.command == Command::HeatIdentity) {
    const dpg::PdeCase pde = dpg::make_case(c.case_id, 1.0, 1.0);
    if (!pde.coeffs.is_heat()) throw ConfigError("config: heat-identity needs a case with A = I, beta = 0, gamma = 0");
  }
}

double step_for_level(const RunConfig& c, double h_max) {
  switch (c.k_policy) {
  case KPolicy::Fixed: return c.k;
  case KPolicy::LinearInH: return c.k_coeff * h_max;
  case KPolicy::QuadraticInH: return c.k_coeff * h_max * h_max;
  case KPolicy::List: break;
  }
  throw ConfigError("config: k_policy = list has no per-level step");
}

double end_time_for_step(const RunConfig& c, double k) {
  if (c.steps) return static_cast<double>(*c.steps) * k;
  const double n = std::round(c.T_end / k);
  if (n < 1.0 || std::abs(n * k - c.T_end) > 1e-12) {
    throw ConfigError("config: T_end is not an integer multiple of k = " + std::to_string(k) +
                      " (set 'steps' for h-coupled step sizes)");
  }
  return c.T_end;
}

} // namespace dpgcli
