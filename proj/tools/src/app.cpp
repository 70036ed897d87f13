#include "dpgcli/app.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "dpg/linalg.hpp"
#include "dpgcli/output.hpp"

namespace dpgcli {

int run_app(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Backward Euler primal DPG solver for advection-diffusion-reaction problems", "dpgmarch"};
  std::string command;
  std::string config_path;
  std::vector<std::string> overrides;
  app.add_option("command", command, "run | converge-space | converge-time | converge-projection | heat-identity")
      ->required();
  app.add_option("--config,-c", config_path, "JSON configuration file")->required();
  app.add_option("overrides", overrides, "key=value overrides of configuration entries");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "dpgmarch: " << e.what() << "\n" << app.help();
    return kValidationError;
  }

  try {
    const RunConfig config = load_config(config_path, overrides, parse_command(command));
    const auto start = std::chrono::steady_clock::now();
    const StudyResult result = run_study(config);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    for (const auto& w : result.warnings) err << "warning: " << w << "\n";
    std::ostringstream csv;
    if (config.command == Command::HeatIdentity) {
      write_identity_csv(csv, result.identity);
    } else {
      write_error_csv(csv, result.reports);
    }
    write_file(config.output_path, csv.str());
    if (result.snapshot) {
      std::ostringstream vtk;
      write_vtk(vtk, *result.snapshot);
      write_file(config.snapshot_path, vtk.str());
    }

    out << command_name(config.command) << "  case=" << config.case_id << "  p=" << config.p << "\n";
    print_table(out, result.reports, config.command == Command::ConvergeTime ? "k" : "h_max");
    if (config.command == Command::HeatIdentity) {
      out << "max relative DOF deviation DPG vs Galerkin: " << std::scientific << std::setprecision(3)
          << result.identity_deviation << " (tolerance " << kHeatIdentityTolerance << ")  "
          << (result.identity_pass ? "PASS" : "FAIL") << std::defaultfloat << "\n";
    }
    out << "wrote " << config.output_path;
    if (result.snapshot) out << " and " << config.snapshot_path;
    out << "  (" << std::fixed << std::setprecision(2) << seconds << " s)" << std::defaultfloat << "\n";
    return result.identity_pass ? kOk : kCheckFailed;
  } catch (const ConfigError& e) {
    err << "dpgmarch: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::invalid_argument& e) {
    err << "dpgmarch: invalid input: " << e.what() << "\n";
    return kValidationError;
  } catch (const dpg::SolverError& e) {
    err << "dpgmarch: solver failure: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const std::exception& e) {
    err << "dpgmarch: " << e.what() << "\n";
    return kSolverFailure;
  }
}

} // namespace dpgcli
