#pragma once

#include <string>
#include <vector>

#include "dpg/error_norms.hpp"
#include "dpg/mesh.hpp"
#include "dpgcli/config.hpp"

namespace dpgcli {

struct Snapshot {
  dpg::Mesh mesh;
  /// Field value at every mesh vertex (zero on the boundary).
  std::vector<double> vertex_values;
  double time = 0.0;
};

struct IdentityRow {
  std::size_t step = 0;
  double max_abs_deviation = 0.0;
  double max_rel_deviation = 0.0;
};

struct StudyResult {
  std::vector<dpg::ErrorReport> reports;
  std::vector<IdentityRow> identity;
  double identity_deviation = 0.0;
  bool identity_pass = true;
  std::vector<std::string> warnings;
  std::optional<Snapshot> snapshot;
};

constexpr double kHeatIdentityTolerance = 1e-9;

/// Executes config.command. Throws ConfigError for inconsistencies detected
/// while running and lets dpg::SolverError propagate.
StudyResult run_study(const RunConfig& config);

/// Vertex values of a P^{p+1} field (vertex nodes are Lagrange nodes).
std::vector<double> vertex_values(const dpg::Mesh& mesh, const dpg::DofMap& dofs, const Eigen::VectorXd& field);

} // namespace dpgcli
