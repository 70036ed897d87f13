#include "dpgcli/study.hpp"

#include <cmath>

#include "dpg/elliptic_projection.hpp"
#include "dpg/galerkin_oracle.hpp"
#include "dpg/timestep.hpp"

namespace dpgcli {

using namespace dpg;

namespace {

ErrorReport report_header(std::size_t level, const Mesh& mesh, const DofMap& dofs, double k) {
  ErrorReport r;
  r.level = level;
  r.h_max = mesh.h_max();
  r.k = k;
  r.n_field = dofs.n_field();
  r.n_trace = dofs.n_trace();
  return r;
}

void fill_exact_errors(ErrorReport& r, const Mesh& mesh, const DofMap& dofs, const PdeCoefficients& coeffs,
                       const TrialVector& uh, const ExactSolution& exact) {
  r.err_L2 = field_error(mesh, dofs, uh.field, exact, FieldNorm::L2);
  r.err_H1_semi = field_error(mesh, dofs, uh.field, exact, FieldNorm::H1Semi);
  r.err_trace_dual = trace_dual_error(mesh, dofs, coeffs, uh.trace, exact.grad_u);
}

std::vector<double> h_steps(const std::vector<ErrorReport>& reports) {
  std::vector<double> s;
  for (const auto& r : reports) s.push_back(r.h_max);
  return s;
}

void collect_warnings(StudyResult& out, const TimeStepper& stepper) {
  for (const auto& w : stepper.system().warnings) out.warnings.push_back(w);
}

StudyResult run_march_levels(const RunConfig& config) {
  StudyResult out;
  for (std::size_t l = 0; l < config.levels.size(); ++l) {
    const Mesh mesh = build_structured_mesh(config.levels[l]);
    const DofMap dofs(mesh, config.p);
    const double k = step_for_level(config, mesh.h_max());
    const PdeCase pde = make_case(config.case_id, k, end_time_for_step(config, k));
    const TimeStepper stepper(mesh, dofs, pde.coeffs);
    collect_warnings(out, stepper);
    MarchState state = stepper.start(pde.initial_value());
    const std::size_t steps = step_count(pde.coeffs.k, pde.coeffs.T_end);
    for (std::size_t n = 1; n <= steps; ++n) state = stepper.step(state, pde.source_at(static_cast<double>(n) * k));

    ErrorReport r = report_header(l, mesh, dofs, k);
    fill_exact_errors(r, mesh, dofs, pde.coeffs, state.current, pde.exact_at(state.time));
    out.reports.push_back(r);
    if (config.snapshot && l + 1 == config.levels.size()) {
      out.snapshot = Snapshot{mesh, vertex_values(mesh, dofs, state.current.field), state.time};
    }
  }
  fill_eoc(out.reports, h_steps(out.reports));
  return out;
}

StudyResult run_time_study(const RunConfig& config) {
  StudyResult out;
  const Mesh mesh = build_structured_mesh(config.levels.front());
  const DofMap dofs(mesh, config.p);
  const double T = config.steps ? static_cast<double>(*config.steps) * config.k_list.front() : config.T_end;
  const auto final_state = [&](double k) {
    if (std::abs(std::round(T / k) * k - T) > 1e-12) {
      throw ConfigError("config: T_end = " + std::to_string(T) + " is not a multiple of k = " + std::to_string(k));
    }
    const PdeCase pde = make_case(config.case_id, k, T);
    const TimeStepper stepper(mesh, dofs, pde.coeffs);
    collect_warnings(out, stepper);
    MarchState s = stepper.start(pde.initial_value());
    const std::size_t steps = step_count(k, T);
    for (std::size_t n = 1; n <= steps; ++n) s = stepper.step(s, pde.source_at(static_cast<double>(n) * k));
    return s;
  };
  const MarchState reference = final_state(config.reference_k);
  // One V,k norm for every row, so the trace errors are comparable.
  const PdeCoefficients norm_coeffs = make_case(config.case_id, config.reference_k, T).coeffs;
  for (std::size_t l = 0; l < config.k_list.size(); ++l) {
    const double k = config.k_list[l];
    const MarchState s = final_state(k);
    ErrorReport r = report_header(l, mesh, dofs, k);
    const Eigen::VectorXd diff = s.current.field - reference.current.field;
    r.err_L2 = field_norm(mesh, dofs, diff, FieldNorm::L2);
    r.err_H1_semi = field_norm(mesh, dofs, diff, FieldNorm::H1Semi);
    r.err_trace_dual = trace_dual_error(mesh, dofs, norm_coeffs, s.current.trace - reference.current.trace, {});
    out.reports.push_back(r);
    if (config.snapshot && l + 1 == config.k_list.size()) {
      out.snapshot = Snapshot{mesh, vertex_values(mesh, dofs, s.current.field), s.time};
    }
  }
  fill_eoc(out.reports, config.k_list);
  return out;
}

StudyResult run_projection_study(const RunConfig& config) {
  StudyResult out;
  for (std::size_t l = 0; l < config.levels.size(); ++l) {
    const Mesh mesh = build_structured_mesh(config.levels[l]);
    const DofMap dofs(mesh, config.p);
    const double k = step_for_level(config, mesh.h_max());
    const PdeCase pde = make_case(config.case_id, k, k);
    const ExactSolution exact = pde.exact_at(config.projection_time);
    const TrialVector uh = project(mesh, dofs, pde.coeffs, exact);
    ErrorReport r = report_header(l, mesh, dofs, k);
    fill_exact_errors(r, mesh, dofs, pde.coeffs, uh, exact);
    out.reports.push_back(r);
    if (config.snapshot && l + 1 == config.levels.size()) {
      out.snapshot = Snapshot{mesh, vertex_values(mesh, dofs, uh.field), config.projection_time};
    }
  }
  fill_eoc(out.reports, h_steps(out.reports));
  return out;
}

StudyResult run_heat_identity(const RunConfig& config) {
  StudyResult out;
  const Mesh mesh = build_structured_mesh(config.levels.back());
  const DofMap dofs(mesh, config.p);
  const double k = step_for_level(config, mesh.h_max());
  const PdeCase pde = make_case(config.case_id, k, end_time_for_step(config, k));

  std::vector<Eigen::VectorXd> dpg_fields;
  MarchState last;
  march(pde, mesh, dofs, [&](const MarchState& s) {
    dpg_fields.push_back(s.current.field);
    last = s;
  });
  galerkin_march(mesh, dofs, pde.coeffs, [&](double t, const Point& x) { return pde.source(t, x); },
                 pde.initial_value(), [&](std::size_t n, const Eigen::VectorXd& u) {
                   IdentityRow row;
                   row.step = n;
                   row.max_abs_deviation = u.size() ? (dpg_fields.at(n) - u).cwiseAbs().maxCoeff() : 0.0;
                   const double scale = u.size() ? u.cwiseAbs().maxCoeff() : 0.0;
                   row.max_rel_deviation = scale > 0.0 ? row.max_abs_deviation / scale : row.max_abs_deviation;
                   out.identity.push_back(row);
                   out.identity_deviation = std::max(out.identity_deviation, row.max_rel_deviation);
                 });
  out.identity_pass = out.identity_deviation <= kHeatIdentityTolerance;

  ErrorReport r = report_header(0, mesh, dofs, k);
  fill_exact_errors(r, mesh, dofs, pde.coeffs, last.current, pde.exact_at(last.time));
  out.reports.push_back(r);
  if (config.snapshot) out.snapshot = Snapshot{mesh, vertex_values(mesh, dofs, last.current.field), last.time};
  return out;
}

} // namespace

std::vector<double> vertex_values(const Mesh& mesh, const DofMap& dofs, const Eigen::VectorXd& field) {
  std::vector<double> values(mesh.num_vertices(), 0.0);
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
    const auto& map = dofs.element_field_dofs(k);
    for (int l = 0; l < 3; ++l) {
      if (map[static_cast<std::size_t>(l)] != kDirichlet) values[mesh.element(k)[l]] = field[map[static_cast<std::size_t>(l)]];
    }
  }
  return values;
}

StudyResult run_study(const RunConfig& config) {
  validate(config);
  switch (config.command) {
  case Command::Run:
  case Command::ConvergeSpace: return run_march_levels(config);
  case Command::ConvergeTime: return run_time_study(config);
  case Command::ConvergeProjection: return run_projection_study(config);
  case Command::HeatIdentity: return run_heat_identity(config);
  }
  throw ConfigError("unknown command");
}

} // namespace dpgcli
