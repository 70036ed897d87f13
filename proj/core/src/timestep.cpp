#include "dpg/timestep.hpp"

#include <cmath>
#include <stdexcept>

#include "dpg/error_norms.hpp"

namespace dpg {

TrialVector TrialVector::zeros(const DofMap& dofs) {
  return TrialVector{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dofs.n_field())),
                     Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dofs.n_trace()))};
}

Eigen::VectorXd TrialVector::stacked() const {
  Eigen::VectorXd s(field.size() + trace.size());
  s << field, trace;
  return s;
}

TrialVector TrialVector::split(const DofMap& dofs, const Eigen::VectorXd& stacked) {
  if (static_cast<std::size_t>(stacked.size()) != dofs.n_trial()) {
    throw std::invalid_argument("TrialVector::split: wrong length");
  }
  const auto nf = static_cast<Eigen::Index>(dofs.n_field());
  return TrialVector{stacked.head(nf), stacked.tail(stacked.size() - nf)};
}

TrialVector initial_field(const SpatialFunction& u0, const DofMap& dofs, const Mesh& /*mesh*/) {
  TrialVector v = TrialVector::zeros(dofs);
  const auto& nodes = dofs.field_nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    v.field[static_cast<Eigen::Index>(i)] = u0(nodes[i]);
  }
  return v;
}

TimeStepper::TimeStepper(const Mesh& mesh, const DofMap& dofs, const PdeCoefficients& coeffs, double cg_rel_tol)
    : mesh_(&mesh),
      dofs_(&dofs),
      coeffs_(coeffs),
      system_(assemble_condensed(mesh, dofs, coeffs)),
      precond_(system_.S),
      cg_rel_tol_(cg_rel_tol) {}

MarchState TimeStepper::start(const SpatialFunction& u0) const {
  MarchState s;
  s.current = initial_field(u0, *dofs_, *mesh_);
  s.l2_history.push_back(field_l2_norm(*mesh_, *dofs_, s.current.field));
  return s;
}

MarchState TimeStepper::step(const MarchState& state, const SpatialFunction& f_n) const {
  const Eigen::VectorXd rhs = condense_load(system_.blocks, *mesh_, *dofs_, coeffs_, f_n, state.current.field);
  const Eigen::VectorXd guess = state.current.stacked();
  const CgResult sol = cg_solve(system_.S, rhs, precond_, cg_rel_tol_, 0, &guess);
  last_iterations_ = sol.iterations;

  MarchState next;
  next.step_index = state.step_index + 1;
  next.time = static_cast<double>(next.step_index) * coeffs_.k;
  next.current = TrialVector::split(*dofs_, sol.x);
  next.l2_history = state.l2_history;
  next.l2_history.push_back(field_l2_norm(*mesh_, *dofs_, next.current.field));
  return next;
}

std::size_t step_count(double k, double T_end) {
  if (!(k > 0.0) || !(T_end > 0.0)) {
    throw std::invalid_argument("step_count: k and T_end must be positive");
  }
  const double ratio = std::round(T_end / k);
  if (ratio < 1.0 || std::abs(ratio * k - T_end) > 1e-12) {
    throw std::invalid_argument("step_count: T_end is not an integer multiple of k");
  }
  return static_cast<std::size_t>(ratio);
}

MarchState march(const PdeCase& pde, const Mesh& mesh, const DofMap& dofs, const StepObserver& observer) {
  const std::size_t steps = step_count(pde.coeffs.k, pde.coeffs.T_end);
  const TimeStepper stepper(mesh, dofs, pde.coeffs);
  MarchState state = stepper.start(pde.initial_value());
  if (observer) observer(state);
  for (std::size_t n = 1; n <= steps; ++n) {
    state = stepper.step(state, pde.source_at(static_cast<double>(n) * pde.coeffs.k));
    if (observer) observer(state);
  }
  return state;
}

double field_l2_norm(const Mesh& mesh, const DofMap& dofs, const Eigen::VectorXd& field) {
  return field_norm(mesh, dofs, field, FieldNorm::L2);
}

} // namespace dpg
