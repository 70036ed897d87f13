#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "dpg/assembly.hpp"
#include "dpg/dofmap.hpp"
#include "dpg/linalg.hpp"
#include "dpg/mesh.hpp"
#include "dpg/pde_case.hpp"

namespace dpg {

/// Coefficients of u_h (conforming field) and sigma_h (skeleton trace).
struct TrialVector {
  Eigen::VectorXd field;
  Eigen::VectorXd trace;

  static TrialVector zeros(const DofMap& dofs);
  /// Field dofs followed by trace dofs.
  Eigen::VectorXd stacked() const;
  static TrialVector split(const DofMap& dofs, const Eigen::VectorXd& stacked);
};

struct MarchState {
  std::size_t step_index = 0;
  double time = 0.0;
  TrialVector current;
  /// ||u_h^n|| for n = 0..step_index.
  std::vector<double> l2_history;
};

/// Nodal interpolant of u0 at the interior Lagrange nodes; trace set to zero
/// (only the field of the previous level enters the load).
TrialVector initial_field(const SpatialFunction& u0, const DofMap& dofs, const Mesh& mesh);

/// Backward Euler DPG stepper. The condensed matrix and its Jacobi
/// preconditioner are built once; coefficients are time-independent.
class TimeStepper {
public:
  TimeStepper(const Mesh& mesh, const DofMap& dofs, const PdeCoefficients& coeffs, double cg_rel_tol = 1e-12);

  const CondensedSystem& system() const { return system_; }
  const PdeCoefficients& coefficients() const { return coeffs_; }

  /// Initial state at t = 0.
  MarchState start(const SpatialFunction& u0) const;

  /// One step: solve S u^n = condense_load(f_n, u_h^{n-1}). `f_n` must be the
  /// source at the new time t_{n} = (step_index + 1) k.
  MarchState step(const MarchState& state, const SpatialFunction& f_n) const;

  /// Iteration count of the last CG solve.
  int last_iterations() const { return last_iterations_; }

private:
  const Mesh* mesh_;
  const DofMap* dofs_;
  PdeCoefficients coeffs_;
  CondensedSystem system_;
  JacobiPreconditioner precond_;
  double cg_rel_tol_;
  mutable int last_iterations_ = 0;
};

/// Number of uniform steps, N = round(T_end / k). Throws
/// std::invalid_argument unless |N k - T_end| <= 1e-12.
std::size_t step_count(double k, double T_end);

using StepObserver = std::function<void(const MarchState&)>;

/// Marches case.coeffs.T_end / case.coeffs.k steps from the interpolated
/// initial value. `observer`, if set, sees every state including n = 0.
MarchState march(const PdeCase& pde, const Mesh& mesh, const DofMap& dofs, const StepObserver& observer = {});

/// L^2 norm of the discrete field of `field` coefficients.
double field_l2_norm(const Mesh& mesh, const DofMap& dofs, const Eigen::VectorXd& field);

} // namespace dpg
