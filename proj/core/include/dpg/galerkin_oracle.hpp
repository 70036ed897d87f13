#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "dpg/dofmap.hpp"
#include "dpg/linalg.hpp"
#include "dpg/mesh.hpp"
#include "dpg/pde_case.hpp"

namespace dpg {

/// Standard conforming Galerkin matrices on P^{p+1} cap H^1_0 for the heat
/// equation. Assembled with its own element loops, independently of the DPG
/// assembly, so that it can serve as a cross-check.
struct GalerkinSystem {
  SparseMatrix mass;
  SparseMatrix stiffness;
  /// M / k + K.
  SparseMatrix step_matrix;
  double k = 0.0;
};

GalerkinSystem assemble_galerkin(const Mesh& mesh, const DofMap& dofs, double k);

/// (g, phi_i) over the free field dofs.
Eigen::VectorXd galerkin_load(const Mesh& mesh, const DofMap& dofs, const SpatialFunction& g);

/// One backward Euler step (M/k + K) u^n = (f^n, phi) + (M/k) u^{n-1}.
Eigen::VectorXd galerkin_step(const GalerkinSystem& system, const Mesh& mesh, const DofMap& dofs,
                              const Eigen::VectorXd& previous, const SpatialFunction& f_n,
                              double cg_rel_tol = 1e-13);

/// Backward Euler march to T_end. Only the heat equation (A = I, beta = 0,
/// gamma = 0) is accepted; other coefficients throw std::invalid_argument.
/// `observer`, if set, receives (step index, field) for n = 0..N.
Eigen::VectorXd galerkin_march(const Mesh& mesh, const DofMap& dofs, const PdeCoefficients& coeffs,
                               const std::function<double(double, const Point&)>& f, const SpatialFunction& u0,
                               const std::function<void(std::size_t, const Eigen::VectorXd&)>& observer = {});

} // namespace dpg
