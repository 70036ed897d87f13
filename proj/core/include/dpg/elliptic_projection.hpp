#pragma once

#include <Eigen/Dense>

#include "dpg/assembly.hpp"
#include "dpg/dofmap.hpp"
#include "dpg/linalg.hpp"
#include "dpg/mesh.hpp"
#include "dpg/pde_case.hpp"
#include "dpg/timestep.hpp"

namespace dpg {

/// Matrix of the elliptic projection,
///   N[i][j] = b(phi_j, Theta_h phi_i) = (B_a e_i)^T G^{-1} (B_b e_j),
/// assembled elementwise over the free trial dofs. N is not symmetric.
/// The projection depends on k through Theta_h and the V,k inner product.
struct ProjectionSystem {
  SparseMatrix N;
  LocalBlocks blocks;

  /// rhs_i = b(u, Theta_h phi_i) for a smooth exact solution, using the
  /// flux trace A grad u . n_e on the skeleton.
  Eigen::VectorXd rhs(const Mesh& mesh, const DofMap& dofs, const PdeCoefficients& coeffs,
                      const ExactSolution& exact) const;
};

ProjectionSystem assemble_projection(const Mesh& mesh, const DofMap& dofs, const PdeCoefficients& coeffs);

/// E_h u: solves N x = rhs by sparse LU. Throws SolverError if N is singular.
TrialVector project(const Mesh& mesh, const DofMap& dofs, const PdeCoefficients& coeffs, const ExactSolution& exact);

/// Same, reusing an assembled system.
TrialVector project(const ProjectionSystem& system, const Mesh& mesh, const DofMap& dofs,
                    const PdeCoefficients& coeffs, const ExactSolution& exact);

/// max_i |b(u - u_h, Theta_h phi_i)|, the defining residual of E_h.
double projection_residual(const ProjectionSystem& system, const Eigen::VectorXd& rhs, const TrialVector& uh);

struct MixedSolution {
  /// Element-blocked coefficients of v_h in V_h.
  Eigen::VectorXd test;
  TrialVector trial;
};

/// Monolithic saddle-point form
///   (v_h, dv)_{V,k} + b(u_h, dv) = b(u, dv),   a(dw, v_h) = 0,
/// solved by sparse LU.
MixedSolution project_mixed(const Mesh& mesh, const DofMap& dofs, const PdeCoefficients& coeffs,
                            const ExactSolution& exact);

} // namespace dpg
