#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "dpg/dofmap.hpp"
#include "dpg/mesh.hpp"
#include "dpg/pde_case.hpp"

namespace dpg {

enum class FieldNorm { L2, H1Semi };

/// Default quadrature exactness for error integrals: 2 (p + 2) + 2.
int error_quadrature_degree(const DofMap& dofs);

/// ||u - u_h|| or ||grad(u - u_h)|| by elementwise quadrature.
/// quad_degree < 0 selects error_quadrature_degree(dofs).
double field_error(const Mesh& mesh, const DofMap& dofs, const Eigen::VectorXd& field, const ExactSolution& exact,
                   FieldNorm mode, int quad_degree = -1);

/// Norm of the discrete field alone.
double field_norm(const Mesh& mesh, const DofMap& dofs, const Eigen::VectorXd& field, FieldNorm mode);

/// ||g||_{L^2} of a smooth function by quadrature of the given exactness.
double function_l2_norm(const Mesh& mesh, const SpatialFunction& g, int quad_degree);

/// Discrete dual norm surrogate of sigma - sigma_h:
///   sqrt( sum_K r_K^T G_K^{-1} r_K ),  r_K[m] = <sigma - sigma_h, psi_m>_{dK},
/// with psi_m the P^{test_degree}(K) basis and G_K the V,k Gram matrix. This
/// is a supremum over a finite-dimensional subspace of the broken test space,
/// hence a lower bound for the continuous dual norm. `exact_grad` may be
/// empty, in which case sigma = 0. test_degree < 0 selects p + 2.
double trace_dual_error(const Mesh& mesh, const DofMap& dofs, const PdeCoefficients& coeffs,
                        const Eigen::VectorXd& sigma_h, const SpatialGradient& exact_grad, int test_degree = -1);

/// rate_l = log(e_{l-1} / e_l) / log(s_{l-1} / s_l); the first entry and any
/// entry with a nonpositive error are empty.
std::vector<std::optional<double>> eoc(const std::vector<double>& errors, const std::vector<double>& steps);

struct ErrorReport {
  std::size_t level = 0;
  double h_max = 0.0;
  double k = 0.0;
  std::size_t n_field = 0;
  std::size_t n_trace = 0;
  double err_L2 = 0.0;
  double err_H1_semi = 0.0;
  double err_trace_dual = 0.0;
  std::optional<double> eoc_L2;
  std::optional<double> eoc_H1;
  std::optional<double> eoc_trace;
};

/// Fills the eoc_* members from consecutive reports using `steps` (h or k).
void fill_eoc(std::vector<ErrorReport>& reports, const std::vector<double>& steps);

} // namespace dpg
