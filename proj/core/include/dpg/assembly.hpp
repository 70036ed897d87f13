#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "dpg/basis.hpp"
#include "dpg/dofmap.hpp"
#include "dpg/linalg.hpp"
#include "dpg/mesh.hpp"
#include "dpg/pde_case.hpp"

namespace dpg {

/// Affine map x = origin + J xi from the reference triangle onto element K.
struct ElementGeometry {
  Point origin;
  Eigen::Matrix2d jacobian;
  Eigen::Matrix2d inv_jacobian_t;
  double area = 0.0;

  Point map(const Eigen::Vector2d& ref) const { return origin + jacobian * ref; }
  Eigen::Vector2d physical_gradient(const Eigen::Vector2d& ref_grad) const { return inv_jacobian_t * ref_grad; }
};

/// Throws std::invalid_argument for a degenerate element (area <= 0).
ElementGeometry element_geometry(const Mesh& mesh, std::size_t element);

enum class Form { a, b };

/// Per-element quadrature of the DPG forms on one mesh.
///
/// Local trial columns are the field nodes of the element (P^{p+1}, Lagrange
/// order) followed by the trace slots (3 (p+1), local edge major). Rows are
/// the nodal P^{test_degree} basis of the element.
class LocalAssembler {
public:
  /// test_degree < 0 selects p + 2.
  LocalAssembler(const Mesh& mesh, int p, PdeCoefficients coeffs, int test_degree = -1);

  int p() const { return p_; }
  int test_degree() const { return test_degree_; }
  int n_test() const { return test_volume_.num_basis(); }
  int n_field() const { return field_volume_.num_basis(); }
  int n_trace() const { return 3 * (p_ + 1); }
  const PdeCoefficients& coefficients() const { return coeffs_; }

  /// (1/k)(v, dv)_K + (A grad v, grad dv)_K.
  Eigen::MatrixXd gram(std::size_t element) const;
  /// (v_i, dv_j)_K on the test basis.
  Eigen::MatrixXd test_mass(std::size_t element) const;
  /// (u_j, v_i)_K: test rows, field columns.
  Eigen::MatrixXd test_field_mass(std::size_t element) const;
  /// b (or a) evaluated on (trial basis j, test basis i).
  Eigen::MatrixXd trial_to_test(std::size_t element, Form form) const;

  /// (g + w/k, v_i)_K where w is given by its local field-node values.
  Eigen::VectorXd load(std::size_t element, const SpatialFunction& g, const Eigen::VectorXd& w_local) const;

  /// b((u, A grad u . n), v_i) for a smooth exact solution.
  Eigen::VectorXd exact_b_functional(std::size_t element, const ExactSolution& exact) const;

  /// <sigma, v_i>_S restricted to K, i.e. sum_e sign_{K,e} int_e sigma_e v_i,
  /// where sigma(x, e) is the trace value in the global orientation n_e.
  Eigen::VectorXd trace_functional(std::size_t element,
                                   const std::function<double(const Point&, std::size_t)>& sigma) const;

  /// Coefficients, in the test basis, of the local field basis function j.
  Eigen::MatrixXd field_in_test_basis() const;

private:
  const Mesh* mesh_;
  int p_;
  int test_degree_;
  PdeCoefficients coeffs_;
  TriangleRule volume_rule_;
  TriangleRule rich_volume_rule_;
  EdgeRule edge_rule_;
  EdgeRule rich_edge_rule_;
  ShapeTable test_volume_;
  ShapeTable field_volume_;
  ShapeTable test_rich_volume_;
  ShapeTable field_rich_volume_;
  // Test basis on each local edge at edge_rule_ / rich_edge_rule_ points.
  std::array<ShapeTable, 3> test_edge_;
  std::array<ShapeTable, 3> test_rich_edge_;
};

/// Element Gram matrix of the V,k inner product on P^{p+2}.
Eigen::MatrixXd local_gram(const Mesh& mesh, std::size_t element, const PdeCoefficients& coeffs, int p);

/// Element matrix of form a or b (test rows, local trial columns).
Eigen::MatrixXd local_trial_to_test(const Mesh& mesh, std::size_t element, const PdeCoefficients& coeffs,
                                    Form form, int p);

struct ElementBlocks {
  Eigen::MatrixXd gram;
  Eigen::LLT<Eigen::MatrixXd> gram_factor;
  Eigen::MatrixXd B_a;
  Eigen::MatrixXd B_b;
};

/// Element blocks plus the local -> global trial map. Global trial indices
/// are field dofs first, then n_field + trace dof; eliminated Dirichlet
/// columns map to kDirichlet.
struct LocalBlocks {
  int p = 0;
  int n_test = 0;
  std::size_t n_field = 0;
  std::size_t n_trace = 0;
  std::vector<ElementBlocks> elements;
  std::vector<std::vector<std::ptrdiff_t>> trial_dofs;

  std::size_t n_trial() const { return n_field + n_trace; }
  /// Gathers the local trial coefficients of element k (zeros on Dirichlet).
  Eigen::VectorXd gather(std::size_t element, const Eigen::VectorXd& trial) const;
};

/// Throws SolverError when some G_K fails to factorize.
LocalBlocks build_local_blocks(const Mesh& mesh, const DofMap& dofs, const PdeCoefficients& coeffs);

/// Normal equations S = sum_K B_a,K^T G_K^{-1} B_a,K over the free trial dofs.
struct CondensedSystem {
  SparseMatrix S;
  LocalBlocks blocks;
  /// h_max k^{-1/2}; above 10 the trace-norm equivalence degrades.
  double mesh_time_ratio = 0.0;
  std::vector<std::string> warnings;
};

CondensedSystem assemble_condensed(const Mesh& mesh, const DofMap& dofs, const PdeCoefficients& coeffs);

/// Condensed right-hand side sum_K B_a,K^T G_K^{-1} f_K with
/// f_K[i] = (g + w/k, v_i)_K; `w_field` holds global field coefficients.
Eigen::VectorXd condense_load(const LocalBlocks& blocks, const Mesh& mesh, const DofMap& dofs,
                              const PdeCoefficients& coeffs, const SpatialFunction& g,
                              const Eigen::VectorXd& w_field);

/// Theta_h applied to a global trial vector; result is element-blocked
/// (n_elements * n_test entries).
Eigen::VectorXd apply_trial_to_test(const LocalBlocks& blocks, const Eigen::VectorXd& trial);

/// ||v||_{V,k} of an element-blocked test vector.
double test_norm(const LocalBlocks& blocks, const Eigen::VectorXd& test);

} // namespace dpg
