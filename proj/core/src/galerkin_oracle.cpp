#include "dpg/galerkin_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dpg/basis.hpp"
#include "dpg/timestep.hpp"

namespace dpg {

namespace {

struct AffineMap {
  Point origin;
  Eigen::Matrix2d jacobian;
  double det;
};

AffineMap affine_map(const Mesh& mesh, std::size_t k) {
  const auto& t = mesh.element(k);
  AffineMap m;
  m.origin = mesh.vertex(t[0]);
  m.jacobian.col(0) = mesh.vertex(t[1]) - m.origin;
  m.jacobian.col(1) = mesh.vertex(t[2]) - m.origin;
  m.det = m.jacobian.determinant();
  return m;
}

} // namespace

GalerkinSystem assemble_galerkin(const Mesh& mesh, const DofMap& dofs, double k) {
  if (!(k > 0.0)) {
    throw std::invalid_argument("assemble_galerkin: k must be positive");
  }
  const int degree = dofs.field_degree();
  const TriangleRule rule = triangle_rule(2 * degree);
  const ShapeTable table = lagrange_triangle(degree, rule.points);
  const int nb = table.num_basis();

  std::vector<Triplet> mass;
  std::vector<Triplet> stiff;
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const AffineMap map = affine_map(mesh, e);
    const Eigen::Matrix2d inv_t = map.jacobian.inverse().transpose();
    Eigen::MatrixXd Me = Eigen::MatrixXd::Zero(nb, nb);
    Eigen::MatrixXd Ke = Eigen::MatrixXd::Zero(nb, nb);
    for (int q = 0; q < table.num_points(); ++q) {
      const double w = rule.weights[q] * std::abs(map.det);
      for (int i = 0; i < nb; ++i) {
        const Eigen::Vector2d gi = inv_t * table.gradient(q, i);
        for (int j = 0; j < nb; ++j) {
          const Eigen::Vector2d gj = inv_t * table.gradient(q, j);
          Me(i, j) += w * table.values(q, i) * table.values(q, j);
          Ke(i, j) += w * gi.dot(gj);
        }
      }
    }
    const auto& dof = dofs.element_field_dofs(e);
    for (int i = 0; i < nb; ++i) {
      if (dof[i] == kDirichlet) continue;
      for (int j = 0; j < nb; ++j) {
        if (dof[j] == kDirichlet) continue;
        const auto r = static_cast<std::size_t>(dof[i]);
        const auto c = static_cast<std::size_t>(dof[j]);
        mass.push_back({r, c, Me(i, j)});
        stiff.push_back({r, c, Ke(i, j)});
      }
    }
  }
  GalerkinSystem sys;
  sys.k = k;
  std::vector<Triplet> combined;
  combined.reserve(mass.size() + stiff.size());
  for (const auto& t : mass) combined.push_back({t.row, t.col, t.value / k});
  for (const auto& t : stiff) combined.push_back(t);
  const auto n = dofs.n_field();
  sys.mass = SparseMatrix::from_triplets(n, n, std::move(mass));
  sys.stiffness = SparseMatrix::from_triplets(n, n, std::move(stiff));
  sys.step_matrix = SparseMatrix::from_triplets(n, n, std::move(combined));
  return sys;
}

Eigen::VectorXd galerkin_load(const Mesh& mesh, const DofMap& dofs, const SpatialFunction& g) {
  const int degree = dofs.field_degree();
  const TriangleRule rule = triangle_rule(std::min(kMaxQuadratureDegree, 2 * degree + 8));
  const ShapeTable table = lagrange_triangle(degree, rule.points);
  Eigen::VectorXd load = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dofs.n_field()));
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const AffineMap map = affine_map(mesh, e);
    const auto& dof = dofs.element_field_dofs(e);
    for (int q = 0; q < table.num_points(); ++q) {
      const double w = rule.weights[q] * std::abs(map.det);
      const double gq = g(map.origin + map.jacobian * rule.points[q]);
      for (int i = 0; i < table.num_basis(); ++i) {
        if (dof[i] != kDirichlet) load[dof[i]] += w * gq * table.values(q, i);
      }
    }
  }
  return load;
}

Eigen::VectorXd galerkin_step(const GalerkinSystem& system, const Mesh& mesh, const DofMap& dofs,
                              const Eigen::VectorXd& previous, const SpatialFunction& f_n, double cg_rel_tol) {
  const Eigen::VectorXd rhs = galerkin_load(mesh, dofs, f_n) + (system.mass * previous) / system.k;
  if (rhs.size() == 0) return rhs;
  return cg_solve(system.step_matrix, rhs, JacobiPreconditioner(system.step_matrix), cg_rel_tol, 0, &previous).x;
}

Eigen::VectorXd galerkin_march(const Mesh& mesh, const DofMap& dofs, const PdeCoefficients& coeffs,
                               const std::function<double(double, const Point&)>& f, const SpatialFunction& u0,
                               const std::function<void(std::size_t, const Eigen::VectorXd&)>& observer) {
  coeffs.validate();
  if (!coeffs.is_heat()) {
    throw std::invalid_argument("galerkin_march: the Galerkin oracle only covers A = I, beta = 0, gamma = 0");
  }
  const std::size_t steps = step_count(coeffs.k, coeffs.T_end);
  const GalerkinSystem sys = assemble_galerkin(mesh, dofs, coeffs.k);

  Eigen::VectorXd u(static_cast<Eigen::Index>(dofs.n_field()));
  const auto& nodes = dofs.field_nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) u[static_cast<Eigen::Index>(i)] = u0(nodes[i]);
  if (observer) observer(0, u);
  for (std::size_t n = 1; n <= steps; ++n) {
    const double t = static_cast<double>(n) * coeffs.k;
    u = galerkin_step(sys, mesh, dofs, u, [&](const Point& x) { return f(t, x); });
    if (observer) observer(n, u);
  }
  return u;
}

} // namespace dpg
