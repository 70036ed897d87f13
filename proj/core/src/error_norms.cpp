#include "dpg/error_norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dpg/assembly.hpp"
#include "dpg/basis.hpp"

namespace dpg {

int error_quadrature_degree(const DofMap& dofs) { return 2 * (dofs.p() + 2) + 2; }

double field_error(const Mesh& mesh, const DofMap& dofs, const Eigen::VectorXd& field, const ExactSolution& exact,
                   FieldNorm mode, int quad_degree) {
  if (static_cast<std::size_t>(field.size()) != dofs.n_field()) {
    throw std::invalid_argument("field_error: field vector has wrong length");
  }
  const TriangleRule rule = triangle_rule(quad_degree < 0 ? error_quadrature_degree(dofs) : quad_degree);
  const ShapeTable table = lagrange_triangle(dofs.field_degree(), rule.points);
  const int nf = table.num_basis();
  double sum = 0.0;
  Eigen::VectorXd local(nf);
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
    const ElementGeometry geo = element_geometry(mesh, k);
    const auto& map = dofs.element_field_dofs(k);
    for (int j = 0; j < nf; ++j) local[j] = map[j] == kDirichlet ? 0.0 : field[map[j]];
    for (int q = 0; q < table.num_points(); ++q) {
      const double w = rule.weights[q] * 2.0 * geo.area;
      const Point x = geo.map(rule.points[q]);
      if (mode == FieldNorm::L2) {
        const double uh = table.values.row(q).dot(local);
        const double u = exact.u ? exact.u(x) : 0.0;
        sum += w * (u - uh) * (u - uh);
      } else {
        Eigen::Vector2d grad_uh = Eigen::Vector2d::Zero();
        for (int j = 0; j < nf; ++j) grad_uh += local[j] * geo.physical_gradient(table.gradient(q, j));
        const Eigen::Vector2d grad_u = exact.grad_u ? exact.grad_u(x) : Eigen::Vector2d::Zero();
        sum += w * (grad_u - grad_uh).squaredNorm();
      }
    }
  }
  return std::sqrt(sum);
}

double field_norm(const Mesh& mesh, const DofMap& dofs, const Eigen::VectorXd& field, FieldNorm mode) {
  return field_error(mesh, dofs, field, ExactSolution{}, mode);
}

double function_l2_norm(const Mesh& mesh, const SpatialFunction& g, int quad_degree) {
  const TriangleRule rule = triangle_rule(quad_degree);
  double sum = 0.0;
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
    const ElementGeometry geo = element_geometry(mesh, k);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const double v = g(geo.map(rule.points[q]));
      sum += rule.weights[q] * 2.0 * geo.area * v * v;
    }
  }
  return std::sqrt(sum);
}

double trace_dual_error(const Mesh& mesh, const DofMap& dofs, const PdeCoefficients& coeffs,
                        const Eigen::VectorXd& sigma_h, const SpatialGradient& exact_grad, int test_degree) {
  if (static_cast<std::size_t>(sigma_h.size()) != dofs.n_trace()) {
    throw std::invalid_argument("trace_dual_error: trace vector has wrong length");
  }
  const LocalAssembler assembler(mesh, dofs.p(), coeffs, test_degree);
  const int ntr = assembler.n_trace();
  const Eigen::Matrix2d A = coeffs.A;
  double sum = 0.0;
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(assembler.n_test());
    if (exact_grad) {
      r = assembler.trace_functional(k, [&](const Point& x, std::size_t e) {
        return (A * exact_grad(x)).dot(mesh.edge_normal(e));
      });
    }
    // <sigma_h, v>_S = -(trace columns of B_b) sigma_h.
    const Eigen::MatrixXd B = assembler.trial_to_test(k, Form::b);
    const auto& map = dofs.element_trace_dofs(k);
    Eigen::VectorXd local(ntr);
    for (int j = 0; j < ntr; ++j) local[j] = sigma_h[static_cast<Eigen::Index>(map[j])];
    r += B.rightCols(ntr) * local;
    const Eigen::MatrixXd G = assembler.gram(k);
    sum += r.dot(G.llt().solve(r));
  }
  return std::sqrt(std::max(sum, 0.0));
}

std::vector<std::optional<double>> eoc(const std::vector<double>& errors, const std::vector<double>& steps) {
  if (errors.size() != steps.size()) {
    throw std::invalid_argument("eoc: errors and steps differ in length");
  }
  std::vector<std::optional<double>> rates(errors.size());
  for (std::size_t l = 1; l < errors.size(); ++l) {
    if (errors[l - 1] > 0.0 && errors[l] > 0.0 && steps[l - 1] > 0.0 && steps[l] > 0.0 && steps[l - 1] != steps[l]) {
      rates[l] = std::log(errors[l - 1] / errors[l]) / std::log(steps[l - 1] / steps[l]);
    }
  }
  return rates;
}

void fill_eoc(std::vector<ErrorReport>& reports, const std::vector<double>& steps) {
  std::vector<double> l2;
  std::vector<double> h1;
  std::vector<double> tr;
  for (const auto& r : reports) {
    l2.push_back(r.err_L2);
    h1.push_back(r.err_H1_semi);
    tr.push_back(r.err_trace_dual);
  }
  const auto a = eoc(l2, steps);
  const auto b = eoc(h1, steps);
  const auto c = eoc(tr, steps);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    reports[i].eoc_L2 = a[i];
    reports[i].eoc_H1 = b[i];
    reports[i].eoc_trace = c[i];
  }
}

} // namespace dpg
