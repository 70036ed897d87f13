#include "dpg/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dpg {

namespace {

ShapeTable tabulate_on_edge(int degree, int local_edge, const EdgeRule& rule) {
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(rule.points.size());
  for (double t : rule.points) pts.push_back(reference_edge_point(local_edge, t));
  return lagrange_triangle(degree, pts);
}

} // namespace

ElementGeometry element_geometry(const Mesh& mesh, std::size_t element) {
  const auto& tri = mesh.element(element);
  const Point& a = mesh.vertex(tri[0]);
  const Point& b = mesh.vertex(tri[1]);
  const Point& c = mesh.vertex(tri[2]);
  ElementGeometry g;
  g.origin = a;
  g.jacobian.col(0) = b - a;
  g.jacobian.col(1) = c - a;
  const double det = g.jacobian.determinant();
  if (!(det > 0.0)) {
    throw std::invalid_argument("element_geometry: degenerate element " + std::to_string(element));
  }
  g.area = 0.5 * det;
  g.inv_jacobian_t = g.jacobian.inverse().transpose();
  return g;
}

LocalAssembler::LocalAssembler(const Mesh& mesh, int p, PdeCoefficients coeffs, int test_degree)
    : mesh_(&mesh), p_(p), test_degree_(test_degree < 0 ? p + 2 : test_degree), coeffs_(std::move(coeffs)) {
  if (p != 0 && p != 1) {
    throw std::invalid_argument("LocalAssembler: unsupported p = " + std::to_string(p));
  }
  coeffs_.validate();
  // Polynomial integrands: mass of the test space has degree 2 test_degree;
  // the trace pairing has degree p + test_degree. Smooth data gets headroom.
  volume_rule_ = triangle_rule(2 * test_degree_);
  edge_rule_ = edge_rule(p_ + test_degree_);
  const int rich = std::min(kMaxQuadratureDegree, 2 * test_degree_ + 6);
  rich_volume_rule_ = triangle_rule(rich);
  rich_edge_rule_ = edge_rule(rich);

  test_volume_ = lagrange_triangle(test_degree_, volume_rule_.points);
  field_volume_ = lagrange_triangle(p_ + 1, volume_rule_.points);
  test_rich_volume_ = lagrange_triangle(test_degree_, rich_volume_rule_.points);
  field_rich_volume_ = lagrange_triangle(p_ + 1, rich_volume_rule_.points);
  for (int l = 0; l < 3; ++l) {
    test_edge_[l] = tabulate_on_edge(test_degree_, l, edge_rule_);
    test_rich_edge_[l] = tabulate_on_edge(test_degree_, l, rich_edge_rule_);
  }
}

Eigen::MatrixXd LocalAssembler::gram(std::size_t element) const {
  const ElementGeometry geo = element_geometry(*mesh_, element);
  const int nt = n_test();
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(nt, nt);
  Eigen::MatrixXd grads(2, nt);
  for (int q = 0; q < test_volume_.num_points(); ++q) {
    const double w = volume_rule_.weights[q] * 2.0 * geo.area;
    for (int i = 0; i < nt; ++i) grads.col(i) = geo.physical_gradient(test_volume_.gradient(q, i));
    const Eigen::VectorXd v = test_volume_.values.row(q).transpose();
    G.noalias() += w * ((1.0 / coeffs_.k) * v * v.transpose() + grads.transpose() * coeffs_.A * grads);
  }
  return 0.5 * (G + G.transpose());
}

Eigen::MatrixXd LocalAssembler::test_mass(std::size_t element) const {
  const ElementGeometry geo = element_geometry(*mesh_, element);
  const int nt = n_test();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(nt, nt);
  for (int q = 0; q < test_volume_.num_points(); ++q) {
    const double w = volume_rule_.weights[q] * 2.0 * geo.area;
    const Eigen::VectorXd v = test_volume_.values.row(q).transpose();
    M.noalias() += w * v * v.transpose();
  }
  return M;
}

Eigen::MatrixXd LocalAssembler::test_field_mass(std::size_t element) const {
  const ElementGeometry geo = element_geometry(*mesh_, element);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n_test(), n_field());
  for (int q = 0; q < test_volume_.num_points(); ++q) {
    const double w = volume_rule_.weights[q] * 2.0 * geo.area;
    M.noalias() += w * test_volume_.values.row(q).transpose() * field_volume_.values.row(q);
  }
  return M;
}

Eigen::MatrixXd LocalAssembler::trial_to_test(std::size_t element, Form form) const {
  const ElementGeometry geo = element_geometry(*mesh_, element);
  const int nt = n_test();
  const int nf = n_field();
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(nt, nf + n_trace());

  Eigen::MatrixXd test_grads(2, nt);
  Eigen::MatrixXd field_grads(2, nf);
  for (int q = 0; q < test_volume_.num_points(); ++q) {
    const double w = volume_rule_.weights[q] * 2.0 * geo.area;
    for (int i = 0; i < nt; ++i) test_grads.col(i) = geo.physical_gradient(test_volume_.gradient(q, i));
    for (int j = 0; j < nf; ++j) field_grads.col(j) = geo.physical_gradient(field_volume_.gradient(q, j));
    const Eigen::VectorXd v = test_volume_.values.row(q).transpose();
    const Eigen::RowVectorXd u = field_volume_.values.row(q);
    const Eigen::RowVectorXd advection = coeffs_.beta.transpose() * field_grads;
    double reaction = coeffs_.gamma;
    if (form == Form::a) reaction += 1.0 / coeffs_.k;
    B.leftCols(nf).noalias() +=
        w * (test_grads.transpose() * coeffs_.A * field_grads + v * advection + reaction * v * u);
  }

  // Trace pairing: -sum_e sign_{K,e} int_e sigma_e v ds.
  const auto& edges = mesh_->element_edges(element);
  for (int l = 0; l < 3; ++l) {
    const double length = mesh_->edge_length(edges[l].edge);
    const int sign = edges[l].sign;
    for (std::size_t q = 0; q < edge_rule_.points.size(); ++q) {
      const double s = edge_rule_.points[q];
      const double w = edge_rule_.weights[q] * length;
      for (int j = 0; j <= p_; ++j) {
        const double sigma = trace_basis_value(p_, j, sign, s);
        B.col(nf + l * (p_ + 1) + j) -= (sign * w * sigma) * test_edge_[l].values.row(static_cast<int>(q)).transpose();
      }
    }
  }
  return B;
}

Eigen::VectorXd LocalAssembler::load(std::size_t element, const SpatialFunction& g,
                                     const Eigen::VectorXd& w_local) const {
  const ElementGeometry geo = element_geometry(*mesh_, element);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n_test());
  for (int q = 0; q < test_rich_volume_.num_points(); ++q) {
    const double w = rich_volume_rule_.weights[q] * 2.0 * geo.area;
    const Point x = geo.map(rich_volume_rule_.points[q]);
    double value = g ? g(x) : 0.0;
    if (w_local.size() > 0) value += field_rich_volume_.values.row(q).dot(w_local) / coeffs_.k;
    f.noalias() += (w * value) * test_rich_volume_.values.row(q).transpose();
  }
  return f;
}

Eigen::VectorXd LocalAssembler::exact_b_functional(std::size_t element, const ExactSolution& exact) const {
  const ElementGeometry geo = element_geometry(*mesh_, element);
  const int nt = n_test();
  Eigen::VectorXd r = Eigen::VectorXd::Zero(nt);
  Eigen::MatrixXd test_grads(2, nt);
  for (int q = 0; q < test_rich_volume_.num_points(); ++q) {
    const double w = rich_volume_rule_.weights[q] * 2.0 * geo.area;
    const Point x = geo.map(rich_volume_rule_.points[q]);
    const Eigen::Vector2d grad_u = exact.grad_u(x);
    const double lower = coeffs_.beta.dot(grad_u) + coeffs_.gamma * exact.u(x);
    for (int i = 0; i < nt; ++i) test_grads.col(i) = geo.physical_gradient(test_rich_volume_.gradient(q, i));
    r.noalias() += w * (test_grads.transpose() * (coeffs_.A * grad_u) +
                        lower * test_rich_volume_.values.row(q).transpose());
  }
  const Eigen::Matrix2d A = coeffs_.A;
  r -= trace_functional(element, [&](const Point& x, std::size_t e) {
    return (A * exact.grad_u(x)).dot(mesh_->edge_normal(e));
  });
  return r;
}

Eigen::VectorXd LocalAssembler::trace_functional(
    std::size_t element, const std::function<double(const Point&, std::size_t)>& sigma) const {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(n_test());
  const auto& tri = mesh_->element(element);
  const auto& edges = mesh_->element_edges(element);
  for (int l = 0; l < 3; ++l) {
    const Point& a = mesh_->vertex(tri[l]);
    const Point& b = mesh_->vertex(tri[(l + 1) % 3]);
    const double length = (b - a).norm();
    for (std::size_t q = 0; q < rich_edge_rule_.points.size(); ++q) {
      const double s = rich_edge_rule_.points[q];
      const Point x = a + s * (b - a);
      const double w = rich_edge_rule_.weights[q] * length;
      r.noalias() += (edges[l].sign * w * sigma(x, edges[l].edge)) *
                     test_rich_edge_[l].values.row(static_cast<int>(q)).transpose();
    }
  }
  return r;
}

Eigen::MatrixXd LocalAssembler::field_in_test_basis() const {
  const auto nodes = lagrange_triangle_nodes(test_degree_);
  return lagrange_triangle(p_ + 1, nodes).values;
}

Eigen::MatrixXd local_gram(const Mesh& mesh, std::size_t element, const PdeCoefficients& coeffs, int p) {
  return LocalAssembler(mesh, p, coeffs).gram(element);
}

Eigen::MatrixXd local_trial_to_test(const Mesh& mesh, std::size_t element, const PdeCoefficients& coeffs,
                                    Form form, int p) {
  return LocalAssembler(mesh, p, coeffs).trial_to_test(element, form);
}

Eigen::VectorXd LocalBlocks::gather(std::size_t element, const Eigen::VectorXd& trial) const {
  const auto& map = trial_dofs[element];
  Eigen::VectorXd local = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(map.size()));
  for (std::size_t j = 0; j < map.size(); ++j) {
    if (map[j] != kDirichlet) local[static_cast<Eigen::Index>(j)] = trial[map[j]];
  }
  return local;
}

LocalBlocks build_local_blocks(const Mesh& mesh, const DofMap& dofs, const PdeCoefficients& coeffs) {
  const LocalAssembler assembler(mesh, dofs.p(), coeffs);
  LocalBlocks blocks;
  blocks.p = dofs.p();
  blocks.n_test = assembler.n_test();
  blocks.n_field = dofs.n_field();
  blocks.n_trace = dofs.n_trace();
  blocks.elements.resize(mesh.num_elements());
  blocks.trial_dofs.resize(mesh.num_elements());
  const auto nf = assembler.n_field();
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
    auto& eb = blocks.elements[k];
    eb.gram = assembler.gram(k);
    eb.gram_factor.compute(eb.gram);
    if (eb.gram_factor.info() != Eigen::Success) {
      throw SolverError("assembly: Cholesky factorization of the Gram matrix failed on element " +
                        std::to_string(k));
    }
    eb.B_b = assembler.trial_to_test(k, Form::b);
    eb.B_a = eb.B_b;
    eb.B_a.leftCols(nf) += (1.0 / coeffs.k) * assembler.test_field_mass(k);

    auto& map = blocks.trial_dofs[k];
    map = dofs.element_field_dofs(k);
    for (auto t : dofs.element_trace_dofs(k)) {
      map.push_back(static_cast<std::ptrdiff_t>(dofs.n_field() + t));
    }
  }
  return blocks;
}

CondensedSystem assemble_condensed(const Mesh& mesh, const DofMap& dofs, const PdeCoefficients& coeffs) {
  CondensedSystem sys;
  sys.blocks = build_local_blocks(mesh, dofs, coeffs);
  sys.mesh_time_ratio = mesh.h_max() / std::sqrt(coeffs.k);
  if (sys.mesh_time_ratio > 10.0) {
    std::ostringstream msg;
    msg << "h k^{-1/2} = " << sys.mesh_time_ratio << " > 10: trace-norm equivalence constants degrade";
    sys.warnings.push_back(msg.str());
  }

  std::vector<Triplet> triplets;
  const auto n_local = static_cast<std::size_t>(sys.blocks.elements.empty() ? 0 : sys.blocks.elements[0].B_a.cols());
  triplets.reserve(mesh.num_elements() * n_local * n_local);
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
    const auto& eb = sys.blocks.elements[k];
    const Eigen::MatrixXd W = eb.gram_factor.matrixL().solve(eb.B_a);
    const Eigen::MatrixXd local = W.transpose() * W;
    const auto& map = sys.blocks.trial_dofs[k];
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (map[i] == kDirichlet) continue;
      for (std::size_t j = 0; j < map.size(); ++j) {
        if (map[j] == kDirichlet) continue;
        triplets.push_back({static_cast<std::size_t>(map[i]), static_cast<std::size_t>(map[j]),
                            local(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))});
      }
    }
  }
  const auto n = sys.blocks.n_trial();
  sys.S = SparseMatrix::from_triplets(n, n, std::move(triplets));
  return sys;
}

Eigen::VectorXd condense_load(const LocalBlocks& blocks, const Mesh& mesh, const DofMap& dofs,
                              const PdeCoefficients& coeffs, const SpatialFunction& g,
                              const Eigen::VectorXd& w_field) {
  if (static_cast<std::size_t>(w_field.size()) != dofs.n_field()) {
    throw std::invalid_argument("condense_load: field vector has wrong length");
  }
  const LocalAssembler assembler(mesh, dofs.p(), coeffs);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(blocks.n_trial()));
  const int nf = assembler.n_field();
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
    const auto& eb = blocks.elements[k];
    const auto& field_map = dofs.element_field_dofs(k);
    Eigen::VectorXd w_local = Eigen::VectorXd::Zero(nf);
    for (int j = 0; j < nf; ++j) {
      if (field_map[j] != kDirichlet) w_local[j] = w_field[field_map[j]];
    }
    const Eigen::VectorXd f = assembler.load(k, g, w_local);
    const Eigen::VectorXd contribution = eb.B_a.transpose() * eb.gram_factor.solve(f);
    const auto& map = blocks.trial_dofs[k];
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (map[i] != kDirichlet) rhs[map[i]] += contribution[static_cast<Eigen::Index>(i)];
    }
  }
  return rhs;
}

Eigen::VectorXd apply_trial_to_test(const LocalBlocks& blocks, const Eigen::VectorXd& trial) {
  if (static_cast<std::size_t>(trial.size()) != blocks.n_trial()) {
    throw std::invalid_argument("apply_trial_to_test: trial vector has wrong length");
  }
  const Eigen::Index nt = blocks.n_test;
  Eigen::VectorXd out(static_cast<Eigen::Index>(blocks.elements.size()) * nt);
  for (std::size_t k = 0; k < blocks.elements.size(); ++k) {
    const auto& eb = blocks.elements[k];
    out.segment(static_cast<Eigen::Index>(k) * nt, nt) = eb.gram_factor.solve(eb.B_a * blocks.gather(k, trial));
  }
  return out;
}

double test_norm(const LocalBlocks& blocks, const Eigen::VectorXd& test) {
  const Eigen::Index nt = blocks.n_test;
  double sum = 0.0;
  for (std::size_t k = 0; k < blocks.elements.size(); ++k) {
    const auto v = test.segment(static_cast<Eigen::Index>(k) * nt, nt);
    sum += v.dot(blocks.elements[k].gram * v);
  }
  return std::sqrt(std::max(sum, 0.0));
}

} // namespace dpg
