#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace dpg {

/// Quadrature on the reference triangle {(x, y) : x, y >= 0, x + y <= 1}.
struct TriangleRule {
  std::vector<Eigen::Vector2d> points;
  std::vector<double> weights;
  int exact_degree = 0;
};

/// Quadrature on the reference edge [0, 1].
struct EdgeRule {
  std::vector<double> points;
  std::vector<double> weights;
  int exact_degree = 0;
};

inline constexpr int kMaxQuadratureDegree = 20;

/// Gauss-Legendre rule with `n` points on [0, 1].
EdgeRule gauss_legendre(int n);

/// Rules exact for polynomials up to `exact_degree` (0..kMaxQuadratureDegree).
/// The triangle rule is a collapsed (Duffy) tensor Gauss rule with positive
/// weights.
TriangleRule triangle_rule(int exact_degree);
EdgeRule edge_rule(int exact_degree);

/// Basis values and reference gradients tabulated at a set of points.
/// values(q, i) is basis function i at point q; grad_x / grad_y hold the
/// reference partial derivatives with the same layout. For edge tables
/// grad_y is empty and grad_x holds d/dt.
struct ShapeTable {
  int degree = 0;
  std::vector<Eigen::Vector2d> points;
  Eigen::MatrixXd values;
  Eigen::MatrixXd grad_x;
  Eigen::MatrixXd grad_y;

  int num_points() const { return static_cast<int>(values.rows()); }
  int num_basis() const { return static_cast<int>(values.cols()); }
  Eigen::Vector2d gradient(int q, int i) const { return {grad_x(q, i), grad_y(q, i)}; }
};

/// Number of Lagrange basis functions of degree p on a triangle.
constexpr int triangle_basis_size(int degree) { return (degree + 1) * (degree + 2) / 2; }

/// Nodal points of the degree-p Lagrange basis on the reference triangle.
/// Ordering: the three vertices, then the interior nodes of local edges 0, 1,
/// 2 (edge l walks from vertex l to vertex l+1), then interior nodes.
std::vector<Eigen::Vector2d> lagrange_triangle_nodes(int degree);

/// Nodal Lagrange basis on the reference triangle, degree 1..3.
/// Throws std::invalid_argument for other degrees.
ShapeTable lagrange_triangle(int degree, std::span<const Eigen::Vector2d> points);

/// Nodes of the 1D Lagrange basis on [0, 1]: t = 0, t = 1, then interior
/// nodes in increasing order. Degree 0 has the single node 0.5.
std::vector<double> lagrange_edge_nodes(int degree);

/// 1D Lagrange basis on [0, 1], degree 0..2 (degree 0 is the constant 1).
ShapeTable lagrange_edge(int degree, std::span<const double> points);

/// Reference-triangle coordinates of the point at parameter t on local edge
/// `local_edge` (t = 0 at its start vertex).
Eigen::Vector2d reference_edge_point(int local_edge, double t);

} // namespace dpg
