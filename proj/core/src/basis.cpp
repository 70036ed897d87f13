#include "dpg/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace dpg {

namespace {

// Silvester factor prod_{a<m} (s - a) / (a + 1) and its derivative in s.
std::pair<double, double> silvester(int m, double s) {
  double value = 1.0;
  double deriv = 0.0;
  for (int a = 0; a < m; ++a) {
    const double f = (s - a) / (a + 1);
    const double df = 1.0 / (a + 1);
    deriv = deriv * f + value * df;
    value *= f;
  }
  return {value, deriv};
}

// Barycentric multi-indices (i0, i1, i2) for the nodes, in basis order.
std::vector<std::array<int, 3>> triangle_multi_indices(int p) {
  std::vector<std::array<int, 3>> idx;
  idx.push_back({p, 0, 0});
  idx.push_back({0, p, 0});
  idx.push_back({0, 0, p});
  for (int t = 1; t < p; ++t) idx.push_back({p - t, t, 0});
  for (int t = 1; t < p; ++t) idx.push_back({0, p - t, t});
  for (int t = 1; t < p; ++t) idx.push_back({t, 0, p - t});
  for (int j = 1; j < p; ++j) {
    for (int k = 1; j + k < p; ++k) {
      idx.push_back({p - j - k, j, k});
    }
  }
  return idx;
}

void check_quadrature_degree(int exact_degree) {
  if (exact_degree < 0 || exact_degree > kMaxQuadratureDegree) {
    throw std::invalid_argument("quadrature: unsupported exactness degree " + std::to_string(exact_degree));
  }
}

} // namespace

EdgeRule gauss_legendre(int n) {
  if (n < 1) {
    throw std::invalid_argument("gauss_legendre: need at least one point");
  }
  // Returns (P_n(x), P_n'(x)) by the three-term recurrence.
  const auto legendre = [n](double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
  };
  EdgeRule rule;
  rule.exact_degree = 2 * n - 1;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    rule.points[n - 1 - i] = 0.5 * (x + 1.0);
    rule.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

EdgeRule edge_rule(int exact_degree) {
  check_quadrature_degree(exact_degree);
  EdgeRule rule = gauss_legendre(std::max(1, (exact_degree + 2) / 2));
  rule.exact_degree = exact_degree;
  return rule;
}

TriangleRule triangle_rule(int exact_degree) {
  check_quadrature_degree(exact_degree);
  // (x, y) = (u (1 - v), v) with Jacobian (1 - v): degree d in x, y becomes
  // degree d in u and d + 1 in v.
  const EdgeRule gu = gauss_legendre(std::max(1, (exact_degree + 2) / 2));
  const EdgeRule gv = gauss_legendre(std::max(1, (exact_degree + 3) / 2));
  TriangleRule rule;
  rule.exact_degree = exact_degree;
  for (std::size_t j = 0; j < gv.points.size(); ++j) {
    const double v = gv.points[j];
    for (std::size_t i = 0; i < gu.points.size(); ++i) {
      const double u = gu.points[i];
      rule.points.emplace_back(u * (1.0 - v), v);
      rule.weights.push_back(gu.weights[i] * gv.weights[j] * (1.0 - v));
    }
  }
  return rule;
}

std::vector<Eigen::Vector2d> lagrange_triangle_nodes(int degree) {
  if (degree < 1 || degree > 3) {
    throw std::invalid_argument("lagrange_triangle: unsupported degree " + std::to_string(degree));
  }
  std::vector<Eigen::Vector2d> nodes;
  for (const auto& m : triangle_multi_indices(degree)) {
    nodes.emplace_back(static_cast<double>(m[1]) / degree, static_cast<double>(m[2]) / degree);
  }
  return nodes;
}

ShapeTable lagrange_triangle(int degree, std::span<const Eigen::Vector2d> points) {
  if (degree < 1 || degree > 3) {
    throw std::invalid_argument("lagrange_triangle: unsupported degree " + std::to_string(degree));
  }
  const auto indices = triangle_multi_indices(degree);
  const int nb = static_cast<int>(indices.size());
  const int nq = static_cast<int>(points.size());
  ShapeTable table;
  table.degree = degree;
  table.points.assign(points.begin(), points.end());
  table.values.resize(nq, nb);
  table.grad_x.resize(nq, nb);
  table.grad_y.resize(nq, nb);

  // d(lambda_c)/dx and d(lambda_c)/dy for lambda = (1 - x - y, x, y).
  constexpr double dlx[3] = {-1.0, 1.0, 0.0};
  constexpr double dly[3] = {-1.0, 0.0, 1.0};
  for (int q = 0; q < nq; ++q) {
    const double x = points[q].x();
    const double y = points[q].y();
    const double lambda[3] = {1.0 - x - y, x, y};
    for (int b = 0; b < nb; ++b) {
      double f[3];
      double df[3];
      for (int c = 0; c < 3; ++c) {
        const auto [v, d] = silvester(indices[b][c], degree * lambda[c]);
        f[c] = v;
        df[c] = d * degree;
      }
      table.values(q, b) = f[0] * f[1] * f[2];
      double gx = 0.0;
      double gy = 0.0;
      for (int c = 0; c < 3; ++c) {
        const double others = f[(c + 1) % 3] * f[(c + 2) % 3];
        gx += df[c] * dlx[c] * others;
        gy += df[c] * dly[c] * others;
      }
      table.grad_x(q, b) = gx;
      table.grad_y(q, b) = gy;
    }
  }
  return table;
}

std::vector<double> lagrange_edge_nodes(int degree) {
  switch (degree) {
  case 0:
    return {0.5};
  case 1:
    return {0.0, 1.0};
  case 2:
    return {0.0, 1.0, 0.5};
  default:
    throw std::invalid_argument("lagrange_edge: unsupported degree " + std::to_string(degree));
  }
}

ShapeTable lagrange_edge(int degree, std::span<const double> points) {
  const auto nodes = lagrange_edge_nodes(degree);
  const int nb = static_cast<int>(nodes.size());
  const int nq = static_cast<int>(points.size());
  ShapeTable table;
  table.degree = degree;
  table.values.resize(nq, nb);
  table.grad_x.resize(nq, nb);
  for (int q = 0; q < nq; ++q) {
    const double t = points[q];
    table.points.emplace_back(t, 0.0);
    for (int i = 0; i < nb; ++i) {
      double value = 1.0;
      double deriv = 0.0;
      for (int j = 0; j < nb; ++j) {
        if (j == i) continue;
        const double f = (t - nodes[j]) / (nodes[i] - nodes[j]);
        const double df = 1.0 / (nodes[i] - nodes[j]);
        deriv = deriv * f + value * df;
        value *= f;
      }
      table.values(q, i) = value;
      table.grad_x(q, i) = deriv;
    }
  }
  return table;
}

Eigen::Vector2d reference_edge_point(int local_edge, double t) {
  static const Eigen::Vector2d corners[3] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  if (local_edge < 0 || local_edge > 2) {
    throw std::out_of_range("reference_edge_point: local edge must be in 0..2");
  }
  const auto& a = corners[local_edge];
  const auto& b = corners[(local_edge + 1) % 3];
  return a + t * (b - a);
}

} // namespace dpg
