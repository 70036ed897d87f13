#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "dpg/basis.hpp"

using namespace dpg;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// Exact integral of x^a y^b over the reference triangle: a! b! / (a + b + 2)!.
double monomial_integral(int a, int b) { return factorial(a) * factorial(b) / factorial(a + b + 2); }

// Oracle: nodal basis expressed in monomials x^a y^b (a + b <= p) by
// inverting the Vandermonde matrix at the nodes. Column i = basis i.
Eigen::MatrixXd monomial_coefficients(int p, std::vector<std::array<int, 2>>& exps) {
  exps.clear();
  for (int a = 0; a <= p; ++a)
    for (int b = 0; a + b <= p; ++b) exps.push_back({a, b});
  const auto nodes = lagrange_triangle_nodes(p);
  const auto n = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXd V(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      V(i, j) = std::pow(nodes[i].x(), exps[j][0]) * std::pow(nodes[i].y(), exps[j][1]);
  return V.inverse();
}

} // namespace

TEST_CASE("triangle rules integrate monomials exactly") {
  for (int d = 0; d <= kMaxQuadratureDegree; ++d) {
    const TriangleRule rule = triangle_rule(d);
    double wsum = 0.0;
    for (double w : rule.weights) {
      CHECK(w > 0.0);
      wsum += w;
    }
    CHECK(std::abs(wsum - 0.5) < 1e-14);
    for (int a = 0; a <= d; ++a) {
      for (int b = 0; a + b <= d; ++b) {
        double q = 0.0;
        for (std::size_t i = 0; i < rule.points.size(); ++i) {
          q += rule.weights[i] * std::pow(rule.points[i].x(), a) * std::pow(rule.points[i].y(), b);
        }
        CHECK(std::abs(q - monomial_integral(a, b)) < 1e-13);
      }
    }
  }
}

TEST_CASE("quadrature examples") {
  const TriangleRule r1 = triangle_rule(1);
  double area = 0.0;
  for (double w : r1.weights) area += w;
  CHECK(std::abs(area - 0.5) < 1e-15);

  const TriangleRule r2 = triangle_rule(2);
  double xx = 0.0;
  for (std::size_t i = 0; i < r2.points.size(); ++i) xx += r2.weights[i] * r2.points[i].x() * r2.points[i].x();
  CHECK(std::abs(xx - 1.0 / 12.0) < 1e-15);

  const EdgeRule e3 = edge_rule(3);
  double t3 = 0.0;
  double w = 0.0;
  for (std::size_t i = 0; i < e3.points.size(); ++i) {
    t3 += e3.weights[i] * std::pow(e3.points[i], 3);
    w += e3.weights[i];
  }
  CHECK(std::abs(t3 - 0.25) < 1e-14);
  CHECK(std::abs(w - 1.0) < 1e-14);
}

TEST_CASE("edge rules integrate monomials exactly") {
  for (int d = 0; d <= kMaxQuadratureDegree; ++d) {
    const EdgeRule rule = edge_rule(d);
    for (int a = 0; a <= d; ++a) {
      double q = 0.0;
      for (std::size_t i = 0; i < rule.points.size(); ++i) q += rule.weights[i] * std::pow(rule.points[i], a);
      CHECK(std::abs(q - 1.0 / (a + 1)) < 1e-14);
    }
  }
}

TEST_CASE("unsupported quadrature degrees") {
  CHECK_THROWS_AS(triangle_rule(-1), std::invalid_argument);
  CHECK_THROWS_AS(triangle_rule(kMaxQuadratureDegree + 1), std::invalid_argument);
  CHECK_THROWS_AS(edge_rule(-1), std::invalid_argument);
}

TEST_CASE("lagrange triangle: nodal property, barycenter, partition of unity") {
  const std::vector<Eigen::Vector2d> center = {{1.0 / 3.0, 1.0 / 3.0}};
  const ShapeTable p1 = lagrange_triangle(1, center);
  for (int i = 0; i < 3; ++i) CHECK(p1.values(0, i) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  for (int p = 1; p <= 3; ++p) {
    const auto nodes = lagrange_triangle_nodes(p);
    CHECK(static_cast<int>(nodes.size()) == triangle_basis_size(p));
    const ShapeTable at_nodes = lagrange_triangle(p, nodes);
    CHECK((at_nodes.values - Eigen::MatrixXd::Identity(at_nodes.num_basis(), at_nodes.num_basis())).cwiseAbs().maxCoeff() <
          1e-13);
  }

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Eigen::Vector2d> pts;
  for (int i = 0; i < 50; ++i) {
    double a = u(rng);
    double b = u(rng);
    if (a + b > 1.0) {
      a = 1.0 - a;
      b = 1.0 - b;
    }
    pts.emplace_back(a, b);
  }
  for (int p = 1; p <= 3; ++p) {
    const ShapeTable t = lagrange_triangle(p, pts);
    for (int q = 0; q < t.num_points(); ++q) {
      CHECK(std::abs(t.values.row(q).sum() - 1.0) < 1e-13);
      CHECK(std::abs(t.grad_x.row(q).sum()) < 1e-13);
      CHECK(std::abs(t.grad_y.row(q).sum()) < 1e-13);
    }
  }
}

TEST_CASE("lagrange triangle gradients match finite differences") {
  const std::vector<Eigen::Vector2d> pt = {{0.21, 0.37}};
  const double h = 1e-6;
  for (int p = 1; p <= 3; ++p) {
    const ShapeTable t = lagrange_triangle(p, pt);
    const std::vector<Eigen::Vector2d> xp = {pt[0] + Eigen::Vector2d(h, 0)}, xm = {pt[0] - Eigen::Vector2d(h, 0)};
    const std::vector<Eigen::Vector2d> yp = {pt[0] + Eigen::Vector2d(0, h)}, ym = {pt[0] - Eigen::Vector2d(0, h)};
    const Eigen::RowVectorXd dx = (lagrange_triangle(p, xp).values - lagrange_triangle(p, xm).values) / (2 * h);
    const Eigen::RowVectorXd dy = (lagrange_triangle(p, yp).values - lagrange_triangle(p, ym).values) / (2 * h);
    CHECK((dx - t.grad_x.row(0)).cwiseAbs().maxCoeff() < 1e-7);
    CHECK((dy - t.grad_y.row(0)).cwiseAbs().maxCoeff() < 1e-7);
  }
}

TEST_CASE("mass matrices match exact monomial integration") {
  for (int p = 1; p <= 3; ++p) {
    std::vector<std::array<int, 2>> exps;
    const Eigen::MatrixXd C = monomial_coefficients(p, exps);
    const auto n = C.cols();
    Eigen::MatrixXd exact = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        for (std::size_t a = 0; a < exps.size(); ++a)
          for (std::size_t b = 0; b < exps.size(); ++b)
            exact(i, j) += C(static_cast<Eigen::Index>(a), i) * C(static_cast<Eigen::Index>(b), j) *
                           monomial_integral(exps[a][0] + exps[b][0], exps[a][1] + exps[b][1]);

    const TriangleRule rule = triangle_rule(2 * p);
    const ShapeTable t = lagrange_triangle(p, rule.points);
    Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(n, n);
    for (int q = 0; q < t.num_points(); ++q)
      mass += rule.weights[q] * t.values.row(q).transpose() * t.values.row(q);
    CHECK((mass - exact).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("lagrange edge basis") {
  const std::vector<double> mid = {0.5};
  CHECK(lagrange_edge(0, mid).values(0, 0) == 1.0);
  const ShapeTable l1 = lagrange_edge(1, mid);
  CHECK(l1.values(0, 0) == doctest::Approx(0.5));
  CHECK(l1.values(0, 1) == doctest::Approx(0.5));
  const std::vector<double> pts = {0.0, 0.13, 0.5, 0.77, 1.0};
  for (int d = 0; d <= 2; ++d) {
    const ShapeTable t = lagrange_edge(d, pts);
    for (int q = 0; q < t.num_points(); ++q) CHECK(std::abs(t.values.row(q).sum() - 1.0) < 1e-14);
  }
  const ShapeTable l2 = lagrange_edge(2, lagrange_edge_nodes(2));
  CHECK((l2.values - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("unsupported basis degrees") {
  const std::vector<Eigen::Vector2d> pt = {{0.1, 0.1}};
  const std::vector<double> t = {0.5};
  CHECK_THROWS_AS(lagrange_triangle(0, pt), std::invalid_argument);
  CHECK_THROWS_AS(lagrange_triangle(4, pt), std::invalid_argument);
  CHECK_THROWS_AS(lagrange_edge(3, t), std::invalid_argument);
  CHECK_THROWS_AS(lagrange_edge(-1, t), std::invalid_argument);
}
