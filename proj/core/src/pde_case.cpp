#include "dpg/pde_case.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dpg {

void PdeCoefficients::validate() const {
  if (std::abs(A(0, 1) - A(1, 0)) > 1e-14 * A.norm()) {
    throw std::invalid_argument("coefficients: A must be symmetric");
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(A);
  if (eig.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("coefficients: A must be positive definite");
  }
  if (gamma < 0.0) {
    throw std::invalid_argument("coefficients: gamma must be nonnegative");
  }
  if (!(k > 0.0) || !(T_end > 0.0)) {
    throw std::invalid_argument("coefficients: k and T_end must be positive");
  }
  if (k > T_end * (1.0 + 1e-14)) {
    throw std::invalid_argument("coefficients: k must not exceed T_end");
  }
}

bool PdeCoefficients::is_heat() const {
  return A == Eigen::Matrix2d::Identity() && beta.isZero(0.0) && gamma == 0.0;
}

double PdeCase::source(double t, const Point& x) const {
  const Eigen::Matrix2d H = solution.hessian(t, x);
  const double div_flux = (coeffs.A.array() * H.array()).sum();
  return solution.dudt(t, x) - div_flux + coeffs.beta.dot(solution.grad(t, x)) + coeffs.gamma * solution.u(t, x);
}

SpatialFunction PdeCase::source_at(double t) const {
  return [self = *this, t](const Point& x) { return self.source(t, x); };
}

ExactSolution PdeCase::exact_at(double t) const {
  return ExactSolution{
      [u = solution.u, t](const Point& x) { return u(t, x); },
      [g = solution.grad, t](const Point& x) { return g(t, x); },
  };
}

SpatialFunction PdeCase::initial_value() const {
  return [u = solution.u](const Point& x) { return u(0.0, x); };
}

const std::vector<std::string>& case_ids() {
  static const std::vector<std::string> ids = {"heat-decay", "adr-decay", "stationary-adr", "aniso"};
  return ids;
}

namespace {

constexpr double pi = std::numbers::pi;

// Spatial profile s(x) s(y) with s = sin(pi .), scaled in time by `decay`.
ManufacturedSolution sine_profile(bool decaying) {
  const auto time_factor = [decaying](double t) { return decaying ? std::exp(-t) : 1.0; };
  ManufacturedSolution m;
  m.u = [=](double t, const Point& x) {
    return time_factor(t) * std::sin(pi * x.x()) * std::sin(pi * x.y());
  };
  m.grad = [=](double t, const Point& x) -> Eigen::Vector2d {
    const double sx = std::sin(pi * x.x());
    const double sy = std::sin(pi * x.y());
    const double cx = std::cos(pi * x.x());
    const double cy = std::cos(pi * x.y());
    return Eigen::Vector2d(pi * cx * sy, pi * sx * cy) * time_factor(t);
  };
  m.hessian = [=](double t, const Point& x) {
    const double sx = std::sin(pi * x.x());
    const double sy = std::sin(pi * x.y());
    const double cx = std::cos(pi * x.x());
    const double cy = std::cos(pi * x.y());
    Eigen::Matrix2d H;
    H << -pi * pi * sx * sy, pi * pi * cx * cy, pi * pi * cx * cy, -pi * pi * sx * sy;
    return Eigen::Matrix2d(H * time_factor(t));
  };
  m.dudt = [=](double t, const Point& x) {
    return decaying ? -std::exp(-t) * std::sin(pi * x.x()) * std::sin(pi * x.y()) : 0.0;
  };
  return m;
}

// e^{-t} x(1-x) y(1-y).
ManufacturedSolution bubble_profile() {
  ManufacturedSolution m;
  m.u = [](double t, const Point& x) {
    return std::exp(-t) * x.x() * (1.0 - x.x()) * x.y() * (1.0 - x.y());
  };
  m.grad = [](double t, const Point& x) -> Eigen::Vector2d {
    const double gx = x.x() * (1.0 - x.x());
    const double gy = x.y() * (1.0 - x.y());
    return Eigen::Vector2d((1.0 - 2.0 * x.x()) * gy, gx * (1.0 - 2.0 * x.y())) * std::exp(-t);
  };
  m.hessian = [](double t, const Point& x) {
    const double gx = x.x() * (1.0 - x.x());
    const double gy = x.y() * (1.0 - x.y());
    const double mixed = (1.0 - 2.0 * x.x()) * (1.0 - 2.0 * x.y());
    Eigen::Matrix2d H;
    H << -2.0 * gy, mixed, mixed, -2.0 * gx;
    return Eigen::Matrix2d(H * std::exp(-t));
  };
  m.dudt = [](double t, const Point& x) {
    return -std::exp(-t) * x.x() * (1.0 - x.x()) * x.y() * (1.0 - x.y());
  };
  return m;
}

} // namespace

PdeCase make_case(std::string_view id, double k, double T_end) {
  PdeCase c;
  c.id = std::string(id);
  c.coeffs.k = k;
  c.coeffs.T_end = T_end;
  if (id == "heat-decay") {
    c.solution = sine_profile(true);
  } else if (id == "adr-decay") {
    c.coeffs.beta = Eigen::Vector2d(1.0, 0.5);
    c.coeffs.gamma = 1.0;
    c.solution = sine_profile(true);
  } else if (id == "stationary-adr") {
    c.coeffs.beta = Eigen::Vector2d(1.0, 0.5);
    c.coeffs.gamma = 1.0;
    c.solution = sine_profile(false);
  } else if (id == "aniso") {
    c.coeffs.A << 2.0, 0.5, 0.5, 1.0;
    c.coeffs.beta = Eigen::Vector2d(0.3, -0.2);
    c.coeffs.gamma = 0.5;
    c.solution = bubble_profile();
  } else {
    throw std::invalid_argument("unknown case id '" + std::string(id) + "'");
  }
  c.coeffs.validate();
  return c;
}

} // namespace dpg
