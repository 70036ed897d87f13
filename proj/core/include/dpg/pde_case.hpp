#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dpg/mesh.hpp"

namespace dpg {

using SpatialFunction = std::function<double(const Point&)>;
using SpatialGradient = std::function<Eigen::Vector2d(const Point&)>;

/// Constant coefficients of  u_t - div(A grad u) + beta . grad u + gamma u = f
/// together with the uniform time step and end time.
struct PdeCoefficients {
  Eigen::Matrix2d A = Eigen::Matrix2d::Identity();
  Eigen::Vector2d beta = Eigen::Vector2d::Zero();
  double gamma = 0.0;
  double k = 1.0;
  double T_end = 1.0;

  /// Throws std::invalid_argument if A is not SPD, gamma < 0, or the time
  /// parameters are inconsistent (k <= 0, T_end <= 0, k > T_end).
  void validate() const;

  bool is_heat() const;
};

/// Smooth exact field and gradient at a fixed time.
struct ExactSolution {
  SpatialFunction u;
  SpatialGradient grad_u;
};

/// Manufactured space-time solution; the source term follows from the PDE.
struct ManufacturedSolution {
  std::function<double(double, const Point&)> u;
  std::function<Eigen::Vector2d(double, const Point&)> grad;
  std::function<Eigen::Matrix2d(double, const Point&)> hessian;
  std::function<double(double, const Point&)> dudt;
};

struct PdeCase {
  std::string id;
  PdeCoefficients coeffs;
  ManufacturedSolution solution;

  /// f = u_t - div(A grad u) + beta . grad u + gamma u.
  double source(double t, const Point& x) const;
  SpatialFunction source_at(double t) const;
  ExactSolution exact_at(double t) const;
  SpatialFunction initial_value() const;
};

/// Catalog ids: "heat-decay", "adr-decay", "stationary-adr", "aniso".
const std::vector<std::string>& case_ids();

/// Throws std::invalid_argument for an unknown id.
PdeCase make_case(std::string_view id, double k, double T_end);

} // namespace dpg
