#include "doctest.h"

#include <cmath>

#include "adr_galerkin.hpp"
#include "dpg/galerkin_oracle.hpp"
#include "dpg/timestep.hpp"

using namespace dpg;

TEST_CASE("Galerkin matrices") {
  const Mesh mesh = build_structured_mesh(4);
  for (int p : {0, 1}) {
    const DofMap dofs(mesh, p);
    const GalerkinSystem sys = assemble_galerkin(mesh, dofs, 0.1);
    CHECK(max_asymmetry(sys.mass) <= 1e-15 * sys.mass.max_abs());
    CHECK(max_asymmetry(sys.stiffness) <= 1e-15 * sys.stiffness.max_abs());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> m(sys.mass.to_dense());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> k(sys.stiffness.to_dense());
    CHECK(m.eigenvalues().minCoeff() > 0.0);
    CHECK(k.eigenvalues().minCoeff() > -1e-12);
    const Eigen::MatrixXd step = sys.mass.to_dense() / 0.1 + sys.stiffness.to_dense();
    CHECK((sys.step_matrix.to_dense() - step).cwiseAbs().maxCoeff() < 1e-12);
    if (p == 0) {
      // Each interior P1 hat has support of area 3 h^2 and integrates to h^2.
      const Eigen::VectorXd load = galerkin_load(mesh, dofs, [](const Point&) { return 1.0; });
      CHECK((load.array() - 1.0 / 16.0).abs().maxCoeff() < 1e-15);
    }
  }
}

TEST_CASE("Galerkin march: zero data and dissipation") {
  const Mesh mesh = build_structured_mesh(4);
  const DofMap dofs(mesh, 1);
  PdeCoefficients c;
  c.k = 0.1;
  c.T_end = 0.5;
  const auto zero = [](double, const Point&) { return 0.0; };
  galerkin_march(mesh, dofs, c, zero, [](const Point&) { return 0.0; },
                 [](std::size_t, const Eigen::VectorXd& u) { CHECK(u.cwiseAbs().maxCoeff() == 0.0); });

  const GalerkinSystem sys = assemble_galerkin(mesh, dofs, c.k);
  const auto m_norm = [&](const Eigen::VectorXd& u) { return std::sqrt(u.dot(sys.mass * u)); };
  double previous = -1.0;
  galerkin_march(mesh, dofs, c, zero, [](const Point& x) { return x.x() * (1.0 - x.x()) * std::sin(3.0 * x.y()) * (1.0 - x.y()); },
                 [&](std::size_t, const Eigen::VectorXd& u) {
                   const double e = m_norm(u);
                   if (previous >= 0.0) CHECK(e <= previous);
                   previous = e;
                 });
}

TEST_CASE("Galerkin march rejects non-heat coefficients") {
  const Mesh mesh = build_structured_mesh(2);
  const DofMap dofs(mesh, 0);
  const auto zero = [](double, const Point&) { return 0.0; };
  const auto u0 = [](const Point&) { return 0.0; };
  PdeCoefficients c;
  c.k = 0.5;
  c.beta = Eigen::Vector2d(1.0, 0.0);
  CHECK_THROWS_AS(galerkin_march(mesh, dofs, c, zero, u0), std::invalid_argument);
  c.beta.setZero();
  c.gamma = 0.1;
  CHECK_THROWS_AS(galerkin_march(mesh, dofs, c, zero, u0), std::invalid_argument);
  c.gamma = 0.0;
  c.A(0, 0) = 2.0;
  CHECK_THROWS_AS(galerkin_march(mesh, dofs, c, zero, u0), std::invalid_argument);
}

TEST_CASE("DPG field equals the Galerkin solution step by step") {
  for (int p : {0, 1}) {
    const Mesh mesh = build_structured_mesh(p == 0 ? 8 : 4);
    const DofMap dofs(mesh, p);
    const PdeCase pde = make_case("heat-decay", 0.01, 0.1);
    std::vector<Eigen::VectorXd> dpg_fields;
    march(pde, mesh, dofs, [&](const MarchState& s) { dpg_fields.push_back(s.current.field); });
    std::size_t compared = 0;
    galerkin_march(mesh, dofs, pde.coeffs, [&](double t, const Point& x) { return pde.source(t, x); },
                   pde.initial_value(), [&](std::size_t n, const Eigen::VectorXd& u) {
                     const double dev = (dpg_fields.at(n) - u).cwiseAbs().maxCoeff() / u.cwiseAbs().maxCoeff();
                     CHECK(dev <= 1e-9);
                     ++compared;
                   });
    CHECK(compared == 11);
  }
}

TEST_CASE("identity fails once convection is switched on") {
  const Mesh mesh = build_structured_mesh(8);
  const DofMap dofs(mesh, 0);
  PdeCase pde = make_case("heat-decay", 0.01, 0.1);
  pde.coeffs.beta = Eigen::Vector2d(1.0, 0.0);
  const Eigen::VectorXd dpg_field = march(pde, mesh, dofs).current.field;
  const Eigen::VectorXd galerkin =
      testing::adr_galerkin_march(mesh, dofs, pde.coeffs, [&](double t, const Point& x) { return pde.source(t, x); },
                                  pde.initial_value());
  CHECK((dpg_field - galerkin).cwiseAbs().maxCoeff() > 1e-6);

  // The same helper reproduces the heat oracle when beta = 0.
  const PdeCase heat = make_case("heat-decay", 0.01, 0.1);
  const Eigen::VectorXd a =
      testing::adr_galerkin_march(mesh, dofs, heat.coeffs, [&](double t, const Point& x) { return heat.source(t, x); },
                                  heat.initial_value());
  const Eigen::VectorXd b = galerkin_march(mesh, dofs, heat.coeffs,
                                           [&](double t, const Point& x) { return heat.source(t, x); },
                                           heat.initial_value());
  CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-10 * b.cwiseAbs().maxCoeff());
}
