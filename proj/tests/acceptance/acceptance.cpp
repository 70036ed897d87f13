// Acceptance criteria; one PASS/FAIL line each. Exit status is nonzero if
// any criterion fails.
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "adr_galerkin.hpp"
#include "discrete_field.hpp"
#include "dpg/elliptic_projection.hpp"
#include "dpg/error_norms.hpp"
#include "dpg/galerkin_oracle.hpp"
#include "dpg/timestep.hpp"
#include "dpgcli/study.hpp"

using namespace dpg;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(3) << v;
  return s.str();
}

std::string fix(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << v;
  return s.str();
}

std::string rate(const std::optional<double>& r) { return r ? fix(*r) : "n/a"; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ExactSolution sinsin() {
  using std::numbers::pi;
  return {[](const Point& x) { return std::sin(pi * x.x()) * std::sin(pi * x.y()); },
          [](const Point& x) -> Eigen::Vector2d {
            return {pi * std::cos(pi * x.x()) * std::sin(pi * x.y()), pi * std::sin(pi * x.x()) * std::cos(pi * x.y())};
          }};
}

Outcome heat_identity() {
  const auto t0 = std::chrono::steady_clock::now();
  const Mesh mesh = build_structured_mesh(8);
  const DofMap dofs(mesh, 0);
  const PdeCase pde = make_case("heat-decay", 0.01, 0.1);
  std::vector<Eigen::VectorXd> dpg_fields;
  march(pde, mesh, dofs, [&](const MarchState& s) { dpg_fields.push_back(s.current.field); });
  double worst = 0.0;
  std::size_t steps = 0;
  galerkin_march(mesh, dofs, pde.coeffs, [&](double t, const Point& x) { return pde.source(t, x); },
                 pde.initial_value(), [&](std::size_t n, const Eigen::VectorXd& u) {
                   worst = std::max(worst, (dpg_fields.at(n) - u).cwiseAbs().maxCoeff() / u.cwiseAbs().maxCoeff());
                   steps = n;
                 });
  const double elapsed = seconds_since(t0);
  return {worst <= 1e-9 && steps == 10 && elapsed < 10.0,
          "max relative DOF deviation " + sci(worst) + " over " + std::to_string(steps) + " steps (<= 1e-9), " +
              fix(elapsed) + " s"};
}

Outcome coercivity() {
  const Mesh mesh = build_structured_mesh(4);
  const DofMap dofs(mesh, 0);
  std::mt19937 rng(20240611);
  std::normal_distribution<double> g;
  double worst_margin = -std::numeric_limits<double>::infinity();
  int samples = 0;
  bool ok = true;
  for (double k : {1.0, 0.01}) {
    const PdeCase pde = make_case("adr-decay", k, k);
    const CondensedSystem sys = assemble_condensed(mesh, dofs, pde.coeffs);
    // A = I here, so the field norm is u^T (M/k + K) u with the Galerkin matrices.
    const GalerkinSystem gal = assemble_galerkin(mesh, dofs, k);
    for (int s = 0; s < 100; ++s) {
      Eigen::VectorXd u(static_cast<Eigen::Index>(dofs.n_trial()));
      for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = g(rng);
      const Eigen::VectorXd field = u.head(static_cast<Eigen::Index>(dofs.n_field()));
      const double lhs = field.dot(gal.step_matrix * field);
      const double rhs = u.dot(sys.S * u);
      worst_margin = std::max(worst_margin, lhs - rhs);
      ok = ok && lhs <= rhs + 1e-10;
      ++samples;
    }
  }
  return {ok, std::to_string(samples) + " samples, max of lhs - u^T S u = " + sci(worst_margin) + " (<= 1e-10)"};
}

Outcome stability() {
  const Mesh mesh = build_structured_mesh(8);
  const DofMap dofs(mesh, 0);
  const PdeCase pde = make_case("adr-decay", 0.05, 1.0);
  const TimeStepper stepper(mesh, dofs, pde.coeffs);
  MarchState s = stepper.start(pde.initial_value());
  double bound = s.l2_history.front();
  double worst = -std::numeric_limits<double>::infinity();
  bool ok = true;
  const int quad = error_quadrature_degree(dofs) + 2;
  for (int n = 1; n <= 20; ++n) {
    const SpatialFunction f = pde.source_at(n * pde.coeffs.k);
    s = stepper.step(s, f);
    bound += pde.coeffs.k * function_l2_norm(mesh, f, quad);
    worst = std::max(worst, s.l2_history.back() - bound);
    ok = ok && s.l2_history.back() <= bound + 1e-8;
  }
  return {ok, "20 steps, max of ||u_h^n|| - bound = " + sci(worst) + " (<= 1e-8)"};
}

dpgcli::RunConfig space_config(dpgcli::KPolicy policy) {
  dpgcli::RunConfig c;
  c.command = dpgcli::Command::ConvergeSpace;
  c.case_id = "stationary-adr";
  c.p = 0;
  c.levels = {4, 8, 16, 32};
  c.k_policy = policy;
  c.k = 0.1;
  c.k_coeff = 1.0;
  c.steps = 5;
  return c;
}

Outcome spatial_h1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = dpgcli::run_study(space_config(dpgcli::KPolicy::Fixed)).reports;
  const double elapsed = seconds_since(t0);
  const auto& last = r.back();
  return {last.eoc_H1 && *last.eoc_H1 >= 0.85 && elapsed < 120.0,
          "k = 0.1, H1 EOC " + rate(last.eoc_H1) + " (>= 0.85); trace surrogate EOC " + rate(last.eoc_trace) +
              " (informational); " + fix(elapsed) + " s"};
}

Outcome spatial_l2() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = dpgcli::run_study(space_config(dpgcli::KPolicy::QuadraticInH)).reports;
  const double elapsed = seconds_since(t0);
  const auto& last = r.back();
  return {last.eoc_L2 && *last.eoc_L2 >= 1.85 && elapsed < 300.0,
          "k = h_max^2, L2 EOC " + rate(last.eoc_L2) + " (>= 1.85); " + fix(elapsed) + " s"};
}

Outcome temporal() {
  dpgcli::RunConfig c;
  c.command = dpgcli::Command::ConvergeTime;
  c.case_id = "heat-decay";
  c.levels = {32};
  c.k_policy = dpgcli::KPolicy::List;
  c.k_list = {1.0 / 4, 1.0 / 8, 1.0 / 16, 1.0 / 32};
  c.reference_k = 1.0 / 512;
  c.T_end = 1.0;
  const auto r = dpgcli::run_study(c).reports;
  const auto& e = r.back().eoc_L2;
  return {e && *e >= 0.85 && *e <= 1.15,
          "L2 EOC " + rate(e) + " in [0.85, 1.15] (H1 " + rate(r.back().eoc_H1) + ", trace " +
              rate(r.back().eoc_trace) + ")"};
}

Outcome projection_rates() {
  dpgcli::RunConfig c;
  c.command = dpgcli::Command::ConvergeProjection;
  c.case_id = "adr-decay";
  c.levels = {4, 8, 16, 32, 64};
  c.k = 0.1;
  const auto r = dpgcli::run_study(c).reports;
  const auto& last = r.back();
  return {last.eoc_H1 && last.eoc_L2 && *last.eoc_H1 >= 0.85 && *last.eoc_L2 >= 1.85,
          "H1 EOC " + rate(last.eoc_H1) + " (>= 0.85), L2 EOC " + rate(last.eoc_L2) + " (>= 1.85)"};
}

Outcome mixed_equivalence() {
  const Mesh mesh = build_structured_mesh(8);
  const DofMap dofs(mesh, 0);
  const PdeCoefficients c = make_case("adr-decay", 0.1, 0.1).coeffs;
  const TrialVector uh = project(mesh, dofs, c, sinsin());
  const MixedSolution mixed = project_mixed(mesh, dofs, c, sinsin());
  const Eigen::VectorXd a = uh.stacked();
  const double rel = (mixed.trial.stacked() - a).cwiseAbs().maxCoeff() / a.cwiseAbs().maxCoeff();

  std::mt19937 rng(8);
  std::normal_distribution<double> g;
  testing::DiscreteField field{&mesh, &dofs, Eigen::VectorXd(static_cast<Eigen::Index>(dofs.n_field()))};
  for (Eigen::Index i = 0; i < field.coeffs.size(); ++i) field.coeffs[i] = g(rng);
  const MixedSolution rep = project_mixed(mesh, dofs, c, field.exact());
  const double vh = rep.test.cwiseAbs().maxCoeff() / field.coeffs.cwiseAbs().maxCoeff();
  return {rel <= 1e-9 && vh <= 1e-9,
          "relative difference " + sci(rel) + " (<= 1e-9); representable data max|v_h| " + sci(vh) + " (<= 1e-9)"};
}

Outcome orthogonality() {
  const Mesh mesh = build_structured_mesh(8);
  const DofMap dofs(mesh, 0);
  const PdeCoefficients c = make_case("adr-decay", 0.1, 0.1).coeffs;
  const ProjectionSystem sys = assemble_projection(mesh, dofs, c);
  const Eigen::VectorXd rhs = sys.rhs(mesh, dofs, c, sinsin());
  const TrialVector uh = project(sys, mesh, dofs, c, sinsin());
  const double res = projection_residual(sys, rhs, uh);
  const double scale = rhs.cwiseAbs().maxCoeff();
  return {res <= 1e-10 * scale, "max residual " + sci(res) + ", scale max|rhs| " + sci(scale) + " (ratio <= 1e-10)"};
}

Outcome structure() {
  double asym = 0.0;
  bool factorized = true;
  for (int p : {0, 1}) {
    const Mesh mesh = build_structured_mesh(8);
    const DofMap dofs(mesh, p);
    for (double k : {1.0, 0.01}) {
      for (const char* id : {"adr-decay", "aniso"}) {
        const CondensedSystem sys = assemble_condensed(mesh, dofs, make_case(id, k, k).coeffs);
        asym = std::max(asym, max_asymmetry(sys.S) / sys.S.max_abs());
        for (const auto& eb : sys.blocks.elements) factorized = factorized && eb.gram_factor.info() == Eigen::Success;
      }
    }
  }

  const Mesh mesh = build_structured_mesh(8);
  const DofMap dofs(mesh, 0);
  PdeCase pde = make_case("heat-decay", 0.01, 0.1);
  pde.coeffs.beta = Eigen::Vector2d(1.0, 0.0);
  const Eigen::VectorXd dpg_field = march(pde, mesh, dofs).current.field;
  const Eigen::VectorXd galerkin = testing::adr_galerkin_march(
      mesh, dofs, pde.coeffs, [&](double t, const Point& x) { return pde.source(t, x); }, pde.initial_value());
  const double diff = (dpg_field - galerkin).cwiseAbs().maxCoeff();
  return {asym <= 1e-12 && factorized && diff > 1e-6,
          "S relative asymmetry " + sci(asym) + " (<= 1e-12); all G_K Cholesky " + (factorized ? "ok" : "FAILED") +
              "; beta = (1,0) DPG vs Galerkin max DOF difference " + sci(diff) + " (> 1e-6)"};
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"heat-equation Galerkin identity", heat_identity},
      {"coercivity of the condensed system", coercivity},
      {"discrete stability bound", stability},
      {"spatial H1 rate", spatial_h1},
      {"spatial L2 rate with k = h^2", spatial_l2},
      {"temporal rate", temporal},
      {"elliptic projection rates", projection_rates},
      {"mixed-system equivalence", mixed_equivalence},
      {"Galerkin orthogonality of the projection", orthogonality},
      {"structural checks and negative control", structure},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << i + 1 << ": " << criteria[i].first << " -- "
              << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
