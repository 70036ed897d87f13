#include "dpg/elliptic_projection.hpp"

#include <cmath>
#include <vector>

namespace dpg {

namespace {

void scatter_vector(const std::vector<std::ptrdiff_t>& map, const Eigen::VectorXd& local, Eigen::VectorXd& global) {
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (map[i] != kDirichlet) global[map[i]] += local[static_cast<Eigen::Index>(i)];
  }
}

} // namespace

ProjectionSystem assemble_projection(const Mesh& mesh, const DofMap& dofs, const PdeCoefficients& coeffs) {
  ProjectionSystem sys;
  sys.blocks = build_local_blocks(mesh, dofs, coeffs);
  std::vector<Triplet> triplets;
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
    const auto& eb = sys.blocks.elements[k];
    const Eigen::MatrixXd local = eb.B_a.transpose() * eb.gram_factor.solve(eb.B_b);
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
  sys.N = SparseMatrix::from_triplets(n, n, std::move(triplets));
  return sys;
}

Eigen::VectorXd ProjectionSystem::rhs(const Mesh& mesh, const DofMap& dofs, const PdeCoefficients& coeffs,
                                      const ExactSolution& exact) const {
  const LocalAssembler assembler(mesh, dofs.p(), coeffs);
  Eigen::VectorXd r = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(blocks.n_trial()));
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
    const auto& eb = blocks.elements[k];
    const Eigen::VectorXd ell = assembler.exact_b_functional(k, exact);
    scatter_vector(blocks.trial_dofs[k], eb.B_a.transpose() * eb.gram_factor.solve(ell), r);
  }
  return r;
}

TrialVector project(const ProjectionSystem& system, const Mesh& mesh, const DofMap& dofs,
                    const PdeCoefficients& coeffs, const ExactSolution& exact) {
  const Eigen::VectorXd r = system.rhs(mesh, dofs, coeffs, exact);
  return TrialVector::split(dofs, lu_solve(system.N, r));
}

TrialVector project(const Mesh& mesh, const DofMap& dofs, const PdeCoefficients& coeffs, const ExactSolution& exact) {
  return project(assemble_projection(mesh, dofs, coeffs), mesh, dofs, coeffs, exact);
}

double projection_residual(const ProjectionSystem& system, const Eigen::VectorXd& rhs, const TrialVector& uh) {
  return (rhs - system.N * uh.stacked()).cwiseAbs().maxCoeff();
}

MixedSolution project_mixed(const Mesh& mesh, const DofMap& dofs, const PdeCoefficients& coeffs,
                            const ExactSolution& exact) {
  const LocalBlocks blocks = build_local_blocks(mesh, dofs, coeffs);
  const LocalAssembler assembler(mesh, dofs.p(), coeffs);
  const auto nt = static_cast<std::size_t>(blocks.n_test);
  const std::size_t n_test_total = nt * mesh.num_elements();
  const std::size_t n = n_test_total + blocks.n_trial();

  // Unknown ordering: [v_h (element-blocked) ; u_h (field, trace)].
  std::vector<Triplet> triplets;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
    const auto& eb = blocks.elements[k];
    const std::size_t row0 = k * nt;
    for (std::size_t i = 0; i < nt; ++i) {
      for (std::size_t j = 0; j < nt; ++j) {
        triplets.push_back({row0 + i, row0 + j, eb.gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))});
      }
    }
    const auto& map = blocks.trial_dofs[k];
    for (std::size_t j = 0; j < map.size(); ++j) {
      if (map[j] == kDirichlet) continue;
      const std::size_t col = n_test_total + static_cast<std::size_t>(map[j]);
      for (std::size_t i = 0; i < nt; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        const auto jj = static_cast<Eigen::Index>(j);
        triplets.push_back({row0 + i, col, eb.B_b(ii, jj)});
        triplets.push_back({col, row0 + i, eb.B_a(ii, jj)});
      }
    }
    rhs.segment(static_cast<Eigen::Index>(row0), static_cast<Eigen::Index>(nt)) = assembler.exact_b_functional(k, exact);
  }
  const SparseMatrix saddle = SparseMatrix::from_triplets(n, n, std::move(triplets));
  const Eigen::VectorXd x = lu_solve(saddle, rhs);

  MixedSolution out;
  out.test = x.head(static_cast<Eigen::Index>(n_test_total));
  out.trial = TrialVector::split(dofs, x.tail(static_cast<Eigen::Index>(blocks.n_trial())));
  return out;
}

} // namespace dpg
