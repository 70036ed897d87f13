#include "dpg/dofmap.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace dpg {

DofMap::DofMap(const Mesh& mesh, int p) : p_(p) {
  if (p != 0 && p != 1) {
    throw std::invalid_argument("build_dofmap: unsupported p = " + std::to_string(p) + " (expected 0 or 1)");
  }

  std::vector<std::ptrdiff_t> vertex_dof(mesh.num_vertices(), kDirichlet);
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    if (!mesh.is_boundary_vertex(v)) {
      vertex_dof[v] = static_cast<std::ptrdiff_t>(n_field_++);
      field_nodes_.push_back(mesh.vertex(v));
    }
  }
  std::vector<std::ptrdiff_t> edge_dof(mesh.num_edges(), kDirichlet);
  if (p == 1) {
    for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
      if (!mesh.is_boundary_edge(e)) {
        edge_dof[e] = static_cast<std::ptrdiff_t>(n_field_++);
        const auto& ed = mesh.edge(e);
        field_nodes_.push_back(0.5 * (mesh.vertex(ed[0]) + mesh.vertex(ed[1])));
      }
    }
  }
  n_trace_ = static_cast<std::size_t>(p + 1) * mesh.num_edges();

  element_field_dofs_.resize(mesh.num_elements());
  element_trace_dofs_.resize(mesh.num_elements());
  element_trace_signs_.resize(mesh.num_elements());
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
    const auto& tri = mesh.element(k);
    const auto& edges = mesh.element_edges(k);
    auto& fd = element_field_dofs_[k];
    for (int i = 0; i < 3; ++i) fd.push_back(vertex_dof[tri[i]]);
    if (p == 1) {
      for (int l = 0; l < 3; ++l) fd.push_back(edge_dof[edges[l].edge]);
    }
    auto& td = element_trace_dofs_[k];
    for (int l = 0; l < 3; ++l) {
      element_trace_signs_[k][l] = edges[l].sign;
      for (int j = 0; j <= p; ++j) {
        td.push_back(edges[l].edge * static_cast<std::size_t>(p + 1) + static_cast<std::size_t>(j));
      }
    }
  }
}

DofMap build_dofmap(const Mesh& mesh, int p) { return DofMap(mesh, p); }

double trace_basis_value(int p, int j, int sign, double s) {
  const double t = sign > 0 ? s : 1.0 - s;
  if (p == 0) {
    return 1.0;
  }
  if (p == 1) {
    return j == 0 ? 1.0 - t : t;
  }
  throw std::invalid_argument("trace_basis_value: unsupported p");
}

} // namespace dpg
