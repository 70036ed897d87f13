#pragma once

#include <cstddef>
#include <vector>

#include "dpg/basis.hpp"
#include "dpg/mesh.hpp"

namespace dpg {

/// Marker for a field node on the Dirichlet boundary (eliminated).
inline constexpr std::ptrdiff_t kDirichlet = -1;

/// Global numbering of U_h = (P^{p+1} cap H^1_0) x P^p(skeleton) and the
/// layout of the broken test space P^{p+2}.
///
/// Field unknowns: interior vertices by vertex index, then (p = 1) interior
/// edge midpoints by edge index. Trace unknowns live on every edge; edge e
/// owns indices [e (p+1), (e+1)(p+1)), ordered along the global edge
/// orientation (lo vertex first). Trace coefficients represent sigma . n_e.
class DofMap {
public:
  DofMap(const Mesh& mesh, int p);

  int p() const { return p_; }
  int field_degree() const { return p_ + 1; }
  int trace_degree() const { return p_; }
  int test_degree() const { return p_ + 2; }

  std::size_t n_field() const { return n_field_; }
  std::size_t n_trace() const { return n_trace_; }
  std::size_t n_trial() const { return n_field_ + n_trace_; }
  int n_test_per_element() const { return triangle_basis_size(p_ + 2); }
  int n_field_per_element() const { return triangle_basis_size(p_ + 1); }
  int n_trace_per_edge() const { return p_ + 1; }
  int n_trace_per_element() const { return 3 * (p_ + 1); }

  /// Local field node -> global field index or kDirichlet.
  const std::vector<std::ptrdiff_t>& element_field_dofs(std::size_t k) const { return element_field_dofs_[k]; }
  /// Local trace slots (local edge major, global orientation within an edge)
  /// -> global trace index in [0, n_trace).
  const std::vector<std::size_t>& element_trace_dofs(std::size_t k) const { return element_trace_dofs_[k]; }
  /// sign(n_K . n_e) per local edge.
  const std::array<int, 3>& element_trace_signs(std::size_t k) const { return element_trace_signs_[k]; }

  /// Physical location of each global field node.
  const std::vector<Point>& field_nodes() const { return field_nodes_; }

private:
  int p_;
  std::size_t n_field_ = 0;
  std::size_t n_trace_ = 0;
  std::vector<std::vector<std::ptrdiff_t>> element_field_dofs_;
  std::vector<std::vector<std::size_t>> element_trace_dofs_;
  std::vector<std::array<int, 3>> element_trace_signs_;
  std::vector<Point> field_nodes_;
};

/// Throws std::invalid_argument unless p is 0 or 1.
DofMap build_dofmap(const Mesh& mesh, int p);

/// Value at local edge parameter s (0 at the element's start vertex of that
/// edge) of the trace basis function `j` of an edge seen with orientation
/// `sign`. Trace functions are parametrised along the global orientation, so
/// a side with sign -1 reads them at 1 - s.
double trace_basis_value(int p, int j, int sign, double s);

} // namespace dpg
