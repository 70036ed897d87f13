#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace dpg {

using Point = Eigen::Vector2d;

/// Reference to a global edge seen from one element side. `sign` is +1 when the
/// element's outward normal agrees with the global edge normal, -1 otherwise.
struct EdgeRef {
  std::size_t edge;
  int sign;
};

/// One side of an edge: the element and the local edge index (0..2) on it.
struct EdgeSide {
  std::size_t element;
  int local_edge;
};

/// Conforming triangulation of the unit square.
///
/// Local edge `l` of an element runs from local vertex `l` to local vertex
/// `(l + 1) % 3`. Global edges are stored with `lo < hi`; their unit normal
/// `n_e` is the clockwise rotation of the unit tangent pointing from `lo` to
/// `hi`. Instances are immutable after construction.
class Mesh {
public:
  /// Builds connectivity from raw vertices and counterclockwise triangles.
  /// Throws std::invalid_argument on clockwise/degenerate elements or
  /// non-manifold edges.
  Mesh(std::vector<Point> vertices, std::vector<std::array<std::size_t, 3>> elements);

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_elements() const { return elements_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  const Point& vertex(std::size_t v) const { return vertices_[v]; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::array<std::size_t, 3>& element(std::size_t k) const { return elements_[k]; }
  const std::vector<std::array<std::size_t, 3>>& elements() const { return elements_; }
  const std::array<std::size_t, 2>& edge(std::size_t e) const { return edges_[e]; }
  const std::array<EdgeRef, 3>& element_edges(std::size_t k) const { return element_edges_[k]; }
  const std::vector<EdgeSide>& edge_sides(std::size_t e) const { return edge_sides_[e]; }

  bool is_boundary_vertex(std::size_t v) const { return boundary_vertex_[v]; }
  bool is_boundary_edge(std::size_t e) const { return boundary_edge_[e]; }
  std::size_t num_boundary_edges() const;

  /// Longest edge length.
  double h_max() const { return h_max_; }

  double element_area(std::size_t k) const;
  double edge_length(std::size_t e) const;
  /// Global unit normal n_e.
  Point edge_normal(std::size_t e) const;
  /// Outward unit normal of element k on its local edge, from geometry.
  Point outward_normal(std::size_t k, int local_edge) const;

  /// Stored sign(n_K . n_e). Throws std::out_of_range on bad indices.
  int edge_orientation_sign(std::size_t element, int local_edge) const;

private:
  std::vector<Point> vertices_;
  std::vector<std::array<std::size_t, 3>> elements_;
  std::vector<std::array<std::size_t, 2>> edges_;
  std::vector<std::array<EdgeRef, 3>> element_edges_;
  std::vector<std::vector<EdgeSide>> edge_sides_;
  std::vector<bool> boundary_vertex_;
  std::vector<bool> boundary_edge_;
  double h_max_ = 0.0;
};

/// n x n squares on the unit square, each cut by its lower-left to
/// upper-right diagonal. Throws std::invalid_argument for n == 0.
Mesh build_structured_mesh(std::size_t n);

/// Red refinement: every triangle split into four through its edge midpoints.
Mesh refine_uniform(const Mesh& mesh);

/// Free-function form of Mesh::edge_orientation_sign.
inline int edge_orientation_sign(const Mesh& mesh, std::size_t element, int local_edge) {
  return mesh.edge_orientation_sign(element, local_edge);
}

} // namespace dpg
