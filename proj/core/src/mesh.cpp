#include "dpg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace dpg {

namespace {

double signed_area(const Point& a, const Point& b, const Point& c) {
  return 0.5 * ((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());
}

} // namespace

Mesh::Mesh(std::vector<Point> vertices, std::vector<std::array<std::size_t, 3>> elements)
    : vertices_(std::move(vertices)), elements_(std::move(elements)) {
  for (std::size_t k = 0; k < elements_.size(); ++k) {
    const auto& t = elements_[k];
    for (auto v : t) {
      if (v >= vertices_.size()) {
        throw std::invalid_argument("mesh: element " + std::to_string(k) + " references missing vertex");
      }
    }
    if (signed_area(vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]) <= 0.0) {
      throw std::invalid_argument("mesh: element " + std::to_string(k) + " is not counterclockwise");
    }
  }

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_index;
  for (const auto& t : elements_) {
    for (int l = 0; l < 3; ++l) {
      const auto a = t[l];
      const auto b = t[(l + 1) % 3];
      edge_index.emplace(std::minmax(a, b), 0);
    }
  }
  edges_.reserve(edge_index.size());
  for (auto& [key, idx] : edge_index) {
    idx = edges_.size();
    edges_.push_back({key.first, key.second});
  }

  edge_sides_.assign(edges_.size(), {});
  element_edges_.resize(elements_.size());
  for (std::size_t k = 0; k < elements_.size(); ++k) {
    const auto& t = elements_[k];
    for (int l = 0; l < 3; ++l) {
      const auto a = t[l];
      const auto b = t[(l + 1) % 3];
      const auto e = edge_index.at(std::minmax(a, b));
      // Walking a -> b counterclockwise, the outward normal is the clockwise
      // rotation of (b - a); it matches n_e exactly when a is the low vertex.
      element_edges_[k][l] = EdgeRef{e, a < b ? 1 : -1};
      edge_sides_[e].push_back(EdgeSide{k, l});
    }
  }

  boundary_edge_.assign(edges_.size(), false);
  boundary_vertex_.assign(vertices_.size(), false);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto sides = edge_sides_[e].size();
    if (sides > 2) {
      throw std::invalid_argument("mesh: edge shared by more than two elements");
    }
    if (sides == 2 && element_edges_[edge_sides_[e][0].element][edge_sides_[e][0].local_edge].sign ==
                          element_edges_[edge_sides_[e][1].element][edge_sides_[e][1].local_edge].sign) {
      throw std::invalid_argument("mesh: inconsistent orientation across an interior edge");
    }
    if (sides == 1) {
      boundary_edge_[e] = true;
      boundary_vertex_[edges_[e][0]] = true;
      boundary_vertex_[edges_[e][1]] = true;
    }
  }

  for (std::size_t e = 0; e < edges_.size(); ++e) {
    h_max_ = std::max(h_max_, edge_length(e));
  }
}

std::size_t Mesh::num_boundary_edges() const {
  return static_cast<std::size_t>(std::count(boundary_edge_.begin(), boundary_edge_.end(), true));
}

double Mesh::element_area(std::size_t k) const {
  const auto& t = elements_.at(k);
  return signed_area(vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]);
}

double Mesh::edge_length(std::size_t e) const {
  const auto& ed = edges_.at(e);
  return (vertices_[ed[1]] - vertices_[ed[0]]).norm();
}

Point Mesh::edge_normal(std::size_t e) const {
  const auto& ed = edges_.at(e);
  const Point t = (vertices_[ed[1]] - vertices_[ed[0]]).normalized();
  return Point(t.y(), -t.x());
}

Point Mesh::outward_normal(std::size_t k, int local_edge) const {
  if (local_edge < 0 || local_edge > 2) {
    throw std::out_of_range("mesh: local edge index must be in 0..2");
  }
  const auto& t = elements_.at(k);
  const Point& a = vertices_[t[local_edge]];
  const Point& b = vertices_[t[(local_edge + 1) % 3]];
  const Point& c = vertices_[t[(local_edge + 2) % 3]];
  const Point tangent = (b - a).normalized();
  Point n(tangent.y(), -tangent.x());
  if (n.dot(c - a) > 0.0) {
    n = -n;
  }
  return n;
}

int Mesh::edge_orientation_sign(std::size_t element, int local_edge) const {
  if (element >= elements_.size()) {
    throw std::out_of_range("mesh: element index out of range");
  }
  if (local_edge < 0 || local_edge > 2) {
    throw std::out_of_range("mesh: local edge index must be in 0..2");
  }
  return element_edges_[element][local_edge].sign;
}

Mesh build_structured_mesh(std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("build_structured_mesh: n must be at least 1");
  }
  std::vector<Point> vertices;
  vertices.reserve((n + 1) * (n + 1));
  const double h = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j <= n; ++j) {
    for (std::size_t i = 0; i <= n; ++i) {
      // Exact endpoints so boundary coordinates are exactly 0 and 1.
      const double x = (i == n) ? 1.0 : static_cast<double>(i) * h;
      const double y = (j == n) ? 1.0 : static_cast<double>(j) * h;
      vertices.emplace_back(x, y);
    }
  }
  std::vector<std::array<std::size_t, 3>> elements;
  elements.reserve(2 * n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t v00 = j * (n + 1) + i;
      const std::size_t v10 = v00 + 1;
      const std::size_t v01 = v00 + (n + 1);
      const std::size_t v11 = v01 + 1;
      elements.push_back({v00, v10, v11});
      elements.push_back({v00, v11, v01});
    }
  }
  return Mesh(std::move(vertices), std::move(elements));
}

Mesh refine_uniform(const Mesh& mesh) {
  const std::size_t nv = mesh.num_vertices();
  std::vector<Point> vertices = mesh.vertices();
  vertices.reserve(nv + mesh.num_edges());
  for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
    const auto& ed = mesh.edge(e);
    vertices.push_back(0.5 * (mesh.vertex(ed[0]) + mesh.vertex(ed[1])));
  }
  std::vector<std::array<std::size_t, 3>> elements;
  elements.reserve(4 * mesh.num_elements());
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
    const auto& t = mesh.element(k);
    const auto& ee = mesh.element_edges(k);
    const std::size_t m01 = nv + ee[0].edge;
    const std::size_t m12 = nv + ee[1].edge;
    const std::size_t m20 = nv + ee[2].edge;
    elements.push_back({t[0], m01, m20});
    elements.push_back({m01, t[1], m12});
    elements.push_back({m20, m12, t[2]});
    elements.push_back({m01, m12, m20});
  }
  return Mesh(std::move(vertices), std::move(elements));
}

} // namespace dpg
