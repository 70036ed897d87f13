#include "doctest.h"

#include <cmath>

#include "dpg/mesh.hpp"

using namespace dpg;

namespace {

void check_invariants(const Mesh& mesh) {
  double area = 0.0;
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
    CHECK(mesh.element_area(k) > 0.0);
    area += mesh.element_area(k);
    Point closed = Point::Zero();
    for (int l = 0; l < 3; ++l) {
      const auto& ref = mesh.element_edges(k)[l];
      const double dot = mesh.outward_normal(k, l).dot(mesh.edge_normal(ref.edge));
      CHECK(std::abs(std::abs(dot) - 1.0) < 1e-12);
      CHECK(ref.sign == (dot > 0.0 ? 1 : -1));
      // One-point edge quadrature of sigma_0 . n_e is exact for constants.
      closed += ref.sign * mesh.edge_length(ref.edge) * mesh.edge_normal(ref.edge);
    }
    CHECK(closed.norm() < 1e-14);
  }
  CHECK(std::abs(area - 1.0) < 1e-12);
  for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
    const auto& sides = mesh.edge_sides(e);
    CHECK(mesh.edge(e)[0] < mesh.edge(e)[1]);
    if (mesh.is_boundary_edge(e)) {
      REQUIRE(sides.size() == 1);
    } else {
      REQUIRE(sides.size() == 2);
      CHECK(mesh.edge_orientation_sign(sides[0].element, sides[0].local_edge) ==
            -mesh.edge_orientation_sign(sides[1].element, sides[1].local_edge));
    }
  }
}

} // namespace

TEST_CASE("structured mesh connectivity counts") {
  const Mesh m1 = build_structured_mesh(1);
  CHECK(m1.num_elements() == 2);
  CHECK(m1.num_vertices() == 4);
  CHECK(m1.num_edges() == 5);

  // 2x2 grid by hand: 6 horizontal + 6 vertical + 4 diagonal edges.
  const Mesh m2 = build_structured_mesh(2);
  CHECK(m2.num_elements() == 8);
  CHECK(m2.num_vertices() == 9);
  CHECK(m2.num_edges() == 16);

  for (std::size_t n : {3u, 5u, 8u}) {
    const Mesh m = build_structured_mesh(n);
    CHECK(m.num_elements() == 2 * n * n);
    CHECK(m.num_vertices() == (n + 1) * (n + 1));
    CHECK(m.num_edges() == 3 * n * n + 2 * n);
    CHECK(m.num_boundary_edges() == 4 * n);
    CHECK(m.h_max() == doctest::Approx(std::sqrt(2.0) / static_cast<double>(n)).epsilon(1e-14));
  }
}

TEST_CASE("structured mesh rejects n = 0") { CHECK_THROWS_AS(build_structured_mesh(0), std::invalid_argument); }

TEST_CASE("structured mesh invariants") {
  for (std::size_t n : {1u, 2u, 4u, 7u}) {
    check_invariants(build_structured_mesh(n));
  }
}

TEST_CASE("boundary vertices lie on the square boundary") {
  const Mesh m = build_structured_mesh(4);
  for (std::size_t v = 0; v < m.num_vertices(); ++v) {
    const auto& x = m.vertex(v);
    const bool on_boundary = x.x() == 0.0 || x.x() == 1.0 || x.y() == 0.0 || x.y() == 1.0;
    CHECK(m.is_boundary_vertex(v) == on_boundary);
  }
}

TEST_CASE("boundary edge signs agree with geometric outward normals") {
  const Mesh m = build_structured_mesh(3);
  for (std::size_t e = 0; e < m.num_edges(); ++e) {
    if (!m.is_boundary_edge(e)) continue;
    const auto side = m.edge_sides(e).front();
    const Point outward = m.outward_normal(side.element, side.local_edge);
    const Point mid = 0.5 * (m.vertex(m.edge(e)[0]) + m.vertex(m.edge(e)[1]));
    // Stepping outward from a boundary midpoint leaves the unit square.
    const Point probe = mid + 1e-3 * outward;
    CHECK((probe.x() < 0.0 || probe.x() > 1.0 || probe.y() < 0.0 || probe.y() > 1.0));
    CHECK(m.edge_orientation_sign(side.element, side.local_edge) * m.edge_normal(e).dot(outward) ==
          doctest::Approx(1.0));
  }
}

TEST_CASE("edge orientation sign rejects bad indices") {
  const Mesh m = build_structured_mesh(2);
  CHECK_THROWS_AS(m.edge_orientation_sign(8, 0), std::out_of_range);
  CHECK_THROWS_AS(m.edge_orientation_sign(0, 3), std::out_of_range);
  CHECK_THROWS_AS(edge_orientation_sign(m, 0, -1), std::out_of_range);
}

TEST_CASE("global edge normal is the clockwise rotated lo->hi tangent") {
  const Mesh m = build_structured_mesh(2);
  for (std::size_t e = 0; e < m.num_edges(); ++e) {
    const Point t = (m.vertex(m.edge(e)[1]) - m.vertex(m.edge(e)[0])).normalized();
    const Point n = m.edge_normal(e);
    CHECK(n.x() == doctest::Approx(t.y()));
    CHECK(n.y() == doctest::Approx(-t.x()));
  }
}

TEST_CASE("red refinement") {
  const Mesh coarse = build_structured_mesh(1);
  const Mesh fine = refine_uniform(coarse);
  CHECK(fine.num_elements() == 8);
  check_invariants(fine);

  const Mesh r2 = refine_uniform(build_structured_mesh(2));
  const Mesh b4 = build_structured_mesh(4);
  CHECK(r2.num_elements() == b4.num_elements());
  CHECK(r2.num_vertices() == b4.num_vertices());
  CHECK(r2.num_edges() == b4.num_edges());
  CHECK(r2.num_boundary_edges() == b4.num_boundary_edges());

  Mesh m = build_structured_mesh(3);
  for (int level = 0; level < 3; ++level) {
    const Mesh next = refine_uniform(m);
    CHECK(std::abs(next.h_max() - 0.5 * m.h_max()) < 1e-14);
    CHECK(next.num_elements() == 4 * m.num_elements());
    CHECK(next.num_boundary_edges() == 2 * m.num_boundary_edges());
    check_invariants(next);
    m = next;
  }
}

TEST_CASE("mesh rejects clockwise elements") {
  std::vector<Point> v = {{0, 0}, {1, 0}, {0, 1}};
  CHECK_THROWS_AS(Mesh(v, {{0, 2, 1}}), std::invalid_argument);
  CHECK_NOTHROW(Mesh(v, {{0, 1, 2}}));
}
