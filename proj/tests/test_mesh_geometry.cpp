#include <doctest.h>

#include "swe/common.hpp"
#include "swe/geometry.hpp"
#include "swe/mesh.hpp"
#include "swe/reference.hpp"

using namespace swe;

namespace {
constexpr double R_EARTH = 6.37122e6;
}

TEST_SUITE_BEGIN("mesh-geometry");

TEST_CASE("icosahedron combinatorics") {
  const Mesh m = build_icosahedron(R_EARTH);
  CHECK(m.n_cells() == 20);
  CHECK(m.n_edges() == 30);
  CHECK(m.n_vertices() == 12);
  CHECK(m.n_vertices() - m.n_edges() + m.n_cells() == 2);
  for (const auto& v : m.vertices)
    CHECK(std::abs(v.norm() - R_EARTH) < 1e-12 * R_EARTH);
}

TEST_CASE("refinement combinatorics across levels") {
  Mesh m = build_icosahedron(1.0);
  for (int lvl = 1; lvl <= 3; ++lvl) {
    m = refine(m);
    const int F = 20 << (2 * lvl);
    CHECK(m.level == lvl);
    CHECK(m.n_cells() == F);
    CHECK(m.n_edges() == 3 * F / 2);
    CHECK(m.n_vertices() == m.n_edges() - m.n_cells() + 2);
    for (const auto& v : m.vertices) CHECK(std::abs(v.norm() - 1.0) < 1e-12);
  }
  CHECK(m.n_cells() == 1280);          // three refinements
  CHECK(refine(m).n_cells() == 5120);  // four
}

TEST_CASE("every edge has two incident cells with consistent facet labels") {
  const Mesh m = icosphere(1.0, 2);
  for (int e = 0; e < m.n_edges(); ++e) {
    const auto& ec = m.edge_to_cells[e];
    CHECK(ec.plus_cell >= 0);
    CHECK(ec.minus_cell >= 0);
    CHECK(ec.plus_cell < ec.minus_cell); // lower cell index is the plus side
    CHECK(m.cell_to_edges[ec.plus_cell][ec.plus_facet].edge == e);
    CHECK(m.cell_to_edges[ec.minus_cell][ec.minus_facet].edge == e);
  }
}

TEST_CASE("refine is deterministic") {
  const Mesh a = icosphere(2.5, 2);
  const Mesh b = icosphere(2.5, 2);
  REQUIRE(a.n_cells() == b.n_cells());
  for (int c = 0; c < a.n_cells(); ++c)
    for (int k = 0; k < 3; ++k) CHECK(a.cells[c][k] == b.cells[c][k]);
  for (int v = 0; v < a.n_vertices(); ++v)
    CHECK((a.vertices[v] - b.vertices[v]).norm() == 0.0);
}

TEST_CASE("cubic coordinates: nodes on sphere, vertices preserved, continuity") {
  const Mesh m = icosphere(R_EARTH, 1);
  const CoordinateField cf = build_cubic_coordinates(m);
  for (int c = 0; c < m.n_cells(); ++c) {
    for (int n = 0; n < 10; ++n)
      CHECK(std::abs(cf.cell_nodes[c][n].norm() - R_EARTH) < 1e-12 * R_EARTH);
    for (int v = 0; v < 3; ++v)
      CHECK((cf.cell_nodes[c][v] - m.vertices[m.cells[c][v]]).norm() < 1e-9);
  }
  // shared edge nodes agree between the two neighbouring cells
  for (int e = 0; e < m.n_edges(); ++e) {
    const auto& ec = m.edge_to_cells[e];
    auto nodes_of = [&](int cell, int facet, int flip) {
      // local edge nodes at slots 3+2*facet (t=1/3) and 3+2*facet+1 (t=2/3)
      std::array<Eigen::Vector3d, 2> out = {cf.cell_nodes[cell][3 + 2 * facet],
                                            cf.cell_nodes[cell][3 + 2 * facet + 1]};
      if (flip < 0) std::swap(out[0], out[1]);
      return out; // ordered along the global edge direction
    };
    const auto np = nodes_of(ec.plus_cell, ec.plus_facet,
                             m.cell_to_edges[ec.plus_cell][ec.plus_facet].flip);
    const auto nm = nodes_of(ec.minus_cell, ec.minus_facet,
                             m.cell_to_edges[ec.minus_cell][ec.minus_facet].flip);
    CHECK((np[0] - nm[0]).norm() < 1e-14 * R_EARTH);
    CHECK((np[1] - nm[1]).norm() < 1e-14 * R_EARTH);
  }
}

TEST_CASE("geometry_at on a flat reference-congruent triangle") {
  // affine cell congruent to the reference triangle scaled by 2: area A = 2,
  // detJ = 2A = 4 everywhere
  std::array<Eigen::Vector3d, 3> corners = {Eigen::Vector3d(0, 0, 0),
                                            Eigen::Vector3d(2, 0, 0),
                                            Eigen::Vector3d(0, 2, 0)};
  const ScalarBasis& p3 = p3_basis();
  std::array<Eigen::Vector3d, 10> nodes;
  for (int n = 0; n < 10; ++n) {
    const double x = p3.nodes[n][0], y = p3.nodes[n][1];
    nodes[n] = (1 - x - y) * corners[0] + x * corners[1] + y * corners[2];
  }
  const QuadratureRule r = triangle_quadrature(4);
  for (int q = 0; q < r.size(); ++q) {
    Eigen::Vector3d x, k;
    Eigen::Matrix<double, 3, 2> J;
    double dJ;
    geometry_at(nodes, r.points[q].data(), x, J, dJ, k);
    CHECK(dJ == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(std::abs(k.norm() - 1.0) < 1e-13);
    CHECK(std::abs(k.dot(J.col(0))) < 1e-12);
    CHECK(std::abs(k.dot(J.col(1))) < 1e-12);
  }
}

TEST_CASE("sphere surface area from quadrature") {
  // level 3 must hit 4 pi R^2 to 1e-6 relative, and the error must decay at
  // fourth order or better across levels (cubic geometry)
  std::vector<double> errs;
  for (int lvl = 0; lvl <= 3; ++lvl) {
    const Mesh m = icosphere(R_EARTH, lvl);
    const CoordinateField cf = build_cubic_coordinates(m);
    const GeometryCache g = build_geometry(m, cf);
    const double exact = 4.0 * pi * R_EARTH * R_EARTH;
    errs.push_back(std::abs(g.total_area - exact) / exact);
  }
  CHECK(errs[3] < 1e-6);
  // fourth-order decay; the finest pair measures 3.94 and climbs towards 4
  const double order = std::log2(errs[2] / errs[3]);
  CHECK(order >= 3.5);
  CHECK(std::log2(errs[1] / errs[2]) >= 3.0);
}

TEST_CASE("geometry cache invariants on the sphere") {
  const Mesh m = icosphere(R_EARTH, 1);
  const CoordinateField cf = build_cubic_coordinates(m);
  const GeometryCache g = build_geometry(m, cf);
  for (size_t i = 0; i < g.detJ.size(); ++i) {
    CHECK(g.detJ[i] > 0.0);
    CHECK(std::abs(g.k[i].norm() - 1.0) < 1e-12);
    CHECK(std::abs(g.k[i].dot(g.J[i].col(0))) < 1e-12 * g.J[i].col(0).norm());
    CHECK(std::abs(g.k[i].dot(g.J[i].col(1))) < 1e-12 * g.J[i].col(1).norm());
    // outward normal on the sphere
    CHECK(g.k[i].dot(g.x[i]) > 0.0);
  }
  // facet consistency: the two sides see the same physical points
  for (int e = 0; e < m.n_edges(); ++e)
    for (int q = 0; q < g.nqf; ++q) {
      const size_t idx = static_cast<size_t>(e) * g.nqf + q;
      CHECK((g.fx_plus[idx] - g.fx_minus[idx]).norm() < 1e-10 * R_EARTH);
    }
}

TEST_CASE("facet co-normals: exactly opposite on flat cells, kink shrinks on the sphere") {
  {
    const Mesh m = flat_torus(4, 4, 2.0, 1.0);
    const CoordinateField cf = build_cubic_coordinates(m);
    const GeometryCache g = build_geometry(m, cf);
    for (size_t i = 0; i < g.fn_plus.size(); ++i)
      CHECK((g.fn_plus[i] + g.fn_minus[i]).norm() < 1e-12);
  }
  // neighbouring cubic patches of the sphere meet at a kink; its angle must
  // decay with refinement at third order or so
  std::vector<double> kink;
  for (int lvl = 1; lvl <= 3; ++lvl) {
    const Mesh m = icosphere(1.0, lvl);
    const CoordinateField cf = build_cubic_coordinates(m);
    const GeometryCache g = build_geometry(m, cf);
    double worst = 0.0;
    for (size_t i = 0; i < g.fn_plus.size(); ++i)
      worst = std::max(worst, (g.fn_plus[i] + g.fn_minus[i]).norm());
    kink.push_back(worst);
  }
  CHECK(std::log2(kink[0] / kink[1]) > 2.0);
  CHECK(std::log2(kink[1] / kink[2]) > 2.0);
}

TEST_CASE("flat torus mesh is closed and flat") {
  const Mesh m = flat_torus(4, 4, 1.0, 1.0);
  CHECK(m.n_cells() == 32);
  CHECK(m.n_edges() == 48);
  CHECK(m.n_vertices() == 16);
  CHECK(m.n_vertices() - m.n_edges() + m.n_cells() == 0); // torus Euler characteristic
  const CoordinateField cf = build_cubic_coordinates(m);
  const GeometryCache g = build_geometry(m, cf);
  CHECK(g.total_area == doctest::Approx(1.0).epsilon(1e-13));
  for (size_t i = 0; i < g.detJ.size(); ++i)
    CHECK(g.detJ[i] == doctest::Approx(2.0 * 1.0 / 32).epsilon(1e-12));
}

TEST_SUITE_END();
