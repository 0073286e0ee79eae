#include "swe/mesh.hpp"

#include <map>

#include "swe/common.hpp"

namespace swe {

namespace {

// Rebuild edges, cell_to_edges, edge_to_cells and cell_corners from cells.
void build_connectivity(Mesh& m) {
  m.edges.clear();
  m.cell_to_edges.assign(m.cells.size(), {});
  m.edge_to_cells.clear();

  std::map<std::pair<int, int>, int> edge_id;
  // local edge i opposite vertex i, ordered pairs per reference convention
  static constexpr int lev[3][2] = {{1, 2}, {0, 2}, {0, 1}};
  for (int c = 0; c < m.n_cells(); ++c) {
    for (int i = 0; i < 3; ++i) {
      const int a = m.cells[c][lev[i][0]];
      const int b = m.cells[c][lev[i][1]];
      const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
      auto [it, inserted] = edge_id.try_emplace(key, static_cast<int>(m.edges.size()));
      if (inserted) {
        m.edges.push_back({key.first, key.second});
        m.edge_to_cells.push_back({});
      }
      const int e = it->second;
      m.cell_to_edges[c][i] = {e, a < b ? 1 : -1};
      Mesh::EdgeCells& ec = m.edge_to_cells[e];
      if (ec.plus_cell < 0) {
        ec.plus_cell = c;
        ec.plus_facet = i;
      } else {
        SWE_REQUIRE(ec.minus_cell < 0, "edge ", e, " has more than two incident cells");
        ec.minus_cell = c;
        ec.minus_facet = i;
      }
    }
  }
  for (int e = 0; e < m.n_edges(); ++e)
    SWE_REQUIRE(m.edge_to_cells[e].minus_cell >= 0, "edge ", e, " has only one incident cell");

  if (m.cell_corners.empty()) {
    m.cell_corners.resize(m.cells.size());
    for (int c = 0; c < m.n_cells(); ++c)
      for (int k = 0; k < 3; ++k) m.cell_corners[c][k] = m.vertices[m.cells[c][k]];
  }
}

// Swap cell vertices so the geometric normal points away from the origin.
void orient_outward(Mesh& m) {
  for (auto& cell : m.cells) {
    const Eigen::Vector3d& a = m.vertices[cell[0]];
    const Eigen::Vector3d& b = m.vertices[cell[1]];
    const Eigen::Vector3d& c = m.vertices[cell[2]];
    if ((b - a).cross(c - a).dot(a + b + c) < 0.0) std::swap(cell[1], cell[2]);
  }
}

} // namespace

Mesh build_icosahedron(double R) {
  SWE_REQUIRE(R > 0.0, "sphere radius must be positive, got ", R);
  Mesh m;
  m.level = 0;
  m.R = R;
  m.spherical = true;

  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  const double raw[12][3] = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
                             {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
                             {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  for (const auto& v : raw) {
    Eigen::Vector3d p(v[0], v[1], v[2]);
    m.vertices.push_back(p.normalized() * R);
  }
  const int faces[20][3] = {{0, 11, 5},  {0, 5, 1},   {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                            {1, 5, 9},   {5, 11, 4},  {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                            {3, 9, 4},   {3, 4, 2},   {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                            {4, 9, 5},   {2, 4, 11},  {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (const auto& f : faces) m.cells.push_back({f[0], f[1], f[2]});

  orient_outward(m);
  build_connectivity(m);
  return m;
}

Mesh refine(const Mesh& mesh) {
  Mesh m;
  m.level = mesh.level + 1;
  m.R = mesh.R;
  m.spherical = mesh.spherical;
  SWE_REQUIRE(mesh.spherical, "refine() is provided for spherical meshes");
  m.vertices = mesh.vertices;

  // midpoint vertex per edge, radially projected
  std::vector<int> mid(mesh.n_edges());
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const Eigen::Vector3d p =
        0.5 * (mesh.vertices[mesh.edges[e][0]] + mesh.vertices[mesh.edges[e][1]]);
    mid[e] = static_cast<int>(m.vertices.size());
    m.vertices.push_back(p.normalized() * mesh.R);
  }
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const int v0 = mesh.cells[c][0], v1 = mesh.cells[c][1], v2 = mesh.cells[c][2];
    // local edge i opposite vertex i
    const int m0 = mid[mesh.cell_to_edges[c][0].edge]; // between v1,v2
    const int m1 = mid[mesh.cell_to_edges[c][1].edge]; // between v0,v2
    const int m2 = mid[mesh.cell_to_edges[c][2].edge]; // between v0,v1
    m.cells.push_back({v0, m2, m1});
    m.cells.push_back({v1, m0, m2});
    m.cells.push_back({v2, m1, m0});
    m.cells.push_back({m0, m1, m2});
  }
  orient_outward(m);
  build_connectivity(m);
  return m;
}

Mesh icosphere(double R, int level) {
  Mesh m = build_icosahedron(R);
  for (int l = 0; l < level; ++l) m = refine(m);
  return m;
}

Mesh flat_torus(int nx, int ny, double Lx, double Ly) {
  SWE_REQUIRE(nx >= 3 && ny >= 3, "flat_torus needs nx,ny >= 3 for distinct edges");
  Mesh m;
  m.spherical = false;
  m.R = 0.0;
  const double hx = Lx / nx, hy = Ly / ny;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) m.vertices.push_back({i * hx, j * hy, 0.0});
  auto vid = [&](int i, int j) { return ((j % ny + ny) % ny) * nx + ((i % nx + nx) % nx); };
  auto pos = [&](int i, int j) { return Eigen::Vector3d(i * hx, j * hy, 0.0); };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      // even cells are congruent to the scaled reference triangle (J = h*I)
      m.cells.push_back({vid(i, j), vid(i + 1, j), vid(i, j + 1)});
      m.cell_corners.push_back({pos(i, j), pos(i + 1, j), pos(i, j + 1)});
      m.cells.push_back({vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
      m.cell_corners.push_back({pos(i + 1, j), pos(i + 1, j + 1), pos(i, j + 1)});
    }
  // flat cells are already +z oriented by construction
  build_connectivity(m);
  return m;
}

} // namespace swe
