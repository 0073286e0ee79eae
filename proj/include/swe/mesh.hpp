#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace swe {

// Closed orientable triangulated 2-surface embedded in R^3.  Spherical meshes
// come from icosahedron refinement with radial projection; flat doubly
// periodic meshes are used by tests.  Cells are oriented so the geometric
// normal points outward (sphere) or +z (flat).
struct Mesh {
  int level = 0;
  double R = 1.0;        // sphere radius (meaningless for flat meshes)
  bool spherical = true;

  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> cells; // global vertex ids
  // Per-cell corner coordinates.  Equal to vertices[...] on the sphere; on
  // periodic flat meshes they hold the unwrapped positions of the corners.
  std::vector<std::array<Eigen::Vector3d, 3>> cell_corners;

  std::vector<std::array<int, 2>> edges; // (lower, higher) vertex id

  struct CellEdge {
    int edge = -1;
    int flip = 1; // +1: local direction (low local vertex -> high) matches
                  // the global low-id -> high-id direction; -1 otherwise
  };
  std::vector<std::array<CellEdge, 3>> cell_to_edges; // local edge i opposite vertex i

  struct EdgeCells {
    int plus_cell = -1, minus_cell = -1;  // plus = lower cell index
    int plus_facet = -1, minus_facet = -1; // local edge index within each cell
  };
  std::vector<EdgeCells> edge_to_cells;

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_cells() const { return static_cast<int>(cells.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
};

Mesh build_icosahedron(double R);
Mesh refine(const Mesh& mesh);
Mesh icosphere(double R, int level);

// Doubly periodic flat [0,Lx]x[0,Ly] split into 2*nx*ny right triangles.
Mesh flat_torus(int nx, int ny, double Lx, double Ly);

} // namespace swe
