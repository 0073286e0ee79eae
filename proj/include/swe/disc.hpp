#pragma once

#include <Eigen/Dense>
#include <memory>

#include "swe/geometry.hpp"
#include "swe/mesh.hpp"
#include "swe/space.hpp"
#include "swe/sparse.hpp"

namespace swe {

// CSR pattern for a (row space, col space) pair plus per-cell slot indices so
// repeated assemblies write straight into the value array.
struct AssemblyMap {
  SparseMatrix mat; // pattern; values reused across assemblies
  std::vector<int> slots;
  int lr = 0, lc = 0;

  void add_local(int cell, const double* local, const FunctionSpace& rows,
                 const FunctionSpace& cols) {
    const double* sr = &rows.sign[static_cast<size_t>(cell) * lr];
    const double* sc = &cols.sign[static_cast<size_t>(cell) * lc];
    const int* sl = &slots[static_cast<size_t>(cell) * lr * lc];
    for (int i = 0; i < lr; ++i)
      for (int j = 0; j < lc; ++j)
        mat.a[sl[i * lc + j]] += sr[i] * sc[j] * local[i * lc + j];
  }
};

AssemblyMap build_assembly_map(const FunctionSpace& rows, const FunctionSpace& cols);

// Everything fixed by the mesh choice: cubic geometry, quadrature caches,
// the four global spaces, per-cell V2 mass inverses and reusable patterns.
struct Discretization {
  Mesh mesh;
  CoordinateField coords;
  GeometryCache geom;
  Tables tab;
  FunctionSpace V0, V1, V2, TR;
  std::vector<Eigen::Matrix3d> M2inv;
  SparseMatrix M0, M1, M2;
  AssemblyMap map00, map11;

  explicit Discretization(Mesh m, int vol_degree = 10, int facet_degree = 8);
  Discretization(const Discretization&) = delete;
  Discretization& operator=(const Discretization&) = delete;

  int n_cells() const { return mesh.n_cells(); }
  int nq() const { return geom.nq; }
  int nqf() const { return geom.nqf; }
};

} // namespace swe
