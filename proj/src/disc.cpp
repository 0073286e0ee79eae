#include "swe/disc.hpp"

#include <algorithm>

#include "swe/assembly.hpp"
#include "swe/common.hpp"

namespace swe {

AssemblyMap build_assembly_map(const FunctionSpace& rows, const FunctionSpace& cols) {
  const int nc = static_cast<int>(rows.lg.size()) / rows.loc_dim;
  AssemblyMap m;
  m.lr = rows.loc_dim;
  m.lc = cols.loc_dim;

  std::vector<std::vector<int>> rowcols(rows.ndof);
  for (int c = 0; c < nc; ++c) {
    const int* rl = &rows.lg[static_cast<size_t>(c) * m.lr];
    const int* cl = &cols.lg[static_cast<size_t>(c) * m.lc];
    for (int i = 0; i < m.lr; ++i)
      for (int j = 0; j < m.lc; ++j) rowcols[rl[i]].push_back(cl[j]);
  }
  SparseMatrix& A = m.mat;
  A.rows = rows.ndof;
  A.cols = cols.ndof;
  A.ia.assign(A.rows + 1, 0);
  for (int r = 0; r < A.rows; ++r) {
    auto& rc = rowcols[r];
    std::sort(rc.begin(), rc.end());
    rc.erase(std::unique(rc.begin(), rc.end()), rc.end());
    A.ia[r + 1] = A.ia[r] + static_cast<int>(rc.size());
  }
  A.ja.reserve(A.ia[A.rows]);
  for (int r = 0; r < A.rows; ++r)
    A.ja.insert(A.ja.end(), rowcols[r].begin(), rowcols[r].end());
  A.a.assign(A.ja.size(), 0.0);

  m.slots.resize(static_cast<size_t>(nc) * m.lr * m.lc);
  for (int c = 0; c < nc; ++c) {
    const int* rl = &rows.lg[static_cast<size_t>(c) * m.lr];
    const int* cl = &cols.lg[static_cast<size_t>(c) * m.lc];
    int* sl = &m.slots[static_cast<size_t>(c) * m.lr * m.lc];
    for (int i = 0; i < m.lr; ++i) {
      const int r = rl[i];
      const int* beg = &A.ja[A.ia[r]];
      const int* end = &A.ja[A.ia[r + 1]];
      for (int j = 0; j < m.lc; ++j) {
        const int* it = std::lower_bound(beg, end, cl[j]);
        SWE_REQUIRE(it != end && *it == cl[j], "assembly map inconsistency");
        sl[i * m.lc + j] = static_cast<int>(A.ia[r] + (it - beg));
      }
    }
  }
  return m;
}

Discretization::Discretization(Mesh m, int vol_degree, int facet_degree)
    : mesh(std::move(m)) {
  coords = build_cubic_coordinates(mesh);
  geom = build_geometry(mesh, coords, vol_degree, facet_degree);
  tab = build_tables(geom.vol, geom.facet);
  V0 = build_space(mesh, SpaceTag::P3);
  V1 = build_space(mesh, SpaceTag::BDM2);
  V2 = build_space(mesh, SpaceTag::DG1);
  TR = build_space(mesh, SpaceTag::TraceP2);

  const int nc = mesh.n_cells();
  M2inv.resize(nc);
  for (int c = 0; c < nc; ++c) {
    Eigen::Matrix3d Me = Eigen::Matrix3d::Zero();
    for (int q = 0; q < geom.nq; ++q) {
      const double w = geom.vol.weights[q] * geom.detJ[static_cast<size_t>(c) * geom.nq + q];
      const double* phi = &tab.dg1_val[q * 3];
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) Me(i, j) += w * phi[i] * phi[j];
    }
    M2inv[c] = Me.inverse();
  }

  map00 = build_assembly_map(V0, V0);
  map11 = build_assembly_map(V1, V1);
  M0 = assemble_mass(*this, V0);
  M1 = assemble_mass(*this, V1);
  M2 = assemble_mass(*this, V2);
}

} // namespace swe
