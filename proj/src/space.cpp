#include "swe/space.hpp"

#include "swe/common.hpp"

namespace swe {

FunctionSpace build_space(const Mesh& mesh, SpaceTag tag) {
  FunctionSpace s;
  s.tag = tag;
  s.mesh = &mesh;
  const int nv = mesh.n_vertices(), ne = mesh.n_edges(), nc = mesh.n_cells();

  switch (tag) {
    case SpaceTag::P3: {
      s.loc_dim = 10;
      s.ndof = nv + 2 * ne + nc;
      s.lg.resize(static_cast<size_t>(nc) * 10);
      s.sign.assign(s.lg.size(), 1.0);
      for (int c = 0; c < nc; ++c) {
        int* L = &s.lg[static_cast<size_t>(c) * 10];
        for (int v = 0; v < 3; ++v) L[v] = mesh.cells[c][v];
        for (int e = 0; e < 3; ++e) {
          const auto [eid, flip] = mesh.cell_to_edges[c][e];
          const int base = nv + 2 * eid;
          L[3 + 2 * e] = flip > 0 ? base : base + 1;
          L[3 + 2 * e + 1] = flip > 0 ? base + 1 : base;
        }
        L[9] = nv + 2 * ne + c;
      }
      break;
    }
    case SpaceTag::BDM2: {
      s.loc_dim = 12;
      s.ndof = 3 * ne + 3 * nc;
      s.lg.resize(static_cast<size_t>(nc) * 12);
      s.sign.resize(s.lg.size());
      for (int c = 0; c < nc; ++c) {
        int* L = &s.lg[static_cast<size_t>(c) * 12];
        double* S = &s.sign[static_cast<size_t>(c) * 12];
        for (int e = 0; e < 3; ++e) {
          const auto [eid, flip] = mesh.cell_to_edges[c][e];
          const double sigma = mesh.edge_to_cells[eid].plus_cell == c ? 1.0 : -1.0;
          for (int k = 0; k < 3; ++k) {
            L[3 * e + k] = 3 * eid + k;
            S[3 * e + k] = sigma * (flip > 0 || k % 2 == 0 ? 1.0 : -1.0);
          }
        }
        for (int m = 0; m < 3; ++m) {
          L[9 + m] = 3 * ne + 3 * c + m;
          S[9 + m] = 1.0;
        }
      }
      break;
    }
    case SpaceTag::DG1: {
      s.loc_dim = 3;
      s.ndof = 3 * nc;
      s.lg.resize(static_cast<size_t>(nc) * 3);
      s.sign.assign(s.lg.size(), 1.0);
      for (int c = 0; c < nc; ++c)
        for (int j = 0; j < 3; ++j) s.lg[3 * c + j] = 3 * c + j;
      break;
    }
    case SpaceTag::TraceP2: {
      s.loc_dim = 9; // cell view: 3 moments per local facet
      s.ndof = 3 * ne;
      s.lg.resize(static_cast<size_t>(nc) * 9);
      s.sign.assign(s.lg.size(), 1.0);
      for (int c = 0; c < nc; ++c)
        for (int e = 0; e < 3; ++e) {
          const int eid = mesh.cell_to_edges[c][e].edge;
          for (int k = 0; k < 3; ++k) s.lg[9 * c + 3 * e + k] = 3 * eid + k;
        }
      break;
    }
  }
  return s;
}

std::vector<Eigen::Vector3d> piola_evaluate(const CoordinateField& coords,
                                            const FunctionSpace& V1, const Field& u,
                                            int cell,
                                            std::span<const std::array<double, 2>> pts) {
  SWE_REQUIRE(V1.tag == SpaceTag::BDM2, "piola_evaluate expects a V1 field");
  const VectorBasis& bdm = bdm2_basis();
  double loc[12];
  V1.gather(u.x, cell, loc);
  std::vector<Eigen::Vector3d> out(pts.size());
  for (size_t p = 0; p < pts.size(); ++p) {
    double vals[12][2];
    bdm.eval(pts[p].data(), vals);
    double uh[2] = {0.0, 0.0};
    for (int j = 0; j < 12; ++j) {
      uh[0] += loc[j] * vals[j][0];
      uh[1] += loc[j] * vals[j][1];
    }
    Eigen::Vector3d xq;
    Eigen::Matrix<double, 3, 2> J;
    double dJ;
    Eigen::Vector3d k;
    geometry_at(coords.cell_nodes[cell], pts[p].data(), xq, J, dJ, k);
    out[p] = (J * Eigen::Vector2d(uh[0], uh[1])) / dJ;
  }
  return out;
}

Tables build_tables(const QuadratureRule& vol, const QuadratureRule& facet) {
  Tables t;
  t.nq = vol.size();
  t.nqf = facet.size();
  const ScalarBasis& p3 = p3_basis();
  const ScalarBasis& dg1 = dg1_basis();
  const VectorBasis& bdm = bdm2_basis();

  t.p3_val.resize(static_cast<size_t>(t.nq) * 10);
  t.p3_gx.resize(t.p3_val.size());
  t.p3_gy.resize(t.p3_val.size());
  t.dg1_val.resize(static_cast<size_t>(t.nq) * 3);
  t.dg1_gx.resize(t.dg1_val.size());
  t.dg1_gy.resize(t.dg1_val.size());
  t.bdm_val.resize(static_cast<size_t>(t.nq) * 24);
  t.bdm_div.resize(static_cast<size_t>(t.nq) * 12);
  t.wint.resize(static_cast<size_t>(t.nq) * 6);

  for (int q = 0; q < t.nq; ++q) {
    const double* xy = vol.points[q].data();
    p3.eval(xy, &t.p3_val[q * 10]);
    p3.grad(xy, &t.p3_gx[q * 10], &t.p3_gy[q * 10]);
    dg1.eval(xy, &t.dg1_val[q * 3]);
    dg1.grad(xy, &t.dg1_gx[q * 3], &t.dg1_gy[q * 3]);
    double bv[12][2];
    bdm.eval(xy, bv);
    for (int i = 0; i < 12; ++i) {
      t.bdm_val[q * 24 + 2 * i] = bv[i][0];
      t.bdm_val[q * 24 + 2 * i + 1] = bv[i][1];
    }
    bdm.div(xy, &t.bdm_div[q * 12]);
    for (int m = 0; m < 3; ++m) {
      double w[2];
      bdm2_interior_test(m, xy, w);
      t.wint[q * 6 + 2 * m] = w[0];
      t.wint[q * 6 + 2 * m + 1] = w[1];
    }
  }

  const int nfs = 3 * 2 * t.nqf;
  t.f_p3.resize(static_cast<size_t>(nfs) * 10);
  t.f_dg1.resize(static_cast<size_t>(nfs) * 3);
  t.f_bdm_n.resize(static_cast<size_t>(nfs) * 12);
  t.f_leg.resize(static_cast<size_t>(t.nqf) * 3);

  for (int q = 0; q < t.nqf; ++q)
    for (int k = 0; k < 3; ++k)
      t.f_leg[q * 3 + k] = legendre01(k, facet.points[q][0]);

  for (int e = 0; e < 3; ++e)
    for (int fidx = 0; fidx < 2; ++fidx) {
      const int flip = fidx == 0 ? 1 : -1;
      for (int q = 0; q < t.nqf; ++q) {
        const double tg = facet.points[q][0];
        const double tl = flip > 0 ? tg : 1.0 - tg;
        double xy[2];
        ref::edge_point(e, tl, xy);
        const int s = (e * 2 + fidx) * t.nqf + q;
        p3.eval(xy, &t.f_p3[static_cast<size_t>(s) * 10]);
        dg1.eval(xy, &t.f_dg1[static_cast<size_t>(s) * 3]);
        double bv[12][2];
        bdm.eval(xy, bv);
        for (int i = 0; i < 12; ++i)
          t.f_bdm_n[static_cast<size_t>(s) * 12 + i] =
              bv[i][0] * ref::edge_normal[e][0] + bv[i][1] * ref::edge_normal[e][1];
      }
    }
  return t;
}

} // namespace swe
