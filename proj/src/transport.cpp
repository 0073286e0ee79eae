#include "swe/transport.hpp"

#include <iostream>

#include "swe/common.hpp"

namespace swe {

namespace {

constexpr double upwind_tie_tol = 1e-14;

// Reference P1 mass matrix (metric-free side of the Dtilde solve).
Eigen::Matrix3d reference_p1_mass(const Discretization& d) {
  Eigen::Matrix3d M = Eigen::Matrix3d::Zero();
  for (int q = 0; q < d.nq(); ++q) {
    const double* phi = &d.tab.dg1_val[q * 3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) M(i, j) += d.geom.vol.weights[q] * phi[i] * phi[j];
  }
  return M;
}

// Per-edge upwind flux density in the global facet parametrisation:
//   flux[q] = |e+| * D^u(q) * (u*+.n+)(q)   (equals D^u u*.n ds/dtg).
void upwind_flux(const Discretization& d, const Field& D, const double* ustar_loc_p,
                 int edge, double* flux) {
  const auto& ec = d.mesh.edge_to_cells[edge];
  const int flp = d.mesh.cell_to_edges[ec.plus_cell][ec.plus_facet].flip;
  const int flm = d.mesh.cell_to_edges[ec.minus_cell][ec.minus_facet].flip;
  const double* Dp = &D.x[3 * ec.plus_cell];
  const double* Dm = &D.x[3 * ec.minus_cell];
  const double len = ref::edge_length[ec.plus_facet];

  for (int q = 0; q < d.nqf(); ++q) {
    const int sp = d.tab.fslot(ec.plus_facet, flp, q);
    const int sm = d.tab.fslot(ec.minus_facet, flm, q);
    const double* un = &d.tab.f_bdm_n[static_cast<size_t>(sp) * 12];
    double u_n = 0.0;
    for (int j = 0; j < 12; ++j) u_n += ustar_loc_p[j] * un[j];
    const double* php = &d.tab.f_dg1[static_cast<size_t>(sp) * 3];
    const double* phm = &d.tab.f_dg1[static_cast<size_t>(sm) * 3];
    const double Dplus = Dp[0] * php[0] + Dp[1] * php[1] + Dp[2] * php[2];
    const double Dminus = Dm[0] * phm[0] + Dm[1] * phm[1] + Dm[2] * phm[2];
    double Du;
    if (u_n > upwind_tie_tol)
      Du = Dplus;
    else if (u_n < -upwind_tie_tol)
      Du = Dminus;
    else
      Du = 0.5 * (Dplus + Dminus);
    flux[q] = len * Du * u_n;
  }
}

} // namespace

Field compute_Dtilde(const Discretization& d, const Field& D) {
  SWE_REQUIRE(D.space->tag == SpaceTag::DG1, "compute_Dtilde expects a V2 field");
  const Eigen::Matrix3d Mref_inv = reference_p1_mass(d).inverse();
  const int nq = d.nq();
  Field out(d.V2);
  std::vector<double> Dq(nq);
  for (int c = 0; c < d.n_cells(); ++c) {
    eval_v2(d, D, c, Dq.data());
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    for (int q = 0; q < nq; ++q) {
      const double w = d.geom.vol.weights[q] * d.geom.detJ[static_cast<size_t>(c) * nq + q];
      const double* phi = &d.tab.dg1_val[q * 3];
      for (int i = 0; i < 3; ++i) rhs(i) += w * phi[i] * Dq[q];
    }
    const Eigen::Vector3d coef = Mref_inv * rhs;
    for (int i = 0; i < 3; ++i) out.x[3 * c + i] = coef(i);
  }
  return out;
}

Field dg_tendency(const Discretization& d, const Field& D, const Field& ustar) {
  SWE_REQUIRE(D.space->tag == SpaceTag::DG1 && ustar.space->tag == SpaceTag::BDM2,
              "dg_tendency expects (V2, V1) fields");
  const int nq = d.nq(), nqf = d.nqf();
  std::vector<double> b(d.V2.ndof, 0.0);

  // volume term: grad(phi).u* D dV = gradhat(phihat).uhat* Dhat dxhat
  std::vector<double> uh(2 * nq), Dq(nq);
  for (int c = 0; c < d.n_cells(); ++c) {
    eval_v1_ref(d, ustar, c, uh.data());
    eval_v2(d, D, c, Dq.data());
    double* bc = &b[3 * c];
    for (int q = 0; q < nq; ++q) {
      const double w = d.geom.vol.weights[q] * Dq[q];
      const double* gx = &d.tab.dg1_gx[q * 3];
      const double* gy = &d.tab.dg1_gy[q * 3];
      for (int i = 0; i < 3; ++i)
        bc[i] += w * (gx[i] * uh[2 * q] + gy[i] * uh[2 * q + 1]);
    }
  }

  // facet terms, one pass per edge so the two sides cancel exactly
  std::vector<double> flux(nqf);
  double uloc[12];
  for (int e = 0; e < d.mesh.n_edges(); ++e) {
    const auto& ec = d.mesh.edge_to_cells[e];
    d.V1.gather(ustar.x, ec.plus_cell, uloc);
    upwind_flux(d, D, uloc, e, flux.data());
    const int flp = d.mesh.cell_to_edges[ec.plus_cell][ec.plus_facet].flip;
    const int flm = d.mesh.cell_to_edges[ec.minus_cell][ec.minus_facet].flip;
    double* bp = &b[3 * ec.plus_cell];
    double* bm = &b[3 * ec.minus_cell];
    for (int q = 0; q < nqf; ++q) {
      const double w = d.geom.facet.weights[q] * flux[q];
      const double* php =
          &d.tab.f_dg1[static_cast<size_t>(d.tab.fslot(ec.plus_facet, flp, q)) * 3];
      const double* phm =
          &d.tab.f_dg1[static_cast<size_t>(d.tab.fslot(ec.minus_facet, flm, q)) * 3];
      for (int i = 0; i < 3; ++i) {
        bp[i] -= w * php[i];
        bm[i] += w * phm[i];
      }
    }
  }

  Field out(d.V2);
  for (int c = 0; c < d.n_cells(); ++c) {
    const Eigen::Vector3d coef = d.M2inv[c] * Eigen::Map<const Eigen::Vector3d>(&b[3 * c]);
    for (int i = 0; i < 3; ++i) out.x[3 * c + i] = coef(i);
  }
  return out;
}

Field recover_flux(const Discretization& d, const Field& D, const Field& ustar) {
  SWE_REQUIRE(D.space->tag == SpaceTag::DG1 && ustar.space->tag == SpaceTag::BDM2,
              "recover_flux expects (V2, V1) fields");
  const int nq = d.nq(), nqf = d.nqf();
  const int ne = d.mesh.n_edges();
  Field F(d.V1);

  // facet moments: the three Legendre moments of the upwind flux density are
  // exactly the global edge DOFs of F
  std::vector<double> flux(nqf);
  double uloc[12];
  for (int e = 0; e < ne; ++e) {
    const auto& ec = d.mesh.edge_to_cells[e];
    d.V1.gather(ustar.x, ec.plus_cell, uloc);
    upwind_flux(d, D, uloc, e, flux.data());
    for (int k = 0; k < 3; ++k) {
      double m = 0.0;
      for (int q = 0; q < nqf; ++q)
        m += d.geom.facet.weights[q] * flux[q] * d.tab.f_leg[q * 3 + k];
      F.x[3 * e + k] = m;
    }
  }

  // interior moments: int w.(u* D) dV = int what.(uhat* Dhat) dxhat
  std::vector<double> uh(2 * nq), Dq(nq);
  for (int c = 0; c < d.n_cells(); ++c) {
    eval_v1_ref(d, ustar, c, uh.data());
    eval_v2(d, D, c, Dq.data());
    for (int m = 0; m < 3; ++m) {
      double s = 0.0;
      for (int q = 0; q < nq; ++q) {
        const double* w = &d.tab.wint[q * 6 + 2 * m];
        s += d.geom.vol.weights[q] * Dq[q] * (w[0] * uh[2 * q] + w[1] * uh[2 * q + 1]);
      }
      F.x[3 * ne + 3 * c + m] = s;
    }
  }
  return F;
}

TransportResult ssprk3_step(const Discretization& d, const Field& Dn,
                            const Field& ustar, double dt) {
  SWE_REQUIRE(dt > 0.0, "ssprk3_step needs dt > 0");

  // advective Courant sanity against the shortest edge
  {
    std::vector<double> uh(2 * d.nq());
    double umax = 0.0;
    for (int c = 0; c < d.n_cells(); ++c) {
      eval_v1_ref(d, ustar, c, uh.data());
      for (int q = 0; q < d.nq(); ++q) {
        const size_t idx = static_cast<size_t>(c) * d.nq() + q;
        const Eigen::Vector2d u(uh[2 * q], uh[2 * q + 1]);
        const double speed = std::sqrt(u.dot(d.geom.G[idx] * u)) / d.geom.detJ[idx];
        umax = std::max(umax, speed);
      }
    }
    const double courant = umax * dt / d.geom.min_edge_len;
    if (courant > 1.0)
      std::cerr << "swe warning: advective Courant number " << courant
                << " exceeds 1 (dt=" << dt << ", min edge " << d.geom.min_edge_len
                << ")\n";
  }

  TransportResult r{Field(d.V2), Field(d.V1), {Field(d.V1), Field(d.V1), Field(d.V1)}};

  auto tendency_of = [&](const Field& D, Field& Fout) {
    Fout = recover_flux(d, D, ustar);
    Field t = rehabilitated_div(d, Fout);
    for (double& v : t.x) v = -v;
    return t;
  };

  const Field L0 = tendency_of(Dn, r.stage_flux[0]);
  Field D1(d.V2);
  for (int i = 0; i < D1.size(); ++i) D1.x[i] = Dn.x[i] + dt * L0.x[i];

  const Field L1 = tendency_of(D1, r.stage_flux[1]);
  Field D2(d.V2);
  for (int i = 0; i < D2.size(); ++i)
    D2.x[i] = 0.75 * Dn.x[i] + 0.25 * (D1.x[i] + dt * L1.x[i]);

  const Field L2 = tendency_of(D2, r.stage_flux[2]);
  r.D_next = Field(d.V2);
  for (int i = 0; i < r.D_next.size(); ++i)
    r.D_next.x[i] = (1.0 / 3.0) * Dn.x[i] + (2.0 / 3.0) * (D2.x[i] + dt * L2.x[i]);

  for (int i = 0; i < r.Fbar.size(); ++i)
    r.Fbar.x[i] =
        (r.stage_flux[0].x[i] + r.stage_flux[1].x[i] + 4.0 * r.stage_flux[2].x[i]) / 6.0;

  for (double v : r.D_next.x)
    SWE_REQUIRE(std::isfinite(v), "depth transport produced a non-finite value (dt=", dt, ")");
  return r;
}

} // namespace swe
