#include "swe/geometry.hpp"

#include <limits>

#include "swe/common.hpp"
#include "swe/reference.hpp"

namespace swe {

namespace {

// Great-circle interpolation between two points on the sphere of radius R.
Eigen::Vector3d slerp(const Eigen::Vector3d& a, const Eigen::Vector3d& b, double t,
                      double R) {
  const Eigen::Vector3d ua = a.normalized(), ub = b.normalized();
  const double ang = std::acos(std::clamp(ua.dot(ub), -1.0, 1.0));
  if (ang < 1e-14) return ((1.0 - t) * a + t * b).normalized() * R;
  return (std::sin((1.0 - t) * ang) * ua + std::sin(t * ang) * ub) / std::sin(ang) * R;
}

} // namespace

CoordinateField build_cubic_coordinates(const Mesh& mesh) {
  const ScalarBasis& p3 = p3_basis();
  CoordinateField cf;
  cf.cell_nodes.resize(mesh.n_cells());
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const auto& corners = mesh.cell_corners[c];
    for (int n = 0; n < 10; ++n) {
      const double x = p3.nodes[n][0], y = p3.nodes[n][1];
      Eigen::Vector3d p =
          (1.0 - x - y) * corners[0] + x * corners[1] + y * corners[2];
      if (mesh.spherical) p = p.normalized() * mesh.R;
      cf.cell_nodes[c][n] = p;
    }
    if (mesh.spherical) {
      // edge nodes interpolate the great arc; this roughly order-of-magnitude
      // improves the surface approximation over projected chord points
      for (int e = 0; e < 3; ++e) {
        const Eigen::Vector3d& a = corners[ref::edge_verts[e][0]];
        const Eigen::Vector3d& b = corners[ref::edge_verts[e][1]];
        cf.cell_nodes[c][3 + 2 * e] = slerp(a, b, 1.0 / 3.0, mesh.R);
        cf.cell_nodes[c][3 + 2 * e + 1] = slerp(a, b, 2.0 / 3.0, mesh.R);
      }
    }
  }
  return cf;
}

void geometry_at(const std::array<Eigen::Vector3d, 10>& nodes, const double xy[2],
                 Eigen::Vector3d& x, Eigen::Matrix<double, 3, 2>& J, double& detJ,
                 Eigen::Vector3d& k) {
  const ScalarBasis& p3 = p3_basis();
  double vals[10], gx[10], gy[10];
  p3.eval(xy, vals);
  p3.grad(xy, gx, gy);
  x.setZero();
  J.setZero();
  for (int n = 0; n < 10; ++n) {
    x += vals[n] * nodes[n];
    J.col(0) += gx[n] * nodes[n];
    J.col(1) += gy[n] * nodes[n];
  }
  const Eigen::Vector3d cr = J.col(0).cross(J.col(1));
  detJ = cr.norm();
  SWE_REQUIRE(detJ > 0.0, "degenerate cell geometry: detJ <= 0 at (", xy[0], ",", xy[1], ")");
  k = cr / detJ;
}

GeometryCache build_geometry(const Mesh& mesh, const CoordinateField& coords,
                             int vol_degree, int facet_degree) {
  GeometryCache g;
  g.vol = triangle_quadrature(vol_degree);
  g.facet = interval_quadrature(facet_degree);
  g.nq = g.vol.size();
  g.nqf = g.facet.size();

  const int nc = mesh.n_cells();
  g.detJ.resize(static_cast<size_t>(nc) * g.nq);
  g.J.resize(g.detJ.size());
  g.G.resize(g.detJ.size());
  g.x.resize(g.detJ.size());
  g.k.resize(g.detJ.size());

  double area = 0.0;
  for (int c = 0; c < nc; ++c) {
    for (int q = 0; q < g.nq; ++q) {
      const size_t idx = static_cast<size_t>(c) * g.nq + q;
      geometry_at(coords.cell_nodes[c], g.vol.points[q].data(), g.x[idx], g.J[idx],
                  g.detJ[idx], g.k[idx]);
      g.G[idx] = g.J[idx].transpose() * g.J[idx];
      area += g.vol.weights[q] * g.detJ[idx];
    }
  }
  g.total_area = area;
  g.mean_dx = std::sqrt(area / nc);

  const int ne = mesh.n_edges();
  g.fx_plus.resize(static_cast<size_t>(ne) * g.nqf);
  g.fx_minus.resize(g.fx_plus.size());
  g.fn_plus.resize(g.fx_plus.size());
  g.fn_minus.resize(g.fx_plus.size());
  g.fds_plus.resize(g.fx_plus.size());

  auto facet_side = [&](int cell, int facet, int flip, double tg, Eigen::Vector3d& x,
                        Eigen::Vector3d& n, double& ds) {
    const double tl = flip > 0 ? tg : 1.0 - tg;
    double xy[2];
    ref::edge_point(facet, tl, xy);
    Eigen::Matrix<double, 3, 2> J;
    double dJ;
    Eigen::Vector3d k;
    geometry_at(coords.cell_nodes[cell], xy, x, J, dJ, k);
    const Eigen::Matrix2d G = J.transpose() * J;
    const Eigen::Vector2d n0(ref::edge_normal[facet][0], ref::edge_normal[facet][1]);
    const Eigen::Vector2d Gin = G.inverse() * n0;
    n = (J * Gin) / std::sqrt(n0.dot(Gin));
    // d xhat / d tg (carries the flip sign; only the magnitude is used)
    const double* a = ref::vertex[ref::edge_verts[facet][0]];
    const double* b = ref::vertex[ref::edge_verts[facet][1]];
    const Eigen::Vector2d tv(b[0] - a[0], b[1] - a[1]);
    ds = (J * tv).norm();
  };

  for (int e = 0; e < ne; ++e) {
    const auto& ec = mesh.edge_to_cells[e];
    const int fp = mesh.cell_to_edges[ec.plus_cell][ec.plus_facet].flip;
    const int fm = mesh.cell_to_edges[ec.minus_cell][ec.minus_facet].flip;
    for (int q = 0; q < g.nqf; ++q) {
      const size_t idx = static_cast<size_t>(e) * g.nqf + q;
      const double tg = g.facet.points[q][0];
      facet_side(ec.plus_cell, ec.plus_facet, fp, tg, g.fx_plus[idx], g.fn_plus[idx],
                 g.fds_plus[idx]);
      double ds_m;
      facet_side(ec.minus_cell, ec.minus_facet, fm, tg, g.fx_minus[idx], g.fn_minus[idx],
                 ds_m);
    }
  }

  double min_len = std::numeric_limits<double>::max();
  for (const auto& ed : mesh.edges)
    min_len = std::min(min_len, (mesh.vertices[ed[0]] - mesh.vertices[ed[1]]).norm());
  g.min_edge_len = min_len;
  return g;
}

} // namespace swe
