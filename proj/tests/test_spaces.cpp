#include <doctest.h>

#include <random>

#include "swe/assembly.hpp"
#include "swe/common.hpp"
#include "swe/disc.hpp"

using namespace swe;

namespace {

constexpr double R_EARTH = 6.37122e6;

Field random_field(const FunctionSpace& S, unsigned seed, double scale = 1.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(-scale, scale);
  Field f(S);
  for (double& v : f.x) v = U(rng);
  return f;
}

// True when no edge of the cell wraps around the periodic seam, i.e. all
// corners are strictly inside the patch (analytic non-periodic fields are
// single-valued on such cells).
bool interior_cell(const Discretization& d, int c, double lo, double hi) {
  for (int v = 0; v < 3; ++v) {
    const Eigen::Vector3d& p = d.mesh.cell_corners[c][v];
    if (p(0) < lo - 1e-9 || p(0) > hi + 1e-9 || p(1) < lo - 1e-9 || p(1) > hi + 1e-9)
      return false;
  }
  return true;
}

// Set a reference-polynomial V1 field on one cell (other dofs untouched).
void set_cell_field(const Discretization& d, Field& u, int cell,
                    const std::function<void(const double*, double*)>& uhat) {
  const Eigen::VectorXd dofs = bdm2_basis().apply_dofs(uhat);
  for (int j = 0; j < 12; ++j) {
    const size_t o = static_cast<size_t>(cell) * 12 + j;
    u.x[d.V1.lg[o]] = d.V1.sign[o] * dofs(j);
  }
}

} // namespace

TEST_SUITE_BEGIN("fespace-assembly");

TEST_CASE("DOF counts at level 3 and level 0") {
  const Discretization d3(icosphere(1.0, 3), 4, 4);
  CHECK(d3.V0.ndof == 642 + 2 * 1920 + 1280); // 5762
  CHECK(d3.V0.ndof == 5762);
  CHECK(d3.V1.ndof == 3 * 1920 + 3 * 1280); // 9600
  CHECK(d3.V2.ndof == 3840);
  CHECK(d3.TR.ndof == 5760);
  const Discretization d0(icosphere(1.0, 0), 4, 4);
  CHECK(d0.V2.ndof == 60);
}

TEST_CASE("V1 normal flux density matches across every facet") {
  const Discretization d(icosphere(R_EARTH, 1));
  const Field u = random_field(d.V1, 42, 3.0);
  double loc_p[12], loc_m[12];
  for (int e = 0; e < d.mesh.n_edges(); ++e) {
    const auto& ec = d.mesh.edge_to_cells[e];
    const int flp = d.mesh.cell_to_edges[ec.plus_cell][ec.plus_facet].flip;
    const int flm = d.mesh.cell_to_edges[ec.minus_cell][ec.minus_facet].flip;
    d.V1.gather(u.x, ec.plus_cell, loc_p);
    d.V1.gather(u.x, ec.minus_cell, loc_m);
    for (int q = 0; q < d.nqf(); ++q) {
      const int sp = d.tab.fslot(ec.plus_facet, flp, q);
      const int sm = d.tab.fslot(ec.minus_facet, flm, q);
      double fp = 0.0, fm = 0.0;
      for (int j = 0; j < 12; ++j) {
        fp += loc_p[j] * d.tab.f_bdm_n[static_cast<size_t>(sp) * 12 + j];
        fm += loc_m[j] * d.tab.f_bdm_n[static_cast<size_t>(sm) * 12 + j];
      }
      fp *= ref::edge_length[ec.plus_facet];
      fm *= ref::edge_length[ec.minus_facet];
      CHECK(std::abs(fp + fm) < 1e-12 * (std::abs(fp) + 1.0));
    }
  }
}

TEST_CASE("piola_evaluate: tangency and flat-cell identity") {
  const Discretization d(icosphere(R_EARTH, 1));
  const Field u = random_field(d.V1, 7, 1.0);
  std::vector<std::array<double, 2>> pts = {{0.2, 0.3}, {0.5, 0.1}, {0.1, 0.6}};
  for (int c = 0; c < 5; ++c) {
    const auto vals = piola_evaluate(d.coords, d.V1, u, c, pts);
    for (size_t p = 0; p < pts.size(); ++p) {
      Eigen::Vector3d x, k;
      Eigen::Matrix<double, 3, 2> J;
      double dJ;
      geometry_at(d.coords.cell_nodes[c], pts[p].data(), x, J, dJ, k);
      CHECK(std::abs(k.dot(vals[p])) <= 1e-12 * vals[p].norm());
    }
  }

  // flat cell with J = [[1,0],[0,1],[0,0]], detJ = 1: u_phys = uhat embedded
  const Discretization ft(flat_torus(4, 4, 4.0, 4.0));
  const int cell = 10; // even cells are reference-congruent with h = 1
  Field uf(ft.V1);
  set_cell_field(ft, uf, cell, [](const double* xy, double* v) {
    v[0] = 1.0 + xy[0];
    v[1] = 2.0 - xy[1];
  });
  std::vector<std::array<double, 2>> p1 = {{0.25, 0.25}};
  const auto vals = piola_evaluate(ft.coords, ft.V1, uf, cell, p1);
  CHECK(vals[0](0) == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(vals[0](1) == doctest::Approx(1.75).epsilon(1e-12));
  CHECK(vals[0](2) == doctest::Approx(0.0));
}

TEST_CASE("divergence identity on an affine cell against a finite-difference oracle") {
  const Discretization d(flat_torus(4, 4, 2.0, 2.0));
  const int cell = 9;
  Field u(d.V1);
  set_cell_field(d, u, cell, [](const double* xy, double* v) {
    v[0] = xy[0];
    v[1] = xy[1];
  }); // divhat = 2
  const double h = 1e-6;
  auto at = [&](double x, double y) {
    std::vector<std::array<double, 2>> p = {{x, y}};
    return piola_evaluate(d.coords, d.V1, u, cell, p)[0];
  };
  Eigen::Vector3d x0, k;
  Eigen::Matrix<double, 3, 2> J;
  double dJ;
  const double xy0[2] = {0.3, 0.3};
  geometry_at(d.coords.cell_nodes[cell], xy0, x0, J, dJ, k);
  Eigen::Matrix<double, 3, 2> du; // du/dxhat by central differences
  du.col(0) = (at(0.3 + h, 0.3) - at(0.3 - h, 0.3)) / (2 * h);
  du.col(1) = (at(0.3, 0.3 + h) - at(0.3, 0.3 - h)) / (2 * h);
  const Eigen::Matrix<double, 2, 3> Jplus =
      (J.transpose() * J).inverse() * J.transpose();
  const double div_fd = (Jplus * du).trace();
  CHECK(div_fd == doctest::Approx(2.0 / dJ).epsilon(1e-6));
}

TEST_CASE("mass matrices: row sums, areas, SPD") {
  const Discretization d(icosphere(R_EARTH, 1));

  for (int c : {0, 17, 42}) {
    double area = 0.0;
    for (int q = 0; q < d.nq(); ++q)
      area += d.geom.vol.weights[q] * d.geom.detJ[static_cast<size_t>(c) * d.nq() + q];
    double rs = 0.0;
    for (int j = 0; j < 3; ++j) rs += d.M2.row_sum(3 * c + j);
    CHECK(rs == doctest::Approx(area).epsilon(1e-13));
  }

  std::vector<double> ones(d.V0.ndof, 1.0);
  const std::vector<double> M1v = d.M0.mult(ones);
  double total = 0.0;
  for (double v : M1v) total += v;
  CHECK(total == doctest::Approx(d.geom.total_area).epsilon(1e-13));
  CHECK(std::abs(total - 4 * pi * R_EARTH * R_EARTH) / total < 1e-4);

  const std::vector<double> rowint = assemble_vector(d, d.V0, [&](int c, double* loc) {
    for (int q = 0; q < d.nq(); ++q) {
      const double w = d.geom.vol.weights[q] * d.geom.detJ[static_cast<size_t>(c) * d.nq() + q];
      for (int i = 0; i < 10; ++i) loc[i] += w * d.tab.p3_val[q * 10 + i];
    }
  });
  const double cell_scale = d.geom.total_area / d.mesh.n_cells();
  for (int r = 0; r < d.M0.rows; ++r)
    CHECK(std::abs(d.M0.row_sum(r) - rowint[r]) < 1e-12 * cell_scale);

  auto min_eig = [](const SparseMatrix& A) {
    Eigen::MatrixXd Ad = Eigen::MatrixXd::Zero(A.rows, A.cols);
    for (int r = 0; r < A.rows; ++r)
      for (int k = A.ia[r]; k < A.ia[r + 1]; ++k) Ad(r, A.ja[k]) += A.a[k];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Ad);
    return es.eigenvalues().minCoeff();
  };
  CHECK(min_eig(d.M0) > 0.0);
  CHECK(min_eig(d.M1) > 0.0);
  CHECK(min_eig(d.M2) > 0.0);
}

TEST_CASE("projection: identity on V2, constants in V0, Galerkin orthogonality") {
  const Discretization d(icosphere(R_EARTH, 1));

  const Field D = random_field(d.V2, 3, 10.0);
  const Field D2 = project(d, D, d.V2);
  for (int i = 0; i < D.size(); ++i) CHECK(std::abs(D2[i] - D[i]) < 1e-11 * 10.0);

  const Field one = project(d, [](const Vector3d&) { return 1.0; }, d.V0);
  for (int i = 0; i < one.size(); ++i) CHECK(std::abs(one[i] - 1.0) < 1e-9);

  auto fn = [&](const Vector3d& x) {
    return x(2) / R_EARTH + 0.2 * x(0) * x(1) / (R_EARTH * R_EARTH);
  };
  const Field p1 = project(d, fn, d.V0);
  const Field p2 = project(d, p1, d.V0);
  double diff = 0.0, scale = 0.0;
  for (int i = 0; i < p1.size(); ++i) {
    diff = std::max(diff, std::abs(p2[i] - p1[i]));
    scale = std::max(scale, std::abs(p1[i]));
  }
  CHECK(diff < 1e-10 * scale);

  const std::vector<double> rhs = assemble_vector(d, d.V0, [&](int c, double* loc) {
    for (int q = 0; q < d.nq(); ++q) {
      const size_t idx = static_cast<size_t>(c) * d.nq() + q;
      const double w = d.geom.vol.weights[q] * d.geom.detJ[idx];
      for (int i = 0; i < 10; ++i) loc[i] += w * d.tab.p3_val[q * 10 + i] * fn(d.geom.x[idx]);
    }
  });
  const std::vector<double> Mp = d.M0.mult(p1.x);
  double rn = 0.0, bn = 0.0;
  for (size_t i = 0; i < rhs.size(); ++i) {
    rn += (Mp[i] - rhs[i]) * (Mp[i] - rhs[i]);
    bn += rhs[i] * rhs[i];
  }
  CHECK(std::sqrt(rn / bn) < 1e-11);
}

TEST_CASE("rehabilitated divergence and perp gradient") {
  const Discretization d(icosphere(R_EARTH, 1));

  Field gconst(d.V0);
  for (double& v : gconst.x) v = 3.7;
  const Field pg0 = perp_grad(d, gconst);
  for (int i = 0; i < pg0.size(); ++i) CHECK(std::abs(pg0[i]) < 1e-12);

  const Field gamma = random_field(d.V0, 11, 1.0);
  const Field pg = perp_grad(d, gamma);
  const Field div = rehabilitated_div(d, pg);
  double scale = 0.0;
  for (int i = 0; i < pg.size(); ++i) scale = std::max(scale, std::abs(pg[i]));
  for (int i = 0; i < div.size(); ++i) CHECK(std::abs(div[i]) < 1e-11 * std::max(scale, 1.0));

  const Field u = random_field(d.V1, 5, 2.0);
  const Field du = rehabilitated_div(d, u);
  double scale_u = 0.0;
  for (int i = 0; i < du.size(); ++i) scale_u = std::max(scale_u, std::abs(du[i]));
  CHECK(std::abs(integrate(d, du)) < 1e-12 * scale_u * d.geom.total_area);

  for (int c : {3, 30}) {
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    std::vector<double> dv(d.nq());
    eval_v1_div(d, u, c, dv.data());
    for (int q = 0; q < d.nq(); ++q)
      for (int i = 0; i < 3; ++i)
        rhs(i) += d.geom.vol.weights[q] * d.tab.dg1_val[q * 3 + i] * dv[q];
    const Eigen::Vector3d c2 = d.M2inv[c] * rhs;
    for (int i = 0; i < 3; ++i) CHECK(du[3 * c + i] == doctest::Approx(c2(i)).epsilon(1e-12));
  }
}

TEST_CASE("flat mesh: rehabilitated divergence is the exact pointwise divergence") {
  const Discretization d(flat_torus(4, 4, 4.0, 4.0)); // h=1 cells, detJ=1
  const Field u = interpolate_v1(
      d, [](const Vector3d& x) { return Vector3d(x(0) * x(0), x(0) * x(1), 0.0); });
  const Field div = rehabilitated_div(d, u);
  int checked = 0;
  for (int c = 0; c < d.n_cells(); ++c) {
    if (!interior_cell(d, c, 1.0, 3.0)) continue;
    ++checked;
    std::vector<double> vals(d.nq());
    eval_v2(d, div, c, vals.data());
    for (int q = 0; q < d.nq(); ++q) {
      const double want = 3.0 * d.geom.x[static_cast<size_t>(c) * d.nq() + q](0);
      CHECK(vals[q] == doctest::Approx(want).epsilon(1e-10));
    }
  }
  CHECK(checked >= 8);
}

TEST_CASE("flat mesh: perp_grad matches the symbolic perp gradient") {
  const Discretization d(flat_torus(4, 4, 4.0, 4.0));
  const Field gamma = interpolate_v0(d, [](const Vector3d& x) { return x(0) * x(1); });
  const Field pg = perp_grad(d, gamma);
  std::vector<std::array<double, 2>> pts = {{0.3, 0.3}, {0.1, 0.5}};
  for (int c = 0; c < d.n_cells(); ++c) {
    if (!interior_cell(d, c, 1.0, 3.0)) continue;
    const auto vals = piola_evaluate(d.coords, d.V1, pg, c, pts);
    for (size_t p = 0; p < pts.size(); ++p) {
      Eigen::Vector3d x0, k;
      Eigen::Matrix<double, 3, 2> J;
      double dJ;
      geometry_at(d.coords.cell_nodes[c], pts[p].data(), x0, J, dJ, k);
      CHECK(vals[p](0) == doctest::Approx(-x0(0)).epsilon(1e-11));
      CHECK(vals[p](1) == doctest::Approx(x0(1)).epsilon(1e-11));
    }
  }
}

TEST_CASE("assembly determinism") {
  const Discretization d(icosphere(1.0, 1), 6, 4);
  const SparseMatrix A = assemble_mass(d, d.V1);
  const SparseMatrix B = assemble_mass(d, d.V1);
  REQUIRE(A.a.size() == B.a.size());
  for (size_t i = 0; i < A.a.size(); ++i) CHECK(A.a[i] == B.a[i]);
}

TEST_SUITE_END();
