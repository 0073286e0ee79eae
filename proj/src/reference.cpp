#include "swe/reference.hpp"

#include "swe/common.hpp"

namespace swe {

namespace {

// Scalar monomials up to degree 3: 1, x, y, x^2, xy, y^2, x^3, x^2 y, x y^2, y^3.
constexpr int mono_exp[10][2] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1},
                                 {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3}};

double mono(int k, double x, double y) {
  double v = 1.0;
  for (int i = 0; i < mono_exp[k][0]; ++i) v *= x;
  for (int i = 0; i < mono_exp[k][1]; ++i) v *= y;
  return v;
}

double powi(double v, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= v;
  return r;
}

void mono_grad(int k, double x, double y, double g[2]) {
  const int a = mono_exp[k][0], b = mono_exp[k][1];
  g[0] = a == 0 ? 0.0 : a * powi(x, a - 1) * powi(y, b);
  g[1] = b == 0 ? 0.0 : powi(x, a) * b * powi(y, b - 1);
}

ScalarBasis make_p3() {
  ScalarBasis b;
  b.tag = SpaceTag::P3;
  b.dim = 10;
  b.nodes.resize(10);
  for (int v = 0; v < 3; ++v) b.nodes[v] = {ref::vertex[v][0], ref::vertex[v][1]};
  for (int e = 0; e < 3; ++e) {
    double p[2];
    ref::edge_point(e, 1.0 / 3.0, p);
    b.nodes[3 + 2 * e] = {p[0], p[1]};
    ref::edge_point(e, 2.0 / 3.0, p);
    b.nodes[3 + 2 * e + 1] = {p[0], p[1]};
  }
  b.nodes[9] = {1.0 / 3.0, 1.0 / 3.0};

  Eigen::MatrixXd V(10, 10);
  for (int i = 0; i < 10; ++i)
    for (int k = 0; k < 10; ++k) V(i, k) = mono(k, b.nodes[i][0], b.nodes[i][1]);
  b.coef = V.inverse().transpose(); // row i = coefficients of phi_i

  for (int v = 0; v < 3; ++v) b.dofs.push_back({DofDescriptor::Vertex, v, 0});
  for (int e = 0; e < 3; ++e)
    for (int j = 0; j < 2; ++j) b.dofs.push_back({DofDescriptor::Edge, e, j});
  b.dofs.push_back({DofDescriptor::Interior, 0, 0});
  // reorder dofs to match node ordering (vertices, then edges, then interior)
  // -- already in that order.
  return b;
}

ScalarBasis make_dg1() {
  ScalarBasis b;
  b.tag = SpaceTag::DG1;
  b.dim = 3;
  b.nodes = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  Eigen::MatrixXd V(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) V(i, k) = mono(k, b.nodes[i][0], b.nodes[i][1]);
  b.coef = V.inverse().transpose();
  for (int v = 0; v < 3; ++v) b.dofs.push_back({DofDescriptor::Interior, 0, v});
  return b;
}

// Vector monomials for BDM2: (m_j, 0) for j<6, (0, m_{j-6}) for j>=6.
void vec_mono(int k, const double xy[2], double v[2]) {
  if (k < 6) {
    v[0] = mono(k, xy[0], xy[1]);
    v[1] = 0.0;
  } else {
    v[0] = 0.0;
    v[1] = mono(k - 6, xy[0], xy[1]);
  }
}

double vec_mono_div(int k, const double xy[2]) {
  double g[2];
  if (k < 6) {
    mono_grad(k, xy[0], xy[1], g);
    return g[0];
  }
  mono_grad(k - 6, xy[0], xy[1], g);
  return g[1];
}

VectorBasis make_bdm2() {
  VectorBasis b;
  b.dim = 12;
  // DOF matrix L(i,k) = l_i(M_k) over the 12 vector monomials.
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(12, 12);
  const QuadratureRule line = interval_quadrature(9);
  const QuadratureRule tri = triangle_quadrature(8);
  for (int e = 0; e < 3; ++e) {
    for (int q = 0; q < line.size(); ++q) {
      const double t = line.points[q][0];
      double xy[2];
      ref::edge_point(e, t, xy);
      for (int k = 0; k < 12; ++k) {
        double v[2];
        vec_mono(k, xy, v);
        const double un = v[0] * ref::edge_normal[e][0] + v[1] * ref::edge_normal[e][1];
        for (int m = 0; m < 3; ++m)
          L(3 * e + m, k) += ref::edge_length[e] * line.weights[q] * un * legendre01(m, t);
      }
    }
  }
  for (int q = 0; q < tri.size(); ++q) {
    const double* xy = tri.points[q].data();
    for (int m = 0; m < 3; ++m) {
      double w[2];
      bdm2_interior_test(m, xy, w);
      for (int k = 0; k < 12; ++k) {
        double v[2];
        vec_mono(k, xy, v);
        L(9 + m, k) += tri.weights[q] * (v[0] * w[0] + v[1] * w[1]);
      }
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(L);
  SWE_REQUIRE(lu.isInvertible(), "BDM2 DOF/monomial matrix is singular");
  b.coef = lu.inverse().transpose(); // row i = monomial coefficients of phi_i

  for (int e = 0; e < 3; ++e)
    for (int m = 0; m < 3; ++m) b.dofs.push_back({DofDescriptor::Edge, e, m});
  for (int m = 0; m < 3; ++m) b.dofs.push_back({DofDescriptor::Interior, 0, m});
  return b;
}

} // namespace

void ScalarBasis::eval(const double xy[2], double* vals) const {
  const int nm = static_cast<int>(coef.cols());
  double m[10];
  for (int k = 0; k < nm; ++k) m[k] = mono(k, xy[0], xy[1]);
  for (int i = 0; i < dim; ++i) {
    double s = 0.0;
    for (int k = 0; k < nm; ++k) s += coef(i, k) * m[k];
    vals[i] = s;
  }
}

void ScalarBasis::grad(const double xy[2], double* gx, double* gy) const {
  const int nm = static_cast<int>(coef.cols());
  double g[10][2];
  for (int k = 0; k < nm; ++k) mono_grad(k, xy[0], xy[1], g[k]);
  for (int i = 0; i < dim; ++i) {
    double sx = 0.0, sy = 0.0;
    for (int k = 0; k < nm; ++k) {
      sx += coef(i, k) * g[k][0];
      sy += coef(i, k) * g[k][1];
    }
    gx[i] = sx;
    gy[i] = sy;
  }
}

void VectorBasis::eval(const double xy[2], double (*vals)[2]) const {
  double m[6];
  for (int k = 0; k < 6; ++k) m[k] = mono(k, xy[0], xy[1]);
  for (int i = 0; i < 12; ++i) {
    double v0 = 0.0, v1 = 0.0;
    for (int k = 0; k < 6; ++k) {
      v0 += coef(i, k) * m[k];
      v1 += coef(i, 6 + k) * m[k];
    }
    vals[i][0] = v0;
    vals[i][1] = v1;
  }
}

void VectorBasis::div(const double xy[2], double* d) const {
  for (int i = 0; i < 12; ++i) {
    double s = 0.0;
    for (int k = 0; k < 12; ++k) s += coef(i, k) * vec_mono_div(k, xy);
    d[i] = s;
  }
}

Eigen::VectorXd VectorBasis::apply_dofs(
    const std::function<void(const double*, double*)>& uhat) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(12);
  const QuadratureRule line = interval_quadrature(9);
  const QuadratureRule tri = triangle_quadrature(8);
  for (int e = 0; e < 3; ++e) {
    for (int q = 0; q < line.size(); ++q) {
      const double t = line.points[q][0];
      double xy[2], v[2];
      ref::edge_point(e, t, xy);
      uhat(xy, v);
      const double un = v[0] * ref::edge_normal[e][0] + v[1] * ref::edge_normal[e][1];
      for (int m = 0; m < 3; ++m)
        out(3 * e + m) += ref::edge_length[e] * line.weights[q] * un * legendre01(m, t);
    }
  }
  for (int q = 0; q < tri.size(); ++q) {
    const double* xy = tri.points[q].data();
    double v[2];
    uhat(xy, v);
    for (int m = 0; m < 3; ++m) {
      double w[2];
      bdm2_interior_test(m, xy, w);
      out(9 + m) += tri.weights[q] * (v[0] * w[0] + v[1] * w[1]);
    }
  }
  return out;
}

void bdm2_interior_test(int m, const double xy[2], double w[2]) {
  const double x = xy[0], y = xy[1];
  switch (m) {
    case 0: w[0] = 1.0; w[1] = 0.0; break;
    case 1: w[0] = 0.0; w[1] = 1.0; break;
    default:
      // perp-grad of the cubic bubble  b = (1-x-y) x y
      // grad b = (y(1-2x-y), x(1-x-2y)); perp = (-d/dy, d/dx)
      w[0] = -x * (1.0 - x - 2.0 * y);
      w[1] = y * (1.0 - 2.0 * x - y);
      break;
  }
}

const ScalarBasis& p3_basis() {
  static const ScalarBasis b = make_p3();
  return b;
}

const ScalarBasis& dg1_basis() {
  static const ScalarBasis b = make_dg1();
  return b;
}

const VectorBasis& bdm2_basis() {
  static const VectorBasis b = make_bdm2();
  return b;
}

double TraceBasis::dof(int k, const std::function<double(double)>& v) const {
  const QuadratureRule line = interval_quadrature(9);
  double s = 0.0;
  for (int q = 0; q < line.size(); ++q)
    s += line.weights[q] * v(line.points[q][0]) * legendre01(k, line.points[q][0]);
  return (2.0 * k + 1.0) * s;
}

const TraceBasis& trace_basis() {
  static const TraceBasis b;
  return b;
}

} // namespace swe
