#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <vector>

#include "swe/quadrature.hpp"

namespace swe {

enum class SpaceTag { P3, BDM2, DG1, TraceP2 };

// Reference triangle: vertices (0,0), (1,0), (0,1).
// Local edge i is opposite vertex i, directed from its lower to its higher
// local vertex: e0 = (1->2), e1 = (0->2), e2 = (0->1).
namespace ref {
inline constexpr double vertex[3][2] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
inline constexpr int edge_verts[3][2] = {{1, 2}, {0, 2}, {0, 1}};
inline const double edge_length[3] = {1.4142135623730951, 1.0, 1.0};
inline constexpr double edge_normal[3][2] = {
    {0.70710678118654752, 0.70710678118654752}, {-1.0, 0.0}, {0.0, -1.0}};

// Point on local edge i at parameter t in [0,1] (local direction).
inline void edge_point(int i, double t, double xy[2]) {
  const double* a = vertex[edge_verts[i][0]];
  const double* b = vertex[edge_verts[i][1]];
  xy[0] = a[0] + t * (b[0] - a[0]);
  xy[1] = a[1] + t * (b[1] - a[1]);
}
} // namespace ref

// Legendre polynomial P_k(2t-1) on [0,1], k = 0,1,2.
inline double legendre01(int k, double t) {
  const double x = 2.0 * t - 1.0;
  switch (k) {
    case 0: return 1.0;
    case 1: return x;
    default: return 0.5 * (3.0 * x * x - 1.0);
  }
}

struct DofDescriptor {
  enum Kind { Vertex, Edge, Interior } kind;
  int entity;          // vertex/edge index, or 0 for interior
  int index_on_entity; // node slot or moment degree
};

// Scalar nodal basis (P3 Lagrange or DG1 = P1 Lagrange) expressed in the
// monomial basis.  Rows of coef are basis functions.
struct ScalarBasis {
  SpaceTag tag;
  int dim = 0;
  Eigen::MatrixXd coef;                      // dim x nmono
  std::vector<std::array<double, 2>> nodes;  // Lagrange nodes
  std::vector<DofDescriptor> dofs;

  void eval(const double xy[2], double* vals) const;
  void grad(const double xy[2], double* gx, double* gy) const;
};

// BDM2 vector basis: 12 functions, each a vector quadratic.  DOFs are the
// three Legendre moments of u.n per edge (arc-length weighted, local edge
// direction) followed by three interior moments against (1,0), (0,1) and
// the perp-gradient of the cubic bubble.
struct VectorBasis {
  int dim = 12;
  Eigen::MatrixXd coef; // 12 x 12 over the monomial vector basis

  void eval(const double xy[2], double (*vals)[2]) const; // vals[12][2]
  void div(const double xy[2], double* d) const;          // d[12]
  std::vector<DofDescriptor> dofs;

  // Apply the 12 canonical DOF functionals to an arbitrary reference field.
  Eigen::VectorXd apply_dofs(const std::function<void(const double*, double*)>& uhat) const;
};

// Interior DOF test fields: w0=(1,0), w1=(0,1), w2 = perp-grad of bubble.
void bdm2_interior_test(int m, const double xy[2], double w[2]);

const ScalarBasis& p3_basis();
const ScalarBasis& dg1_basis();
const VectorBasis& bdm2_basis();

// Trace basis on one facet: Legendre P_k(2t-1), k=0..2, in the global edge
// parametrisation.  Dual DOFs are the normalised moments.
struct TraceBasis {
  int dim = 3;
  double eval(int k, double t) const { return legendre01(k, t); }
  double dof(int k, const std::function<double(double)>& v) const;
};
const TraceBasis& trace_basis();

} // namespace swe
