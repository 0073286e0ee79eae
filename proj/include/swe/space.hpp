#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "swe/geometry.hpp"
#include "swe/mesh.hpp"
#include "swe/reference.hpp"

namespace swe {

// Global DOF numbering for one of the discrete spaces.
//   V0 = P3 (continuous), V1 = BDM2 (H(div)), V2 = DG1, Trace = per-facet P2.
// V1 edge DOFs carry a +-1 sign relating the cell-local reference basis to the
// globally oriented normal-moment functionals (plus-cell outward normal,
// lower->higher vertex edge direction).
struct FunctionSpace {
  SpaceTag tag;
  const Mesh* mesh = nullptr;
  int ndof = 0;
  int loc_dim = 0;
  std::vector<int> lg;      // [cell*loc_dim + j] -> global dof
  std::vector<double> sign; // same layout

  void gather(std::span<const double> x, int cell, double* loc) const {
    const int o = cell * loc_dim;
    for (int j = 0; j < loc_dim; ++j) loc[j] = sign[o + j] * x[lg[o + j]];
  }
  void scatter_add(int cell, const double* loc, std::span<double> y) const {
    const int o = cell * loc_dim;
    for (int j = 0; j < loc_dim; ++j) y[lg[o + j]] += sign[o + j] * loc[j];
  }
};

FunctionSpace build_space(const Mesh& mesh, SpaceTag tag);

struct Field {
  const FunctionSpace* space = nullptr;
  std::vector<double> x;

  Field() = default;
  explicit Field(const FunctionSpace& s) : space(&s), x(s.ndof, 0.0) {}
  double& operator[](int i) { return x[i]; }
  double operator[](int i) const { return x[i]; }
  int size() const { return static_cast<int>(x.size()); }
};

// Physical (tangent) velocity vectors of a V1 field at reference points of one
// cell via the Piola map u = J uhat / detJ.
std::vector<Eigen::Vector3d> piola_evaluate(const CoordinateField& coords,
                                            const FunctionSpace& V1, const Field& u,
                                            int cell,
                                            std::span<const std::array<double, 2>> pts);

// Basis values pre-tabulated at the volume and facet quadrature points.
// Facet tables are indexed by (local edge, flip, facet point) where the facet
// points run along the global edge parametrisation.
struct Tables {
  int nq = 0, nqf = 0;
  // volume, index q*dim + i
  std::vector<double> p3_val, p3_gx, p3_gy;
  std::vector<double> dg1_val, dg1_gx, dg1_gy;
  std::vector<double> bdm_val; // q*24 + i*2 + c
  std::vector<double> bdm_div; // q*12 + i
  std::vector<double> wint;    // q*6 + m*2 + c, interior test fields
  // facet, index ((edge*2 + fidx)*nqf + q)*dim + i with fidx = (1-flip)/2
  std::vector<double> f_p3, f_dg1;
  std::vector<double> f_bdm_n; // u.n of basis fns, dim 12
  std::vector<double> f_leg;   // q*3 + k, Legendre at the global parameter

  int fslot(int edge, int flip, int q) const {
    return ((edge * 2 + (1 - flip) / 2) * nqf + q);
  }
};

Tables build_tables(const QuadratureRule& vol, const QuadratureRule& facet);

} // namespace swe
