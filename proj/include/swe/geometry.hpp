#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "swe/mesh.hpp"
#include "swe/quadrature.hpp"

namespace swe {

// Piecewise-cubic coordinate field: for each cell, the 10 P3 node positions
// of the map g_e from the reference triangle into R^3.  Node ordering follows
// the P3 basis; edge nodes are stored in the local edge direction, so shared
// nodes agree between neighbours through the flip flag.
struct CoordinateField {
  std::vector<std::array<Eigen::Vector3d, 10>> cell_nodes;
};

CoordinateField build_cubic_coordinates(const Mesh& mesh);

// Evaluate the cubic map of one cell: position, Jacobian J = dg/dxhat,
// area factor detJ = sqrt(det(J^T J)) and unit surface normal k.
void geometry_at(const std::array<Eigen::Vector3d, 10>& nodes, const double xy[2],
                 Eigen::Vector3d& x, Eigen::Matrix<double, 3, 2>& J, double& detJ,
                 Eigen::Vector3d& k);

// Geometric data cached at every volume quadrature point of every cell and at
// every facet quadrature point of every edge.  Immutable after construction.
struct GeometryCache {
  QuadratureRule vol;   // triangle rule
  QuadratureRule facet; // interval rule (global facet parametrisation)
  int nq = 0, nqf = 0;

  // volume data, index cell*nq + q
  std::vector<double> detJ;
  std::vector<Eigen::Matrix<double, 3, 2>> J;
  std::vector<Eigen::Matrix2d> G;    // J^T J
  std::vector<Eigen::Vector3d> x;    // physical points
  std::vector<Eigen::Vector3d> k;    // unit surface normal

  // facet data, index edge*nqf + q; the global parametrisation runs from the
  // lower to the higher vertex id of the edge
  std::vector<Eigen::Vector3d> fx_plus;  // physical points seen from the plus cell
  std::vector<Eigen::Vector3d> fx_minus; // ... and from the minus cell
  std::vector<Eigen::Vector3d> fn_plus;  // unit outward co-normal of the plus cell
  std::vector<Eigen::Vector3d> fn_minus;
  std::vector<double> fds_plus;          // |J t| arc factor wrt the global parameter

  double total_area = 0.0;
  double mean_dx = 0.0;        // sqrt(mean cell area)
  double min_edge_len = 0.0;   // min physical edge length (chord approx)
};

GeometryCache build_geometry(const Mesh& mesh, const CoordinateField& coords,
                             int vol_degree = 10, int facet_degree = 8);

} // namespace swe
