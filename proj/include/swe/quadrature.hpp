#pragma once

#include <array>
#include <vector>

namespace swe {

// Quadrature rule on the reference triangle {(x,y): x,y>=0, x+y<=1} or the
// unit interval [0,1].  Triangle weights sum to 1/2, interval weights to 1.
struct QuadratureRule {
  std::vector<std::array<double, 2>> points; // interval rules use points[i][0]
  std::vector<double> weights;
  int degree = 0; // every polynomial up to this total degree integrates exactly

  int size() const { return static_cast<int>(points.size()); }
};

// Gauss-Legendre on [0,1].  Supported degrees 1..60.
QuadratureRule interval_quadrature(int degree);

// Collapsed (Duffy) product Gauss rule on the reference triangle.
// Supported degrees 1..60.
QuadratureRule triangle_quadrature(int degree);

} // namespace swe
