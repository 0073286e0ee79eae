#include "swe/quadrature.hpp"

#include "swe/common.hpp"

namespace swe {

namespace {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

} // namespace

QuadratureRule interval_quadrature(int degree) {
  SWE_REQUIRE(degree >= 1 && degree <= 60,
              "interval quadrature supports degrees 1..60, got ", degree);
  const int n = (degree + 2) / 2; // 2n-1 >= degree
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  QuadratureRule rule;
  rule.degree = 2 * n - 1;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.points[i] = {0.5 * (x[i] + 1.0), 0.0};
    rule.weights[i] = 0.5 * w[i];
  }
  return rule;
}

QuadratureRule triangle_quadrature(int degree) {
  SWE_REQUIRE(degree >= 1 && degree <= 60,
              "triangle quadrature supports degrees 1..60, got ", degree);
  // Duffy map (xi,eta) -> (xi(1-eta), eta) with Jacobian (1-eta).  A total
  // degree-d integrand becomes degree <= d in xi and d+1 in eta, so plain
  // Gauss-Legendre products integrate it exactly.
  const int nx = (degree + 2) / 2;     // 2nx-1 >= d
  const int ny = (degree + 3) / 2;     // 2ny-1 >= d+1
  std::vector<double> gx, wx, gy, wy;
  gauss_legendre(nx, gx, wx);
  gauss_legendre(ny, gy, wy);
  QuadratureRule rule;
  rule.degree = degree;
  rule.points.reserve(nx * ny);
  rule.weights.reserve(nx * ny);
  for (int j = 0; j < ny; ++j) {
    const double eta = 0.5 * (gy[j] + 1.0);
    const double weta = 0.5 * wy[j];
    for (int i = 0; i < nx; ++i) {
      const double xi = 0.5 * (gx[i] + 1.0);
      const double wxi = 0.5 * wx[i];
      rule.points.push_back({xi * (1.0 - eta), eta});
      rule.weights.push_back(wxi * weta * (1.0 - eta));
    }
  }
  return rule;
}

} // namespace swe
