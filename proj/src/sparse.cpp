#include "swe/sparse.hpp"

#include <algorithm>

#include "swe/common.hpp"

namespace swe {

void SparseMatrix::mult(const double* x, double* y) const {
  for (int r = 0; r < rows; ++r) {
    double s = 0.0;
    for (int k = ia[r]; k < ia[r + 1]; ++k) s += a[k] * x[ja[k]];
    y[r] = s;
  }
}

std::vector<double> SparseMatrix::mult(std::span<const double> x) const {
  SWE_REQUIRE(static_cast<int>(x.size()) == cols, "matvec size mismatch");
  std::vector<double> y(rows);
  mult(x.data(), y.data());
  return y;
}

double SparseMatrix::row_sum(int r) const {
  double s = 0.0;
  for (int k = ia[r]; k < ia[r + 1]; ++k) s += a[k];
  return s;
}

} // namespace swe
