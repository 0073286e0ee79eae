#pragma once

#include <span>
#include <vector>

namespace swe {

// Compressed sparse row matrix with sorted column indices per row.
struct SparseMatrix {
  int rows = 0, cols = 0;
  std::vector<int> ia; // rows+1
  std::vector<int> ja;
  std::vector<double> a;

  void mult(const double* x, double* y) const;
  std::vector<double> mult(std::span<const double> x) const;
  double row_sum(int r) const;
  void zero_values() { std::fill(a.begin(), a.end(), 0.0); }
};

} // namespace swe
