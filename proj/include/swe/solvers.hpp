#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "swe/sparse.hpp"

namespace swe {

enum class Method { CG, GMRES, DenseLU };
enum class Precond { None, Jacobi, SOR };

struct SolverSpec {
  Method method = Method::CG;
  Precond precond = Precond::None;
  double omega = 1.0;    // SOR relaxation, must lie in (0,2)
  double rtol = 1e-10;   // relative residual target
  int maxit = 5000;
  int restart = 60;      // GMRES restart length

  void validate() const;
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  double rel_residual = 0.0;
  std::vector<double> history; // relative residual per iteration
};

// Solve A x = b.  x is used as the initial guess.  Throws swe::Error on
// non-convergence (carrying the final residual) or CG breakdown on
// indefinite systems (advising GMRES).
SolveReport solve(const SparseMatrix& A, std::span<const double> b,
                  std::vector<double>& x, const SolverSpec& spec);

// Same, but reports failure through the return value instead of throwing.
SolveReport try_solve(const SparseMatrix& A, std::span<const double> b,
                      std::vector<double>& x, const SolverSpec& spec);

// Dense LU with partial pivoting (element-local blocks and small oracles).
Eigen::VectorXd dense_lu_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

} // namespace swe
