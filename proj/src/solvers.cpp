#include "swe/solvers.hpp"

#include <cmath>

#include "swe/common.hpp"

namespace swe {

namespace {

double nrm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct Preconditioner {
  const SparseMatrix* A = nullptr;
  Precond kind = Precond::None;
  double omega = 1.0;
  std::vector<double> diag;
  std::vector<int> diag_slot;

  void setup(const SparseMatrix& mat, Precond p, double w) {
    A = &mat;
    kind = p;
    omega = w;
    if (kind == Precond::None) return;
    diag.assign(mat.rows, 0.0);
    diag_slot.assign(mat.rows, -1);
    for (int r = 0; r < mat.rows; ++r)
      for (int k = mat.ia[r]; k < mat.ia[r + 1]; ++k)
        if (mat.ja[k] == r) {
          diag[r] = mat.a[k];
          diag_slot[r] = k;
        }
    for (int r = 0; r < mat.rows; ++r)
      SWE_REQUIRE(diag[r] != 0.0, "zero diagonal at row ", r, "; cannot precondition");
  }

  // z = M^{-1} r.  SOR is applied as a symmetric (SSOR) sweep so it is also a
  // valid CG preconditioner.
  void apply(const double* r, double* z, std::vector<double>& tmp) const {
    const SparseMatrix& m = *A;
    switch (kind) {
      case Precond::None:
        std::copy(r, r + m.rows, z);
        return;
      case Precond::Jacobi:
        for (int i = 0; i < m.rows; ++i) z[i] = r[i] / diag[i];
        return;
      case Precond::SOR: {
        tmp.assign(m.rows, 0.0);
        for (int i = 0; i < m.rows; ++i) {
          double s = r[i];
          for (int k = m.ia[i]; k < m.ia[i + 1]; ++k) {
            const int j = m.ja[k];
            if (j < i) s -= m.a[k] * tmp[j];
          }
          tmp[i] = omega * s / diag[i];
        }
        for (int i = 0; i < m.rows; ++i) tmp[i] *= (2.0 - omega) / omega * diag[i];
        for (int i = m.rows - 1; i >= 0; --i) {
          double s = tmp[i];
          for (int k = m.ia[i]; k < m.ia[i + 1]; ++k) {
            const int j = m.ja[k];
            if (j > i) s -= m.a[k] * z[j];
          }
          z[i] = omega * s / diag[i];
        }
        return;
      }
    }
  }
};

SolveReport cg(const SparseMatrix& A, std::span<const double> b, std::vector<double>& x,
               const SolverSpec& spec, bool throw_on_fail) {
  const int n = A.rows;
  SolveReport rep;
  const double bnorm = nrm2(b);
  if (bnorm == 0.0) {
    x.assign(n, 0.0);
    rep.converged = true;
    return rep;
  }
  Preconditioner M;
  M.setup(A, spec.precond, spec.omega);

  std::vector<double> r(n), z(n), p(n), Ap(n), tmp;
  A.mult(x.data(), Ap.data());
  for (int i = 0; i < n; ++i) r[i] = b[i] - Ap[i];
  M.apply(r.data(), z.data(), tmp);
  p = z;
  double rz = dot(r, z);
  double rnorm = nrm2(r);
  rep.history.push_back(rnorm / bnorm);

  for (int it = 0; it < spec.maxit; ++it) {
    if (rnorm / bnorm <= spec.rtol) {
      rep.converged = true;
      break;
    }
    A.mult(p.data(), Ap.data());
    const double pAp = dot(p, Ap);
    if (pAp <= 0.0) {
      if (throw_on_fail)
        throw Error("CG breakdown: non-SPD system detected (p^T A p <= 0); use GMRES");
      rep.converged = false;
      rep.rel_residual = rnorm / bnorm;
      return rep;
    }
    const double alpha = rz / pAp;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * Ap[i];
    }
    M.apply(r.data(), z.data(), tmp);
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    rnorm = nrm2(r);
    rep.iterations = it + 1;
    rep.history.push_back(rnorm / bnorm);
  }
  rep.rel_residual = rnorm / bnorm;
  rep.converged = rep.converged || rnorm / bnorm <= spec.rtol;
  if (!rep.converged && throw_on_fail)
    throw Error("CG did not converge in " + std::to_string(spec.maxit) +
                " iterations; relative residual " + std::to_string(rep.rel_residual));
  return rep;
}

// Right-preconditioned restarted GMRES.
SolveReport gmres(const SparseMatrix& A, std::span<const double> b, std::vector<double>& x,
                  const SolverSpec& spec, bool throw_on_fail) {
  const int n = A.rows;
  SolveReport rep;
  const double bnorm = nrm2(b);
  if (bnorm == 0.0) {
    x.assign(n, 0.0);
    rep.converged = true;
    return rep;
  }
  Preconditioner M;
  M.setup(A, spec.precond, spec.omega);
  const int m = std::min(spec.restart, n);

  std::vector<std::vector<double>> V(m + 1, std::vector<double>(n));
  std::vector<double> H((m + 1) * m, 0.0);
  std::vector<double> cs(m), sn(m), g(m + 1), w(n), z(n), tmp;
  auto Hat = [&](int i, int j) -> double& { return H[i * m + j]; };

  int total_it = 0;
  double rel = 1.0;
  while (total_it < spec.maxit) {
    A.mult(x.data(), w.data());
    for (int i = 0; i < n; ++i) V[0][i] = b[i] - w[i];
    double beta = nrm2(V[0]);
    rel = beta / bnorm;
    if (rel <= spec.rtol) {
      rep.converged = true;
      break;
    }
    for (int i = 0; i < n; ++i) V[0][i] /= beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;

    int k = 0;
    for (; k < m && total_it < spec.maxit; ++k, ++total_it) {
      M.apply(V[k].data(), z.data(), tmp);
      A.mult(z.data(), w.data());
      for (int i = 0; i <= k; ++i) {
        const double h = dot(w, V[i]);
        Hat(i, k) = h;
        for (int j = 0; j < n; ++j) w[j] -= h * V[i][j];
      }
      const double h = nrm2(w);
      Hat(k + 1, k) = h;
      if (h > 0.0)
        for (int j = 0; j < n; ++j) V[k + 1][j] = w[j] / h;
      // apply previous Givens rotations
      for (int i = 0; i < k; ++i) {
        const double t = cs[i] * Hat(i, k) + sn[i] * Hat(i + 1, k);
        Hat(i + 1, k) = -sn[i] * Hat(i, k) + cs[i] * Hat(i + 1, k);
        Hat(i, k) = t;
      }
      const double denom = std::hypot(Hat(k, k), Hat(k + 1, k));
      cs[k] = Hat(k, k) / denom;
      sn[k] = Hat(k + 1, k) / denom;
      Hat(k, k) = denom;
      Hat(k + 1, k) = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      rel = std::abs(g[k + 1]) / bnorm;
      rep.history.push_back(rel);
      if (rel <= spec.rtol) {
        ++k;
        break;
      }
    }
    // solve the k x k triangular system and update x
    std::vector<double> y(k);
    for (int i = k - 1; i >= 0; --i) {
      double s = g[i];
      for (int j = i + 1; j < k; ++j) s -= Hat(i, j) * y[j];
      y[i] = s / Hat(i, i);
    }
    std::fill(w.begin(), w.end(), 0.0);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < n; ++i) w[i] += y[j] * V[j][i];
    M.apply(w.data(), z.data(), tmp);
    for (int i = 0; i < n; ++i) x[i] += z[i];
    if (rel <= spec.rtol) {
      rep.converged = true;
      break;
    }
  }
  rep.iterations = total_it;
  rep.rel_residual = rel;
  if (!rep.converged && throw_on_fail)
    throw Error("GMRES did not converge in " + std::to_string(spec.maxit) +
                " iterations; relative residual " + std::to_string(rel));
  return rep;
}

SolveReport run(const SparseMatrix& A, std::span<const double> b, std::vector<double>& x,
                const SolverSpec& spec, bool throw_on_fail) {
  spec.validate();
  SWE_REQUIRE(A.rows == A.cols, "solver requires a square matrix");
  SWE_REQUIRE(static_cast<int>(b.size()) == A.rows, "rhs size mismatch");
  if (static_cast<int>(x.size()) != A.rows) x.assign(A.rows, 0.0);

  switch (spec.method) {
    case Method::CG: return cg(A, b, x, spec, throw_on_fail);
    case Method::GMRES: return gmres(A, b, x, spec, throw_on_fail);
    case Method::DenseLU: {
      Eigen::MatrixXd Ad = Eigen::MatrixXd::Zero(A.rows, A.cols);
      for (int r = 0; r < A.rows; ++r)
        for (int k = A.ia[r]; k < A.ia[r + 1]; ++k) Ad(r, A.ja[k]) += A.a[k];
      Eigen::VectorXd bv = Eigen::Map<const Eigen::VectorXd>(b.data(), b.size());
      Eigen::VectorXd xv = dense_lu_solve(Ad, bv);
      std::copy(xv.data(), xv.data() + A.rows, x.begin());
      SolveReport rep;
      rep.converged = true;
      rep.iterations = 1;
      Eigen::VectorXd r = bv - Ad * xv;
      rep.rel_residual = bv.norm() == 0.0 ? 0.0 : r.norm() / bv.norm();
      return rep;
    }
  }
  throw Error("unreachable solver method");
}

} // namespace

void SolverSpec::validate() const {
  SWE_REQUIRE(rtol > 0.0, "solver tolerance must be positive");
  SWE_REQUIRE(maxit >= 1, "solver maxit must be >= 1");
  if (precond == Precond::SOR)
    SWE_REQUIRE(omega > 0.0 && omega < 2.0, "SOR omega must lie in (0,2), got ", omega);
}

SolveReport solve(const SparseMatrix& A, std::span<const double> b, std::vector<double>& x,
                  const SolverSpec& spec) {
  return run(A, b, x, spec, true);
}

SolveReport try_solve(const SparseMatrix& A, std::span<const double> b,
                      std::vector<double>& x, const SolverSpec& spec) {
  return run(A, b, x, spec, false);
}

Eigen::VectorXd dense_lu_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  SWE_REQUIRE(A.rows() == A.cols() && A.rows() == b.size(), "dense solve size mismatch");
  return Eigen::PartialPivLU<Eigen::MatrixXd>(A).solve(b);
}

} // namespace swe
