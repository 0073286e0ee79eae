#include "swe/assembly.hpp"

#include "swe/common.hpp"

namespace swe {

SolverSpec projection_spec() {
  SolverSpec s;
  s.method = Method::CG;
  s.precond = Precond::Jacobi;
  s.rtol = 1e-12;
  s.maxit = 20000;
  return s;
}

SparseMatrix assemble_form(const Discretization& d, AssemblyMap map,
                           const FunctionSpace& rows, const FunctionSpace& cols,
                           const std::function<void(int, double*)>& kernel) {
  reassemble_form(d, map, rows, cols, kernel);
  return std::move(map.mat);
}

SparseMatrix& reassemble_form(const Discretization& d, AssemblyMap& map,
                              const FunctionSpace& rows, const FunctionSpace& cols,
                              const std::function<void(int, double*)>& kernel) {
  map.mat.zero_values();
  std::vector<double> local(static_cast<size_t>(map.lr) * map.lc);
  for (int c = 0; c < d.n_cells(); ++c) {
    std::fill(local.begin(), local.end(), 0.0);
    kernel(c, local.data());
    map.add_local(c, local.data(), rows, cols);
  }
  return map.mat;
}

std::vector<double> assemble_vector(const Discretization& d, const FunctionSpace& space,
                                    const std::function<void(int, double*)>& kernel) {
  std::vector<double> out(space.ndof, 0.0);
  std::vector<double> local(space.loc_dim);
  for (int c = 0; c < d.n_cells(); ++c) {
    std::fill(local.begin(), local.end(), 0.0);
    kernel(c, local.data());
    space.scatter_add(c, local.data(), out);
  }
  return out;
}

SparseMatrix assemble_mass(const Discretization& d, const FunctionSpace& space) {
  const int nq = d.nq();
  const Tables& t = d.tab;
  const GeometryCache& g = d.geom;

  auto scalar_kernel = [&](const double* vals, int dim) {
    return [&, vals, dim](int c, double* local) {
      for (int q = 0; q < nq; ++q) {
        const double w = g.vol.weights[q] * g.detJ[static_cast<size_t>(c) * nq + q];
        const double* phi = &vals[static_cast<size_t>(q) * dim];
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j) local[i * dim + j] += w * phi[i] * phi[j];
      }
    };
  };

  switch (space.tag) {
    case SpaceTag::P3: {
      AssemblyMap map = build_assembly_map(space, space);
      return assemble_form(d, std::move(map), space, space,
                           scalar_kernel(t.p3_val.data(), 10));
    }
    case SpaceTag::DG1: {
      AssemblyMap map = build_assembly_map(space, space);
      return assemble_form(d, std::move(map), space, space,
                           scalar_kernel(t.dg1_val.data(), 3));
    }
    case SpaceTag::BDM2: {
      AssemblyMap map = build_assembly_map(space, space);
      auto kernel = [&](int c, double* local) {
        for (int q = 0; q < nq; ++q) {
          const size_t idx = static_cast<size_t>(c) * nq + q;
          const double w = g.vol.weights[q] / g.detJ[idx];
          const Eigen::Matrix2d& G = g.G[idx];
          const double* bv = &t.bdm_val[static_cast<size_t>(q) * 24];
          double Gw[12][2];
          for (int j = 0; j < 12; ++j) {
            Gw[j][0] = G(0, 0) * bv[2 * j] + G(0, 1) * bv[2 * j + 1];
            Gw[j][1] = G(1, 0) * bv[2 * j] + G(1, 1) * bv[2 * j + 1];
          }
          for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j)
              local[i * 12 + j] += w * (bv[2 * i] * Gw[j][0] + bv[2 * i + 1] * Gw[j][1]);
        }
      };
      return assemble_form(d, std::move(map), space, space, kernel);
    }
    default:
      throw Error("assemble_mass: unsupported space");
  }
}

namespace {

// Shared projection driver over an evaluator giving source values at the
// volume quadrature points of a cell.
Field project_eval(const Discretization& d,
                   const std::function<void(int, double*)>& eval_at_qp,
                   const FunctionSpace& target, const SolverSpec& spec,
                   SolveReport* rep) {
  const int nq = d.nq();
  Field out(target);
  std::vector<double> fq(nq);

  if (target.tag == SpaceTag::DG1) {
    for (int c = 0; c < d.n_cells(); ++c) {
      eval_at_qp(c, fq.data());
      Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
      for (int q = 0; q < nq; ++q) {
        const double w = d.geom.vol.weights[q] * d.geom.detJ[static_cast<size_t>(c) * nq + q];
        const double* phi = &d.tab.dg1_val[q * 3];
        for (int i = 0; i < 3; ++i) rhs(i) += w * phi[i] * fq[q];
      }
      const Eigen::Vector3d coef = d.M2inv[c] * rhs;
      for (int i = 0; i < 3; ++i) out.x[3 * c + i] = coef(i);
    }
    return out;
  }

  SWE_REQUIRE(target.tag == SpaceTag::P3, "project: scalar targets are V0 or V2");
  auto kernel = [&](int c, double* local) {
    eval_at_qp(c, fq.data());
    for (int q = 0; q < nq; ++q) {
      const double w = d.geom.vol.weights[q] * d.geom.detJ[static_cast<size_t>(c) * nq + q];
      const double* phi = &d.tab.p3_val[q * 10];
      for (int i = 0; i < 10; ++i) local[i] += w * phi[i] * fq[q];
    }
  };
  const std::vector<double> rhs = assemble_vector(d, target, kernel);
  SolveReport r = solve(d.M0, rhs, out.x, spec);
  if (rep) *rep = r;
  return out;
}

} // namespace

Field project(const Discretization& d, const std::function<double(const Vector3d&)>& f,
              const FunctionSpace& target, const SolverSpec& spec, SolveReport* rep) {
  auto eval = [&](int c, double* fq) {
    for (int q = 0; q < d.nq(); ++q) fq[q] = f(d.geom.x[static_cast<size_t>(c) * d.nq() + q]);
  };
  return project_eval(d, eval, target, spec, rep);
}

Field project(const Discretization& d, const Field& src, const FunctionSpace& target,
              const SolverSpec& spec, SolveReport* rep) {
  const SpaceTag st = src.space->tag;
  SWE_REQUIRE(st == SpaceTag::P3 || st == SpaceTag::DG1,
              "project(Field): scalar sources only");
  auto eval = [&](int c, double* fq) {
    if (st == SpaceTag::P3)
      eval_v0(d, src, c, fq);
    else
      eval_v2(d, src, c, fq);
  };
  return project_eval(d, eval, target, spec, rep);
}

Field project_vector(const Discretization& d,
                     const std::function<Vector3d(const Vector3d&)>& f,
                     const SolverSpec& spec, SolveReport* rep) {
  const int nq = d.nq();
  auto kernel = [&](int c, double* local) {
    for (int q = 0; q < nq; ++q) {
      const size_t idx = static_cast<size_t>(c) * nq + q;
      const Vector3d F = f(d.geom.x[idx]);
      const Eigen::Vector2d JtF = d.geom.J[idx].transpose() * F;
      const double w = d.geom.vol.weights[q];
      const double* bv = &d.tab.bdm_val[static_cast<size_t>(q) * 24];
      for (int j = 0; j < 12; ++j)
        local[j] += w * (bv[2 * j] * JtF(0) + bv[2 * j + 1] * JtF(1));
    }
  };
  const std::vector<double> rhs = assemble_vector(d, d.V1, kernel);
  Field out(d.V1);
  SolveReport r = solve(d.M1, rhs, out.x, spec);
  if (rep) *rep = r;
  return out;
}

Field interpolate_v0(const Discretization& d,
                     const std::function<double(const Vector3d&)>& f) {
  Field out(d.V0);
  for (int c = 0; c < d.n_cells(); ++c)
    for (int n = 0; n < 10; ++n)
      out.x[d.V0.lg[static_cast<size_t>(c) * 10 + n]] = f(d.coords.cell_nodes[c][n]);
  return out;
}

Field interpolate_v1(const Discretization& d,
                     const std::function<Vector3d(const Vector3d&)>& f) {
  const VectorBasis& bdm = bdm2_basis();
  Field out(d.V1);
  for (int c = 0; c < d.n_cells(); ++c) {
    auto pullback = [&](const double* xy, double* uh) {
      Eigen::Vector3d x, k;
      Eigen::Matrix<double, 3, 2> J;
      double dJ;
      geometry_at(d.coords.cell_nodes[c], xy, x, J, dJ, k);
      const Eigen::Matrix2d G = J.transpose() * J;
      const Eigen::Vector2d v = dJ * G.inverse() * (J.transpose() * f(x));
      uh[0] = v(0);
      uh[1] = v(1);
    };
    const Eigen::VectorXd dofs = bdm.apply_dofs(pullback);
    for (int j = 0; j < 12; ++j) {
      const size_t o = static_cast<size_t>(c) * 12 + j;
      out.x[d.V1.lg[o]] = d.V1.sign[o] * dofs(j);
    }
  }
  return out;
}

Field rehabilitated_div(const Discretization& d, const Field& u) {
  SWE_REQUIRE(u.space->tag == SpaceTag::BDM2, "rehabilitated_div expects a V1 field");
  const int nq = d.nq();
  Field out(d.V2);
  std::vector<double> dv(nq);
  for (int c = 0; c < d.n_cells(); ++c) {
    eval_v1_div(d, u, c, dv.data());
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    for (int q = 0; q < nq; ++q) {
      const double w = d.geom.vol.weights[q]; // metric-free: phi div(u) dV = phihat divhat(uhat) dxhat
      const double* phi = &d.tab.dg1_val[q * 3];
      for (int i = 0; i < 3; ++i) rhs(i) += w * phi[i] * dv[q];
    }
    const Eigen::Vector3d coef = d.M2inv[c] * rhs;
    for (int i = 0; i < 3; ++i) out.x[3 * c + i] = coef(i);
  }
  return out;
}

Field perp_grad(const Discretization& d, const Field& gamma) {
  SWE_REQUIRE(gamma.space->tag == SpaceTag::P3, "perp_grad expects a V0 field");
  const ScalarBasis& p3 = p3_basis();
  const VectorBasis& bdm = bdm2_basis();
  Field out(d.V1);
  double loc[10];
  for (int c = 0; c < d.n_cells(); ++c) {
    d.V0.gather(gamma.x, c, loc);
    auto uperp = [&](const double* xy, double* uh) {
      double gx[10], gy[10];
      p3.grad(xy, gx, gy);
      double g0 = 0.0, g1 = 0.0;
      for (int n = 0; n < 10; ++n) {
        g0 += loc[n] * gx[n];
        g1 += loc[n] * gy[n];
      }
      uh[0] = -g1; // reference perp of the reference gradient
      uh[1] = g0;
    };
    const Eigen::VectorXd dofs = bdm.apply_dofs(uperp);
    for (int j = 0; j < 12; ++j) {
      const size_t o = static_cast<size_t>(c) * 12 + j;
      out.x[d.V1.lg[o]] = d.V1.sign[o] * dofs(j);
    }
  }
  return out;
}

void eval_v0(const Discretization& d, const Field& f, int cell, double* vals) {
  double loc[10];
  d.V0.gather(f.x, cell, loc);
  for (int q = 0; q < d.nq(); ++q) {
    const double* phi = &d.tab.p3_val[q * 10];
    double s = 0.0;
    for (int n = 0; n < 10; ++n) s += loc[n] * phi[n];
    vals[q] = s;
  }
}

void eval_v0_grad(const Discretization& d, const Field& f, int cell, double* gx,
                  double* gy) {
  double loc[10];
  d.V0.gather(f.x, cell, loc);
  for (int q = 0; q < d.nq(); ++q) {
    const double* px = &d.tab.p3_gx[q * 10];
    const double* py = &d.tab.p3_gy[q * 10];
    double sx = 0.0, sy = 0.0;
    for (int n = 0; n < 10; ++n) {
      sx += loc[n] * px[n];
      sy += loc[n] * py[n];
    }
    gx[q] = sx;
    gy[q] = sy;
  }
}

void eval_v2(const Discretization& d, const Field& f, int cell, double* vals) {
  const double* loc = &f.x[3 * cell];
  for (int q = 0; q < d.nq(); ++q) {
    const double* phi = &d.tab.dg1_val[q * 3];
    vals[q] = loc[0] * phi[0] + loc[1] * phi[1] + loc[2] * phi[2];
  }
}

void eval_v1_ref(const Discretization& d, const Field& u, int cell, double* uh) {
  double loc[12];
  d.V1.gather(u.x, cell, loc);
  for (int q = 0; q < d.nq(); ++q) {
    const double* bv = &d.tab.bdm_val[static_cast<size_t>(q) * 24];
    double u0 = 0.0, u1 = 0.0;
    for (int j = 0; j < 12; ++j) {
      u0 += loc[j] * bv[2 * j];
      u1 += loc[j] * bv[2 * j + 1];
    }
    uh[2 * q] = u0;
    uh[2 * q + 1] = u1;
  }
}

void eval_v1_div(const Discretization& d, const Field& u, int cell, double* dv) {
  double loc[12];
  d.V1.gather(u.x, cell, loc);
  for (int q = 0; q < d.nq(); ++q) {
    const double* bd = &d.tab.bdm_div[static_cast<size_t>(q) * 12];
    double s = 0.0;
    for (int j = 0; j < 12; ++j) s += loc[j] * bd[j];
    dv[q] = s;
  }
}

double integrate(const Discretization& d, const Field& f) {
  const int nq = d.nq();
  std::vector<double> fq(nq);
  double total = 0.0;
  for (int c = 0; c < d.n_cells(); ++c) {
    if (f.space->tag == SpaceTag::P3)
      eval_v0(d, f, c, fq.data());
    else
      eval_v2(d, f, c, fq.data());
    for (int q = 0; q < nq; ++q)
      total += d.geom.vol.weights[q] * d.geom.detJ[static_cast<size_t>(c) * nq + q] * fq[q];
  }
  return total;
}

} // namespace swe
