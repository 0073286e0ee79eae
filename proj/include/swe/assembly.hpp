#pragma once

#include <functional>

#include "swe/common.hpp"
#include "swe/disc.hpp"
#include "swe/solvers.hpp"

namespace swe {

// Generic cell-kernel assembly: the kernel fills the cell-local matrix
// (row-major lr x lc); orientation signs and scatter are handled here.
SparseMatrix assemble_form(const Discretization& d, AssemblyMap map,
                           const FunctionSpace& rows, const FunctionSpace& cols,
                           const std::function<void(int cell, double* local)>& kernel);

// Refill an existing map in place (no reallocation); returns a reference.
SparseMatrix& reassemble_form(const Discretization& d, AssemblyMap& map,
                              const FunctionSpace& rows, const FunctionSpace& cols,
                              const std::function<void(int cell, double* local)>& kernel);

std::vector<double> assemble_vector(
    const Discretization& d, const FunctionSpace& space,
    const std::function<void(int cell, double* local)>& kernel);

SparseMatrix assemble_mass(const Discretization& d, const FunctionSpace& space);

// Default projection solver: CG + Jacobi to 1e-12 relative.
SolverSpec projection_spec();

// L2 projections.  Scalar targets V0 (global CG solve) or V2 (element-local).
Field project(const Discretization& d, const std::function<double(const Vector3d&)>& f,
              const FunctionSpace& target, const SolverSpec& spec = projection_spec(),
              SolveReport* rep = nullptr);
Field project(const Discretization& d, const Field& src, const FunctionSpace& target,
              const SolverSpec& spec = projection_spec(), SolveReport* rep = nullptr);
// Vector L2 projection into V1.
Field project_vector(const Discretization& d,
                     const std::function<Vector3d(const Vector3d&)>& f,
                     const SolverSpec& spec = projection_spec(),
                     SolveReport* rep = nullptr);

// Nodal/DOF interpolations used for initial data.
Field interpolate_v0(const Discretization& d,
                     const std::function<double(const Vector3d&)>& f);
Field interpolate_v1(const Discretization& d,
                     const std::function<Vector3d(const Vector3d&)>& f);

// Rehabilitated divergence: the L2 projection of div(u) into V2, computed by
// element-local mass solves.  Coincides with the pointwise divergence on
// affine cells.
Field rehabilitated_div(const Discretization& d, const Field& u);

// Exact representation of the perp-gradient of a V0 field in V1 (reference
// perp of the reference gradient under the Piola map).  Satisfies
// rehabilitated_div(perp_grad(gamma)) = 0 to roundoff.
Field perp_grad(const Discretization& d, const Field& gamma);

// Scalar field evaluations at the volume quadrature points of one cell.
void eval_v0(const Discretization& d, const Field& f, int cell, double* vals);
void eval_v0_grad(const Discretization& d, const Field& f, int cell, double* gx,
                  double* gy);
void eval_v2(const Discretization& d, const Field& f, int cell, double* vals);
// Reference components of a V1 field at the volume quadrature points.
void eval_v1_ref(const Discretization& d, const Field& u, int cell, double* uh);
void eval_v1_div(const Discretization& d, const Field& u, int cell, double* dv);

// Integral of a scalar field over the surface.
double integrate(const Discretization& d, const Field& f);

} // namespace swe
