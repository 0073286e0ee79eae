#pragma once

#include <array>

#include "swe/assembly.hpp"
#include "swe/disc.hpp"

namespace swe {

struct TransportResult {
  Field D_next;                    // V2
  Field Fbar;                      // V1, time-integrated mass flux
  std::array<Field, 3> stage_flux; // per-stage recovered fluxes
};

// tilde(D) in V2: per-element solve of  int phi Dt/tau dV = int phi D dV,
// tau = detJ.  Equals D on meshes with detJ = 1.
Field compute_Dtilde(const Discretization& d, const Field& D);

// Upwind DG tendency: per element
//   int_e phi Dt = int_e grad(phi).u* D dV - oint phi D^u u*.n dS.
Field dg_tendency(const Discretization& d, const Field& D, const Field& ustar);

// Flux F in V1 whose facet normal moments match the upwind flux and whose
// interior moments match int w.(u* D); then dg_tendency(D,u*) = -div~(F).
Field recover_flux(const Discretization& d, const Field& D, const Field& ustar);

// Three-stage SSP Runge-Kutta depth update with stage-flux accumulation,
// Fbar = (F0 + F1 + 4 F2)/6 so that  D_next - D + dt*div~(Fbar) = 0.
TransportResult ssprk3_step(const Discretization& d, const Field& Dn,
                            const Field& ustar, double dt);

} // namespace swe
