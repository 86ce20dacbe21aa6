#pragma once

// Scheme vectors, the weight constant c_rho, and Jacobi inversion.
//
// For a node multiset V (2n points, infinite nodes allowed) the scheme
// vectors are assembled from normalized third-kind dipoles G_v:
//     omega_k = -(1/4 pi i) sum_v cycleB_k(G_v),
//     tau_k   = +(1/4 pi i) sum_v cycleA_k(G_v);
// both are real because every normalized period is purely imaginary.
//
// c_rho integrates log(rho) against the normalized holomorphic basis over
// both shores of the cut system.  Convention: the sheet-0 shore of each cut
// is traversed from first endpoint to second; shore doubling folds the other
// shore in.  The overall sign of c_rho is tied to that orientation choice.
//
// jacobi_invert solves  abel(D) == rhs (mod periods)  for an effective
// divisor of degree g by damped Newton on the g-fold symmetric Abel map,
// multistarted from a deterministic pool of points on both sheets (chart
// switch at infinity included).  The returned integers j, m give the exact
// lattice shift  abel(D) - rhs = j + B m + residual.

#include <functional>
#include <vector>

#include "padelab/abelian.hpp"
#include "padelab/surface.hpp"
#include "padelab/theta.hpp"

namespace padelab {

struct SchemeVectors {
  RVec omega, tau;
};

// Per-node route: one normalized dipole per node, periods summed.
SchemeVectors scheme_vectors(const Surface& S, const std::vector<SurfacePoint>& nodes);

// Assembled route: the whole scheme as one two-sheet density (rational parts
// included), integrated once per cycle.  Agrees with scheme_vectors; kept as
// an independent cross-check.
SchemeVectors scheme_vectors_assembled(const Surface& S, const std::vector<SurfacePoint>& nodes);

// c_rho from an explicit branch of log(rho), analytic near the cuts.
Vec c_rho_log(const Surface& S, const Integrand& log_rho);
// Same with the principal log of rho; rho must not vanish on the cuts.
Vec c_rho(const Surface& S, const Integrand& rho);

// The odd half-period K with  theta(abel(D) + K) = 0  for every effective
// divisor D of degree g-1; calibrated by enumeration over all half-periods.
Vec riemann_constants(const ThetaContext& ctx, const Surface& S);

// Context built from the surface: B, truncation data, and calibrated K.
ThetaContext surface_theta_context(const Surface& S, const Real& eps);
ThetaContext surface_theta_context(const Surface& S);

struct JipResult {
  Divisor divisor;         // effective, degree g
  std::vector<long> j, m;  // abel(divisor) - rhs = j + B m + residual vector
  Real residual;           // sup norm of the reduced residual
  bool unique = true;      // false if the divisor holds an involution-symmetric pair
};

JipResult jacobi_invert(const ThetaContext& ctx, const Surface& S, const Vec& rhs);

// Divisor of the secondary problem:  abel(Dt) == abel(D + inf1 - inf0).
// Requires D to avoid the sheet-0 point at infinity.
JipResult secondary_invert(const ThetaContext& ctx, const Surface& S, const Divisor& d);

}  // namespace padelab
