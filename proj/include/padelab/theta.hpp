#pragma once

// Riemann theta function for a g x g period matrix B (symmetric, Im B > 0):
//
//   theta(u) = sum_{n in Z^g} exp{ pi*i n^T B n + 2*pi*i n^T u }.
//
// Evaluation reduces u modulo the period lattice Z^g + B Z^g first (the
// quasi-periodicity factor is restored exactly), then sums over an l-infinity
// ball whose radius is chosen so the certified tail bound stays below eps.

#include <vector>

#include "padelab/linalg.hpp"

namespace padelab {

// u = j + B m + r with j, m integer vectors; r has Re components in
// [-1/2, 1/2] and (Im B)^{-1} Im r in [-1/2, 1/2] componentwise.
struct LatticeSplit {
  std::vector<long> j, m;
  Vec r;
};

LatticeSplit lattice_split(const Mat& B, const Vec& u);

// Convenience: the reduced representative r alone.
Vec lattice_reduce(const Mat& B, const Vec& u);

struct ThetaContext {
  Mat B;
  Real eps;         // certified truncation tail
  Real lambda_min;  // smallest eigenvalue of Im B (positive)
  Vec K;            // Riemann constants for the surface base point; may be empty
};

// Validates symmetry of B and positivity of Im B.  K starts empty; the
// surface-aware factory next to the inversion routines fills it in.
ThetaContext make_theta_context(const Mat& B, const Real& eps);
ThetaContext make_theta_context(const Mat& B);

Complex theta(const ThetaContext& ctx, const Vec& u);

}  // namespace padelab
