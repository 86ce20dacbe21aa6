#pragma once

// Two-sheeted realization of the algebraic curve w^2 = prod (z - e_j) with a
// prescribed pairing of the branch points into straight cuts.  Sheet 0 carries
// w ~ +z^(g+1) at infinity, sheet 1 the negative; the sheet involution is
// (z, w) -> (z, -w).
//
// Homology comes from "pinched bridges": for the branch points ordered along
// the chain  a_0, b_0, a_1, b_1, ...  the cycle chi_k runs through e_k and
// e_(k+1) -- a planar path on sheet 0 joined to its own copy on sheet 1.
// Cut bulges use elliptic arcs around a cut; gap bridges are routed around
// all obstacles.  Consecutive cycles meet only at their shared branch point,
// where the intersection sign is read off numerically in the local coordinate
// t = sqrt(z - e) and normalized to +1 by flipping orientations.  The
// symplectic basis is then
//     alpha_j = chi_(2j),   beta_j = chi_(2j+1) + chi_(2j+3) + ... + chi_(2g+1).
//
// Cycle periods of odd differentials h(z) dz (odd under the involution, given
// by their sheet-0 density h) reduce to 2 * int over the planar bridge path.
// The Abel map integrates the normalized holomorphic basis from the base
// branch point e_0 along deterministic routed paths, lifted to the requested
// sheet; by construction a(z on sheet 1) = -a(z on sheet 0) exactly.

#include <padelab/cuts.hpp>
#include <padelab/linalg.hpp>
#include <padelab/quadrature.hpp>
#include <padelab/route.hpp>

#include <vector>

namespace padelab {

struct SurfacePoint {
  Complex z{};
  int sheet = 0;
  bool at_inf = false;

  static SurfacePoint finite(const Complex& z, int sheet = 0) { return {z, sheet, false}; }
  static SurfacePoint infinity(int sheet) { return {Complex(), sheet, true}; }
  SurfacePoint star() const { return {z, 1 - sheet, at_inf}; }  // sheet involution
};

struct Divisor {
  std::vector<SurfacePoint> pts;  // multiplicity by repetition
  Divisor() = default;
  explicit Divisor(std::vector<SurfacePoint> p) : pts(std::move(p)) {}
  std::size_t degree() const { return pts.size(); }
};

struct Bridge {
  Path planar;  // from e_from to e_to, endpoint singularity flags set
  Complex e_from{}, e_to{};
  int orient = 1;
  bool is_cut_bulge = false;
};

struct SurfaceOptions {
  QuadOptions quad{};
  int arc_samples = 64;  // polyline resolution for bulge legality checks
};

class Surface {
 public:
  explicit Surface(CutSystem cs, SurfaceOptions opt = {});

  const CutSystem& cuts() const { return cs_; }
  int genus() const { return cs_.genus(); }
  const std::vector<Complex>& branch_points() const { return epts_; }
  Complex base_point() const { return cs_.cuts()[0].a; }
  const Router& router() const { return router_; }
  const SurfaceOptions& options() const { return opt_; }

  // Weight on a sheet; points on a cut interior take the shore value, with
  // sheet 0 owning the left-of-orientation shore.
  Complex w(const Complex& z, int sheet) const;
  Complex w_at(const SurfacePoint& p) const;

  // ----- homology -----
  std::size_t chi_count() const { return chi_.size(); }  // 2g+1
  const Bridge& chi(std::size_t k) const { return chi_.at(k); }
  // Intersection sign of chi_k with chi_(k+1) at their shared branch point
  // (after orientation normalization these are all +1).
  int consecutive_intersection(std::size_t k) const;
  // Integer combinations over the chi cycles forming the symplectic basis.
  const std::vector<std::vector<int>>& alpha_combos() const { return alpha_; }
  const std::vector<std::vector<int>>& beta_combos() const { return beta_; }

  // Period of an involution-odd differential h(z) dz over a cycle, with h the
  // sheet-0 density.
  Complex chi_period(std::size_t k, const Integrand& h) const;
  Complex combo_period(const std::vector<int>& combo, const Integrand& h) const;
  Vec alpha_periods(const Integrand& h) const;  // g entries
  Vec beta_periods(const Integrand& h) const;

  // ----- normalized holomorphic differentials and the period matrix -----
  // du_i has sheet-0 density  sum_j holo()(i,j) z^j / w0(z).
  const Mat& holo() const { return holo_; }
  const Mat& period_matrix() const { return B_; }
  Complex holo_density(int i, const Complex& z) const;  // sheet 0

  // ----- Abel map -----
  Vec abel(const SurfacePoint& p) const;
  Vec abel_divisor(const Divisor& d) const;
  // Integral of the normalized basis along an explicit planar path lifted to
  // a sheet (the path must start at the base point for Abel semantics).
  Vec abel_along(const Path& planar, int sheet) const;

  Path route_from_base(const Complex& z) const;
  const Path& route_from_base_to_inf() const { return base_inf_; }

  // Router over the cuts plus small diamond obstacles around extra points.
  Router router_avoiding(const std::vector<Complex>& avoid, const Real& radius) const;

  Real scale() const { return cs_.scale(); }

 private:
  CutSystem cs_;
  SurfaceOptions opt_;
  std::vector<Complex> epts_;
  Router router_;
  Path base_inf_;
  std::vector<Bridge> chi_;
  std::vector<std::vector<int>> alpha_, beta_;
  Mat raw_alpha_, raw_beta_;  // periods of z^j / w over the basis cycles
  Mat holo_, B_;

  void build_homology();
  void build_periods();
  friend struct SurfaceTestAccess;
};

}  // namespace padelab
