#pragma once

// Multipoint Padé approximants with free poles.
//
// [n/n; V_2n]_f is a rational function p/q with deg p, deg q <= n whose
// linearized error (q f - p)/v_2n is analytic at every finite interpolation
// node and vanishes at infinity to order at least n+1; v_2n is the monic
// polynomial over the finite nodes counting multiplicity.  The conditions
// form a homogeneous linear system of 2n+1 equations in the 2n+2 coefficients
// of (q, p); the solution with monic q of minimal degree is unique and is the
// one returned.  The system is assembled in a monomial basis centered and
// scaled to the branch points of f, which keeps it well conditioned far
// beyond where raw monomials give up.
//
// Node generators: the classical all-infinity scheme and three corner
// geometries on the square |Re z| = |Im z| = 1, sized so that consecutive
// rows interlace as V_{4k+2} = V_{4k} ∪ {∞,∞}.

#include <stdexcept>
#include <utility>
#include <vector>

#include "padelab/cuts.hpp"
#include "padelab/germ.hpp"
#include "padelab/poly.hpp"
#include "padelab/roots.hpp"

namespace padelab {

enum class SchemeKind {
  ClassicalInf,  // every node at infinity
  FourCorner,    // 1+i, -1+i, -1-i, 1-i repeated
  ShiftedCorner, // 1/4+i, -1+i/4, -1/4-i, 1-i/4 repeated
  TwoCorner,     // 1+i and -1-i repeated
  Explicit,      // user-supplied rows
  Synthesized,   // rows produced by a conformal-map construction
};

// One interpolation row V_2n: finite nodes with multiplicities plus a count
// of nodes at infinity.
struct SchemeRow {
  std::vector<std::pair<Complex, int>> finite;
  int n_inf = 0;

  int size() const {
    int s = n_inf;
    for (const auto& [v, m] : finite) s += m;
    return s;
  }
  // Monic polynomial vanishing at the finite nodes per multiplicity.
  Poly node_poly() const;
};

// Row V_2n of the named generator.  Throws std::invalid_argument for kinds
// that carry no generation rule (Explicit, Synthesized).
SchemeRow build_scheme(SchemeKind kind, int n);

// Row from a plain node list (repeats become multiplicities).
SchemeRow explicit_row(const std::vector<Complex>& nodes, int n_inf = 0);

// A generator kind together with the rows it produces.
struct Scheme {
  SchemeKind kind = SchemeKind::ClassicalInf;
  std::vector<SchemeRow> rows;  // rows[n-1] = V_2n for Explicit/Synthesized

  SchemeRow row(int n) const {
    if (kind == SchemeKind::Explicit || kind == SchemeKind::Synthesized)
      return rows.at(static_cast<std::size_t>(n - 1));
    return build_scheme(kind, n);
  }
};

struct PoleInfo {
  Complex z;
  int multiplicity = 1;
  Complex residue;
};

struct PadeOptions {
  Real rank_tol;   // relative pivot cutoff for the numerical rank
  Real trunc_tol;  // relative cutoff when reading degrees off kernel vectors
  bool diagnostics = true;  // circle check of the decay order at infinity
  QuadOptions quad;
  PadeOptions() : rank_tol(Real("1e-30")), trunc_tol(Real("1e-30")) {}
};

struct PadeResult {
  int n = 0;
  Poly q, p;  // q monic of minimal degree
  Poly v;     // node polynomial of the row used
  std::vector<PoleInfo> poles;
  int rank = 0;           // numerical rank of the 2n+1 by 2n+2 system
  bool singular = false;  // nullspace dimension exceeded one
  Real max_node_residual{0};  // sup of normalized interpolation residuals
  int decay_order = -1;       // first surviving Laurent index of the error at
                              // infinity (expected >= n+1); -1 when not probed
};

// Solve the linear problem for [n/n; V_2n]_f.  The router fixes the branch
// of f: values anywhere are the continuation of the reference branch at
// infinity along paths avoiding the router's obstacles.
PadeResult compute_pade(const GermFn& f, const Router& router, const SchemeRow& row, int n,
                        const PadeOptions& opt = {});

// (q f - p)/v at a point away from the nodes.
Complex linearized_error(const PadeResult& r, const GermFn& f, const Router& router,
                         const Complex& z);

struct PoleReport {
  std::vector<Real> dist;  // per pole cluster, distance to the reference set
  int beyond = 0;          // poles (with multiplicity) farther than threshold
  Real hausdorff{0};       // max distance from a pole to the reference set
};

PoleReport pole_report(const PadeResult& r, const std::vector<Cut>& reference,
                       const Real& threshold);

}  // namespace padelab
