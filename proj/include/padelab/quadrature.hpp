#pragma once

// Adaptive Gauss-Legendre quadrature over Path chains.  Endpoint square-root
// singularities (1/sqrt at a branch point) are removed by the substitution
// s = sigma^2 before panels are laid down, so the driver only ever bisects
// analytic integrands.

#include <functional>
#include <vector>

#include "padelab/path.hpp"
#include "padelab/precision.hpp"

namespace padelab {

// Nodes/weights on [-1,1]; cached per (order, precision).  Single-threaded.
const std::pair<std::vector<Real>, std::vector<Real>>& gauss_legendre(int order);

enum class QuadFlag { Ok, BudgetExceeded, NonFinite };

struct QuadResult {
  Complex value{Real(0), Real(0)};
  Real est_error{0};
  long evals = 0;
  QuadFlag flag = QuadFlag::Ok;
  bool ok() const { return flag == QuadFlag::Ok; }
};

struct QuadOptions {
  Real tol;          // absolute tolerance target for the whole path
  int order = 24;    // Gauss-Legendre panel order
  int max_depth = 48;
  long max_evals = 4000000;
  QuadOptions() : tol(quad_tol_default()) {}
};

using Integrand = std::function<Complex(const Complex&)>;

// Integrates f(z) dz along one segment / a path.
QuadResult quad_segment(const Integrand& f, const Segment& seg, const QuadOptions& opt = {});
QuadResult quad_path(const Integrand& f, const Path& path, const QuadOptions& opt = {});

// Integrates f(z) |dz| (arclength measure) along a path; used for flux.
QuadResult quad_path_arclen(const Integrand& f, const Path& path, const QuadOptions& opt = {});

}  // namespace padelab
