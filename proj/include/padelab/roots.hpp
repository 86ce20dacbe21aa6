#pragma once

// Polynomial root finding: Aberth-Ehrlich simultaneous iteration with Newton
// polish, multiplicity detection by cluster merging, and a companion-matrix
// fallback for small degrees when the iteration stalls.

#include <vector>

#include "padelab/poly.hpp"

namespace padelab {

struct RootCluster {
  Complex z;
  int multiplicity = 1;
};

enum class RootFlag { Ok, NotConverged, Degenerate };

struct RootResult {
  std::vector<RootCluster> roots;  // sum of multiplicities == degree
  RootFlag flag = RootFlag::Ok;
  Real residual_scale{0};  // max |p(root)| / leading-coefficient scale
  bool ok() const { return flag == RootFlag::Ok; }
};

struct RootOptions {
  Real tol;          // convergence threshold for iteration steps
  Real cluster_tol;  // merge radius for multiple-root detection
  int max_iters = 400;
  RootOptions() : tol(pow2(-static_cast<long>(Precision::bits() / 2))),
                  cluster_tol(cluster_tol_default()) {}
};

RootResult poly_roots(const Poly& p, const RootOptions& opt = {});

}  // namespace padelab
