#pragma once

// Dense solves behind one rank-aware entry point.  Eigen does the work; this
// wrapper fixes the solution convention (minimum-norm least squares), reports
// rank and a cheap condition estimate, and never throws on singular input.

#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Dense>

#include "padelab/precision.hpp"

namespace padelab {

using Mat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RMat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using RVec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

enum class SolveFlag { Ok, IllConditioned, RankDeficient, NonFinite };

struct SolveResult {
  Vec x;
  Eigen::Index rank = 0;
  Real cond_est{0};  // |R_00| / |R_rr| from the pivoted QR
  SolveFlag flag = SolveFlag::Ok;
  bool usable() const { return flag != SolveFlag::NonFinite; }
};

SolveResult solve_linear(const Mat& A, const Vec& b);

// Orthonormal-ish basis of the right nullspace (columns), via full-pivot LU.
Mat kernel(const Mat& A);

}  // namespace padelab
