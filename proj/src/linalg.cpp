#include "padelab/linalg.hpp"

namespace padelab {

SolveResult solve_linear(const Mat& A, const Vec& b) {
  SolveResult out;
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      if (!is_finite(A(i, j))) {
        out.flag = SolveFlag::NonFinite;
        return out;
      }
  for (Eigen::Index i = 0; i < b.size(); ++i)
    if (!is_finite(b(i))) {
      out.flag = SolveFlag::NonFinite;
      return out;
    }

  Eigen::CompleteOrthogonalDecomposition<Mat> cod(A);
  // Rank threshold tied to the working precision rather than Eigen's
  // double-oriented default.
  cod.setThreshold(pow2(-static_cast<long>(Precision::bits()) + 24));
  out.rank = cod.rank();
  out.x = cod.solve(b);

  const auto& qr = cod.matrixQTZ();
  Eigen::Index r = out.rank;
  if (r > 0) {
    Real top = abs(qr(0, 0));
    Real bot = abs(qr(r - 1, r - 1));
    out.cond_est = bot == Real(0) ? Real(0) : top / bot;
  }
  Eigen::Index full = std::min(A.rows(), A.cols());
  if (out.rank < full)
    out.flag = SolveFlag::RankDeficient;
  else if (out.cond_est > pow2(static_cast<long>(Precision::bits() / 2)))
    out.flag = SolveFlag::IllConditioned;
  return out;
}

Mat kernel(const Mat& A) {
  Eigen::FullPivLU<Mat> lu(A);
  lu.setThreshold(pow2(-static_cast<long>(Precision::bits()) + 24));
  return lu.kernel();
}

}  // namespace padelab
