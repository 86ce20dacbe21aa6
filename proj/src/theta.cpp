#include "padelab/theta.hpp"

#include <stdexcept>

namespace padelab {

namespace {

long lround_real(const Real& x) {
  Real r = round(x);
  return static_cast<long>(r.convert_to<long long>());
}

// Smallest eigenvalue of a small symmetric positive matrix.  Closed forms for
// g <= 2; a Gershgorin lower bound beyond that (enough for a truncation
// radius, which only needs a positive lower bound).
Real min_eigen_sym(const RMat& A) {
  const Eigen::Index g = A.rows();
  if (g == 1) return A(0, 0);
  if (g == 2) {
    Real tr2 = (A(0, 0) + A(1, 1)) / 2;
    Real d = (A(0, 0) - A(1, 1)) / 2;
    return tr2 - sqrt(d * d + A(0, 1) * A(1, 0));
  }
  Real lo = A(0, 0);
  bool first = true;
  for (Eigen::Index i = 0; i < g; ++i) {
    Real row = A(i, i);
    for (Eigen::Index j = 0; j < g; ++j)
      if (j != i) row -= abs(A(i, j));
    if (first || row < lo) lo = row;
    first = false;
  }
  return lo;
}

}  // namespace

LatticeSplit lattice_split(const Mat& B, const Vec& u) {
  const Eigen::Index g = B.rows();
  LatticeSplit out;
  out.j.resize(static_cast<std::size_t>(g));
  out.m.resize(static_cast<std::size_t>(g));
  RMat imB = B.imag();
  RVec y = imB.fullPivLu().solve(RVec(u.imag()));
  Vec r = u;
  for (Eigen::Index k = 0; k < g; ++k) {
    long mk = lround_real(y(k));
    out.m[static_cast<std::size_t>(k)] = mk;
    r -= Complex(Real(mk)) * B.col(k);
  }
  for (Eigen::Index k = 0; k < g; ++k) {
    long jk = lround_real(r(k).real());
    out.j[static_cast<std::size_t>(k)] = jk;
    r(k) -= Real(jk);
  }
  out.r = r;
  return out;
}

Vec lattice_reduce(const Mat& B, const Vec& u) { return lattice_split(B, u).r; }

ThetaContext make_theta_context(const Mat& B, const Real& eps) {
  if (B.rows() != B.cols()) throw std::invalid_argument("period matrix must be square");
  const Eigen::Index g = B.rows();
  Real scale{0};
  for (Eigen::Index i = 0; i < g; ++i)
    for (Eigen::Index j = 0; j < g; ++j) scale = std::max(scale, Real(abs(B(i, j))));
  for (Eigen::Index i = 0; i < g; ++i)
    for (Eigen::Index j = 0; j < g; ++j)
      if (abs(B(i, j) - B(j, i)) > Real("1e-20") * std::max(Real(1), scale))
        throw std::invalid_argument("period matrix must be symmetric");
  ThetaContext ctx{B, eps, Real(0), Vec(0)};
  if (g > 0) {
    ctx.lambda_min = min_eigen_sym(RMat(B.imag()));
    if (!(ctx.lambda_min > 0))
      throw std::invalid_argument("imaginary part of the period matrix must be positive definite");
  }
  return ctx;
}

ThetaContext make_theta_context(const Mat& B) {
  return make_theta_context(B, quad_tol_default());
}

Complex theta(const ThetaContext& ctx, const Vec& u) {
  const Eigen::Index g = ctx.B.rows();
  if (u.size() != g) throw std::invalid_argument("theta argument has wrong dimension");
  if (g == 0) return Complex(1);

  LatticeSplit sp = lattice_split(ctx.B, u);
  const Vec& u0 = sp.r;

  // Shell-by-shell tail bound:  for |n|_inf = k the summand satisfies
  // |term| <= exp(-pi lambda k^2 + 2 pi s sqrt(g) k),  s = |Im u0|_2,
  // and the shell has at most 2g (2k+1)^{g-1} lattice points.
  Real s{0};
  for (Eigen::Index i = 0; i < g; ++i) s += u0(i).imag() * u0(i).imag();
  s = sqrt(s);
  const Real pi = const_pi();
  const Real sg = sqrt(Real(g));
  auto shell_bound = [&](long k) {
    Real rk(k);
    Real expo = -pi * ctx.lambda_min * rk * rk + 2 * pi * s * sg * rk;
    Real count = 2 * Real(g);
    for (Eigen::Index i = 0; i + 1 < g; ++i) count *= 2 * rk + 1;
    return count * exp(expo);
  };
  long N = 1;
  for (; N < 400; ++N) {
    Real tail{0};
    for (long k = N + 1; k <= N + 60; ++k) tail += shell_bound(k);
    if (tail <= ctx.eps && shell_bound(N + 60) < ctx.eps * Real("1e-10")) break;
  }
  if (N >= 400) throw std::runtime_error("theta truncation radius did not certify");

  const Complex pii = Complex(Real(0), pi);
  Complex sum(0);
  std::vector<long> n(static_cast<std::size_t>(g), -N);
  for (;;) {
    Complex q(0), lin(0);
    for (Eigen::Index i = 0; i < g; ++i) {
      Real ni(n[static_cast<std::size_t>(i)]);
      lin += ni * u0(i);
      for (Eigen::Index j = 0; j < g; ++j) q += ni * Real(n[static_cast<std::size_t>(j)]) * ctx.B(i, j);
    }
    sum += std::exp(pii * (q + Real(2) * lin));
    Eigen::Index d = 0;
    while (d < g && ++n[static_cast<std::size_t>(d)] > N) n[static_cast<std::size_t>(d++)] = -N;
    if (d == g) break;
  }

  // Restore the quasi-periodicity factor for the lattice shift that was
  // removed: theta(u0 + j + B m) = exp(-pi i m^T B m - 2 pi i m^T u0) theta(u0).
  Complex mBm(0), mu(0);
  for (Eigen::Index i = 0; i < g; ++i) {
    Real mi(sp.m[static_cast<std::size_t>(i)]);
    mu += mi * u0(i);
    for (Eigen::Index j = 0; j < g; ++j) mBm += mi * Real(sp.m[static_cast<std::size_t>(j)]) * ctx.B(i, j);
  }
  return std::exp(-pii * (mBm + Real(2) * mu)) * sum;
}

}  // namespace padelab
