#pragma once

// Branch-tracked function elements and Cauchy transforms on cut systems.
//
// A FunctionElement is a finite product of primitive factors
//     c,   P(z),   P(z)^(num/den),   exp(P(z)),
// carrying enough branch data to continue the fractional powers analytically
// along paths.  The reference branch lives at a deterministic far-away anchor
// point where every base polynomial is evaluated as the product of principal
// logarithms of its linear factors; with a real-positive configuration this is
// the usual "positive on the positive real axis, behaves like a power of z at
// infinity" determination.
//
// Continuation along a straight segment is exact in a single step: the
// winding of log P is read off the zeros (computed once per factor), and the
// value itself is re-anchored to P's true evaluation, so root-finding error
// never accumulates into the logs beyond picking the correct 2*pi*i sheet.
//
// CauchyTransform represents  z -> (1/2 pi i) * sum_j  int_{cut j}
// rho(t) / ((t - z) w_+(t)) dt,  the sectionally analytic function generated
// by a density against the two-valued weight of a CutSystem.

#include <padelab/cuts.hpp>
#include <padelab/poly.hpp>
#include <padelab/quadrature.hpp>
#include <padelab/roots.hpp>
#include <padelab/route.hpp>
#include <padelab/series.hpp>

#include <functional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace padelab {

// f(z) = z^(-ord) * (c[0] + c[1]/z + c[2]/z^2 + ...)
struct LaurentAtInf {
  long ord = 0;
  std::vector<Complex> c;
  Complex eval(const Complex& z) const {
    const Complex u = Complex(Real(1), Real(0)) / z;
    Complex s(Real(0), Real(0));
    for (std::size_t k = c.size(); k-- > 0;) s = s * u + c[k];
    return s * std::pow(z, Complex(Real(-ord), Real(0)));
  }
};

struct Factor {
  enum class Kind { Const, Polynomial, AlgebraicPower, ExpPolynomial };
  Kind kind = Kind::Const;
  Complex cval{Real(1), Real(0)};
  Poly p;
  long num = 1, den = 1;  // exponent of an AlgebraicPower factor
  std::vector<RootCluster> zeros;  // of p, for branch tracking
  Complex lead{};

  bool tracks_log() const {
    return kind == Kind::Polynomial || kind == Kind::AlgebraicPower;
  }
  Real exponent() const { return Real(num) / Real(den); }
};

// Continued branch data at a point: one log entry per factor (unused entries
// stay zero for factors that need no tracking).
struct BranchState {
  Complex at{};
  std::vector<Complex> logs;
};

class FunctionElement {
 public:
  FunctionElement() = default;

  static FunctionElement constant(const Complex& c);
  static FunctionElement polynomial(Poly p);
  static FunctionElement algebraic_power(Poly p, long num, long den);
  static FunctionElement exp_polynomial(Poly p);

  friend FunctionElement operator*(const FunctionElement& a, const FunctionElement& b);

  const std::vector<Factor>& factors() const { return fs_; }

  // Deterministic far-away reference point and the branch data there.
  Complex anchor() const;
  BranchState anchor_state() const;

  // Analytic continuation.  Straight hops are exact; elliptic arcs subdivide.
  // Throws std::runtime_error if the path meets a zero of a tracked factor.
  BranchState continued_line(const BranchState& from, const Complex& to) const;
  void continue_along(BranchState& st, const Path& path) const;

  // Branch state at z: routed from the anchor when a router is given, else a
  // straight segment from the anchor.
  BranchState state_at(const Complex& z, const Router* router = nullptr) const;

  Complex value(const BranchState& st) const;
  Complex log_value(const BranchState& st) const;

  // Taylor coefficients of the element at st.at (n terms).
  std::vector<Complex> taylor(const BranchState& st, int n) const;

  // Expansion at infinity in the reference branch.  Throws when the element
  // is branched or essentially singular there.
  LaurentAtInf laurent_inf(int n) const;
  bool analytic_at_inf() const;

  // Zeros of all fractional-power bases (branch points of the element).
  std::vector<Complex> branch_zeros() const;

 private:
  std::vector<Factor> fs_;
  // Winding of log p along the chord a->b, exact for straight hops.
  static Complex chord_log_step(const Factor& f, const Complex& a, const Complex& b);
  void arc_step(BranchState& st, const Segment& seg, const Real& s0, const Real& s1,
                int depth) const;
};

class CauchyTransform {
 public:
  CauchyTransform(CutSystem cuts, FunctionElement density, QuadOptions opts = {});

  const CutSystem& cuts() const { return cuts_; }
  const FunctionElement& density() const { return rho_; }

  Complex value(const Complex& z) const;
  // n Taylor coefficients at an off-support point v.
  std::vector<Complex> taylor(const Complex& v, int n) const;
  // Expansion at infinity (ord = 1; coefficients are weighted moments).
  LaurentAtInf laurent_inf(int n) const;

  // Density value / continued logarithm at a point of cut j.
  Complex density_on_cut(std::size_t j, const Complex& t) const;
  Complex density_log_on_cut(std::size_t j, const Complex& t) const;

 private:
  CutSystem cuts_;
  FunctionElement rho_;
  QuadOptions opts_;
  std::vector<BranchState> arc_start_;  // branch state at each cut's a endpoint

  Complex integrate(const std::function<Complex(const Complex&, std::size_t)>& num) const;
};

using GermFn = std::variant<FunctionElement, CauchyTransform>;

Complex germ_value(const GermFn& g, const Router& router, const Complex& z);
std::vector<Complex> germ_taylor(const GermFn& g, const Router& router, const Complex& v, int n);
LaurentAtInf germ_laurent_inf(const GermFn& g, int n);

// Limit of g(x + delta*normal) as delta -> 0+ by Richardson extrapolation on
// delta_k = delta0 / 2^k, k = 0..levels-1.
Complex one_sided_limit(const std::function<Complex(const Complex&)>& g, const Complex& x,
                        const Complex& normal, Real delta0 = Real(0), int levels = 12);

}  // namespace padelab
