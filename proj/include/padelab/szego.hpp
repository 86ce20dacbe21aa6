// Szegő-type function bundle on a two-sheeted surface: the sectionally
// holomorphic factors attached to one denominator degree of a multipoint
// rational interpolant, their normalizing constants, and the resulting
// strong-asymptotics predictions.
//
// Every evaluator returns the fundamental-domain value reached by the
// canonical integration paths of the surface module.  Crossing a cut or a
// homology cycle therefore shows up as a multiplicative jump, and the jump
// factors are testable identities rather than continuation artifacts.

#pragma once

#include <padelab/jip.hpp>
#include <padelab/pade.hpp>

#include <stdexcept>
#include <utility>
#include <vector>

namespace padelab {

// A degree whose divisor data cannot support the bundle.  Callers record the
// degree as skipped and move on; nothing about the surface or the weight is
// wrong, the inversion just landed on a degenerate configuration.
struct BundleSkip : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The inversion problem has no unique solution at this degree.
struct NonUniqueDivisor : BundleSkip {
  using BundleSkip::BundleSkip;
};

// The divisor meets infinity on the base sheet or carries a pair of points
// swapped by the sheet involution.
struct DegenerateDivisor : BundleSkip {
  using BundleSkip::BundleSkip;
};

class SzegoBundle {
 public:
  // log_rho: a determination of log(weight) analytic in a neighborhood of the
  // cuts.  row must hold exactly 2n interpolation nodes; finite nodes must
  // keep clear of the cut system.  ctx must be the surface's theta context
  // (Riemann constants filled in).
  SzegoBundle(const Surface& S, const ThetaContext& ctx, Integrand log_rho,
              const SchemeRow& row, int n);

  // --- factor evaluators (finite points; sheet-resolved) ------------------
  // exp-of-integral factor carrying the interpolation nodes; the second sheet
  // includes the reciprocal node polynomial
  Complex node_factor(const SurfacePoint& p) const;
  // weight factor exp{Lambda}; finite points and points over infinity
  Complex weight_factor(const SurfacePoint& p) const;
  // exp{-2 pi i v . a(p)} for a real vector v on the Abel image
  Complex phase_factor(const RVec& v, const SurfacePoint& p) const;
  Complex tau_factor(const SurfacePoint& p) const { return phase_factor(tau_, p); }
  Complex m_factor(const SurfacePoint& p) const { return phase_factor(mvec_, p); }
  // theta quotient vanishing on the divisor, pole of order genus over
  // infinity on the second sheet
  Complex theta_factor(const SurfacePoint& p) const;
  // the assembled bundle function: cn * node * weight * tau * m * theta
  Complex psi(const SurfacePoint& p) const;
  // companion function: zeros at the secondary divisor and over infinity on
  // the base sheet, poles at the divisor and over infinity on the second
  // sheet; normalized to 1 at the base point when that value is usable,
  // otherwise to unit leading coefficient over infinity on the second sheet
  Complex upsilon(const SurfacePoint& p) const;

  // Lambda itself (the exponent of the weight factor)
  Complex lambda(const SurfacePoint& p) const;

  // --- data ----------------------------------------------------------------
  int n() const { return n_; }
  int genus() const { return g_; }
  const Surface& surface() const { return *S_; }
  const Poly& node_poly() const { return v_; }
  // |node_poly(base point)|^{1/2}
  const Real& cn() const { return cn_; }
  // gamma: gamma * psi(z on sheet 0) = z^n (1 + o(1)) at infinity
  const Complex& gamma() const { return gamma_; }
  // gamma*: gamma* * (psi upsilon)(z on sheet 1) = z^{n-genus-1}(1 + o(1))
  const Complex& gamma_star() const { return gamma_star_; }
  const Divisor& divisor() const { return main_.divisor; }
  const Divisor& secondary_divisor() const { return sec_.divisor; }
  const RVec& omega() const { return omega_; }
  const RVec& tau() const { return tau_; }
  const Vec& weight_constants() const { return crho_; }
  const std::vector<long>& lattice_j() const { return main_.j; }
  const std::vector<long>& lattice_m() const { return main_.m; }
  const Real& inversion_residual() const { return main_.residual; }

 private:
  Complex gn_density(const Complex& t, int sheet) const;
  Complex upsilon_raw(const SurfacePoint& p) const;
  void check_divisor(const Divisor& d) const;
  void build_upsilon(const ThetaContext& ctx);
  void compute_gamma();
  void compute_gamma_star();

  const Surface* S_;
  ThetaContext ctx_;
  Integrand log_rho_;
  int n_ = 0;
  int g_ = 0;
  int deg_v_ = 0;
  Poly v_;
  Real c_inf_;  // multiplicity carried by the node pair over infinity
  struct NodeDip {
    Complex z;
    int mult;
    ThirdKind tk;
  };
  std::vector<NodeDip> nodes_;
  ThirdKind tk_inf_;
  Real cn_;
  RVec omega_, tau_, mvec_;
  Vec crho_;
  JipResult main_, sec_;
  Vec th_num_, th_den_;  // theta shifts of the divisor quotient
  std::vector<Vec> ups_num_, ups_den_;
  RVec ups_m_;
  Complex ups_norm_;
  Complex gamma_, gamma_star_;
};

// Leading-order predictions at z off the cuts: first the denominator
// prediction gamma * psi(z on sheet 0), then the prediction for the weighted
// linearized error  w(z) (q f - p)(z) / v(z), which is gamma * psi(z on
// sheet 1).  Throws when z is too close to the cut system for the one-sided
// machinery to make sense.
std::pair<Complex, Complex> predict_sa(const SzegoBundle& b, const Complex& z);

}  // namespace padelab
