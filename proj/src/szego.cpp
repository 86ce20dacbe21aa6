#include <padelab/szego.hpp>

#include <padelab/abelian.hpp>

#include <cmath>
#include <utility>

namespace padelab {

namespace {

Complex to_c(const Real& x) { return Complex(x, Real(0)); }

Vec to_vec(const RVec& v) {
  Vec out(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) out(k) = Complex(v(k), Real(0));
  return out;
}

Complex phase_dot(const RVec& v, const Vec& x) {
  Complex s(Real(0), Real(0));
  for (Eigen::Index k = 0; k < v.size(); ++k) s += v(k) * x(k);
  return std::exp(Complex(Real(0), -(2 * const_pi())) * s);
}

// Neville extrapolation of F(h) to h = 0 on the nodes h0 / ratio^k.
Complex extrapolate(const std::function<Complex(const Real&)>& F, const Real& h0, int levels,
                    int ratio) {
  std::vector<Complex> t(static_cast<std::size_t>(levels));
  std::vector<Real> h(static_cast<std::size_t>(levels));
  Real hk = h0;
  for (int k = 0; k < levels; ++k) {
    h[static_cast<std::size_t>(k)] = hk;
    t[static_cast<std::size_t>(k)] = F(hk);
    hk /= ratio;
  }
  for (int j = 1; j < levels; ++j)
    for (int i = levels - 1; i >= j; --i) {
      const Real hi = h[static_cast<std::size_t>(i)];
      const Real hj = h[static_cast<std::size_t>(i - j)];
      t[static_cast<std::size_t>(i)] =
          t[static_cast<std::size_t>(i)] +
          (t[static_cast<std::size_t>(i)] - t[static_cast<std::size_t>(i - 1)]) * to_c(hi) /
              to_c(hj - hi);
    }
  return t.back();
}

}  // namespace

SzegoBundle::SzegoBundle(const Surface& S, const ThetaContext& ctx, Integrand log_rho,
                         const SchemeRow& row, int n)
    : S_(&S), ctx_(ctx), log_rho_(std::move(log_rho)), n_(n), g_(S.genus()) {
  if (n < 1) throw std::invalid_argument("bundle degree must be positive");
  if (static_cast<int>(row.size()) != 2 * n)
    throw std::invalid_argument("interpolation row must hold twice the degree in nodes");
  if (g_ > 0 && ctx_.K.size() != g_)
    throw std::invalid_argument("theta context is missing the surface constants");

  v_ = row.node_poly();
  deg_v_ = v_.degree();
  c_inf_ = Real(2 * n - deg_v_) / 2;
  cn_ = sqrt(abs(v_.eval(S.base_point())));

  const Real margin = S.scale() / 64;
  for (const auto& [z, mult] : row.finite) {
    if (S.cuts().dist(z) < margin)
      throw std::invalid_argument("interpolation node too close to the cut system");
    nodes_.push_back({z, mult, third_kind(S, SurfacePoint::finite(z, 0))});
  }
  tk_inf_ = third_kind(S, SurfacePoint::infinity(0));

  std::vector<SurfacePoint> pts;
  for (const NodeDip& nd : nodes_)
    for (int i = 0; i < nd.mult; ++i) pts.push_back(SurfacePoint::finite(nd.z, 0));
  for (int i = 0; i < row.n_inf; ++i) pts.push_back(SurfacePoint::infinity(0));
  SchemeVectors sv = scheme_vectors_assembled(S, pts);
  omega_ = sv.omega;
  tau_ = sv.tau;
  crho_ = c_rho_log(S, log_rho_);

  Vec rhs = Vec::Zero(g_);
  if (g_ > 0)
    rhs = S.abel(SurfacePoint::infinity(1)) * to_c(Real(g_)) + crho_ + to_vec(omega_) +
          ctx_.B * to_vec(tau_);
  main_ = jacobi_invert(ctx_, S, rhs);
  if (!main_.unique) throw NonUniqueDivisor("inversion divisor is not unique at this degree");
  check_divisor(main_.divisor);
  sec_ = secondary_invert(ctx_, S, main_.divisor);
  if (!sec_.unique) throw NonUniqueDivisor("companion divisor is not unique at this degree");

  mvec_ = RVec(g_);
  for (int k = 0; k < g_; ++k) mvec_(k) = Real(main_.m[static_cast<std::size_t>(k)]);

  if (g_ > 0) {
    th_num_ = S.abel_divisor(main_.divisor) + ctx_.K;
    th_den_ = S.abel(SurfacePoint::infinity(1)) * to_c(Real(g_)) + ctx_.K;
  }
  build_upsilon(ctx);
  compute_gamma();
  compute_gamma_star();
}

void SzegoBundle::check_divisor(const Divisor& d) const {
  const Real tol = Real("1e-18") * S_->scale();
  for (const SurfacePoint& p : d.pts)
    if (p.at_inf && p.sheet == 0)
      throw DegenerateDivisor("divisor meets infinity on the base sheet");
  auto near_branch = [&](const Complex& z) {
    for (const Complex& e : S_->branch_points())
      if (abs(z - e) < tol) return true;
    return false;
  };
  const auto& pts = d.pts;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i].at_inf || pts[j].at_inf) continue;  // infinity pairs need sheet 0, caught above
      if (abs(pts[i].z - pts[j].z) >= tol) continue;
      if (pts[i].sheet != pts[j].sheet || near_branch(pts[i].z))
        throw DegenerateDivisor("divisor carries an involution-symmetric pair");
    }
}

Complex SzegoBundle::gn_density(const Complex& t, int sheet) const {
  const Real half = Real(1) / 2;
  Complex even(Real(0), Real(0)), odd(Real(0), Real(0));
  for (const NodeDip& nd : nodes_) {
    even += to_c(Real(nd.mult) * half) / (t - nd.z);
    odd += to_c(Real(nd.mult) * half) * third_kind_density(*S_, nd.tk, t);
  }
  odd += to_c(c_inf_) * third_kind_density(*S_, tk_inf_, t);
  return sheet == 0 ? even + odd : even - odd;
}

Complex SzegoBundle::node_factor(const SurfacePoint& p) const {
  if (p.at_inf)
    throw std::invalid_argument("node factor is unbounded over infinity; use gamma instead");
  Path path = S_->route_from_base(p.z);
  QuadResult q = quad_path([&](const Complex& t) { return gn_density(t, p.sheet); }, path,
                           S_->options().quad);
  if (q.flag == QuadFlag::NonFinite)
    throw std::runtime_error("node factor integral passed through a node");
  Complex val = std::exp(q.value);
  if (p.sheet == 1) val = val / v_.eval(p.z);
  return val;
}

Complex SzegoBundle::lambda(const SurfacePoint& p) const {
  ThirdKind tk = third_kind(*S_, p);
  auto dens = [&](const Complex& t) { return third_kind_density(*S_, tk, t); };
  Vec a = g_ > 0 ? S_->alpha_periods(dens) : Vec();
  // dipole with residue +1 at p, -1 at the involution partner, and vanishing
  // alpha periods
  auto kernel = [&](const Complex& t) {
    Complex h = dens(t);
    for (int k = 0; k < g_; ++k) h -= a(k) * S_->holo_density(k, t);
    return Complex(Real(0), Real(0)) - h;
  };
  // both shores of every cut fold into twice the base-sheet shore, matching
  // the orientation of the weight-constant integrals; the overall sign pins
  // the left-shore trace ratio to 1/rho (checked by the jump tests)
  Complex acc(Real(0), Real(0));
  for (const Cut& c : S_->cuts().cuts()) {
    Segment seg = Segment::line(c.a, c.b, true, true);
    QuadResult q = quad_segment([&](const Complex& s) { return log_rho_(s) * kernel(s); }, seg,
                                S_->options().quad);
    if (q.flag == QuadFlag::NonFinite)
      throw std::domain_error("weight density vanishes on the cut system");
    acc += q.value;
  }
  return Complex(Real(0), Real(0)) - acc / Complex(Real(0), 2 * const_pi());
}

Complex SzegoBundle::weight_factor(const SurfacePoint& p) const { return std::exp(lambda(p)); }

Complex SzegoBundle::phase_factor(const RVec& v, const SurfacePoint& p) const {
  if (g_ == 0 || v.size() == 0) return Complex(Real(1), Real(0));
  return phase_dot(v, S_->abel(p));
}

Complex SzegoBundle::theta_factor(const SurfacePoint& p) const {
  if (g_ == 0) return Complex(Real(1), Real(0));
  Vec x = S_->abel(p);
  return theta(ctx_, Vec(x - th_num_)) / theta(ctx_, Vec(x - th_den_));
}

Complex SzegoBundle::psi(const SurfacePoint& p) const {
  Complex out = to_c(cn_) * node_factor(p) * weight_factor(p);
  if (g_ == 0) return out;
  Vec x = S_->abel(p);
  RVec both = tau_ + mvec_;
  out *= phase_dot(both, x);
  out *= theta(ctx_, Vec(x - th_num_)) / theta(ctx_, Vec(x - th_den_));
  return out;
}

Complex SzegoBundle::upsilon_raw(const SurfacePoint& p) const {
  if (g_ == 0) {
    if (p.at_inf)
      throw std::invalid_argument("companion factor at infinity is a limit; evaluate nearby");
    return p.z - S_->w_at(p);
  }
  Vec x = S_->abel(p);
  Complex q(Real(1), Real(0));
  for (const Vec& u : ups_num_) q *= theta(ctx_, Vec(x - u));
  for (const Vec& u : ups_den_) q /= theta(ctx_, Vec(x - u));
  return q * phase_dot(ups_m_, x);
}

Complex SzegoBundle::upsilon(const SurfacePoint& p) const { return ups_norm_ * upsilon_raw(p); }

void SzegoBundle::build_upsilon(const ThetaContext& ctx) {
  if (g_ > 0) {
    // zeros at the secondary divisor and over infinity on the base sheet;
    // poles at the divisor and over infinity on the second sheet.  Both theta
    // shifts are padded with the same auxiliary points, which cancel.
    const Complex hub = S_->router().hub();
    const Real r0 = S_->router().ring_radius();
    Vec a_inf0 = S_->abel(SurfacePoint::infinity(0));
    Vec a_inf1 = S_->abel(SurfacePoint::infinity(1));
    Real spin(0);
    for (int attempt = 0;; ++attempt) {
      Vec aux = Vec::Zero(g_);
      for (int j = 0; j < g_ - 1; ++j) {
        Real th = Real(2 * j + 1) + spin;
        Complex a = hub + (Real(13) / 10 + Real(j) / 3) * r0 *
                              Complex(cos(th), sin(th));
        aux += S_->abel(SurfacePoint::finite(a, 0));
      }
      ups_num_ = {S_->abel_divisor(sec_.divisor) + ctx.K, a_inf0 + aux + ctx.K};
      ups_den_ = {th_num_, a_inf1 + aux + ctx.K};
      // degeneracy probe: the auxiliary shifts must not sit on the theta divisor
      Vec xp = S_->abel(SurfacePoint::finite(hub + r0 * Complex(Real(0), Real("1.1")), 0));
      Real floor = Real("1e-30");
      if (abs(theta(ctx_, Vec(xp - ups_num_[1]))) > floor &&
          abs(theta(ctx_, Vec(xp - ups_den_[1]))) > floor)
        break;
      if (attempt >= 8) throw std::runtime_error("no usable auxiliary points for the companion");
      spin += Real(7) / 10;
    }
    // exact lattice compensator: the total divisor is principal
    Vec delta = S_->abel_divisor(sec_.divisor) + a_inf0 - S_->abel_divisor(main_.divisor) - a_inf1;
    LatticeSplit sp = lattice_split(ctx_.B, delta);
    ups_m_ = RVec(g_);
    for (int k = 0; k < g_; ++k) ups_m_(k) = Real(sp.m[static_cast<std::size_t>(k)]);
  }
  // normalization: value 1 at the base point when usable
  ups_norm_ = Complex(Real(1), Real(0));
  Complex u0 = upsilon_raw(SurfacePoint::finite(S_->base_point(), 0));
  if (is_finite(u0.real()) && is_finite(u0.imag()) && abs(u0) > Real("1e-18") &&
      abs(u0) < Real("1e18")) {
    ups_norm_ = Complex(Real(1), Real(0)) / u0;
    return;
  }
  // otherwise: unit leading coefficient over infinity on the second sheet
  const Complex dir = std::exp(Complex(Real(0), Real(2) / 3));
  const Real R0 = 32 * S_->scale();
  Complex lead = extrapolate(
      [&](const Real& h) {
        Complex z = dir * to_c(Real(1) / h);
        return upsilon_raw(SurfacePoint::finite(z, 1)) / z;
      },
      Real(1) / R0, 4, 4);
  ups_norm_ = Complex(Real(1), Real(0)) / lead;
}

void SzegoBundle::compute_gamma() {
  // limit of node_factor(z on sheet 0) z^{-n}: remove the pole against a
  // reference point c inside the ring, integrate the difference out to
  // infinity along the canonical path
  const Complex c = S_->router().hub();
  const Path& pinf = S_->route_from_base_to_inf();
  QuadResult q = quad_path(
      [&](const Complex& t) { return gn_density(t, 0) - to_c(Real(n_)) / (t - c); }, pinf,
      S_->options().quad);
  if (q.flag == QuadFlag::NonFinite)
    throw std::runtime_error("normalizing-constant integral passed through a node");
  Complex lim_node = std::exp(q.value - to_c(Real(n_)) * std::log(S_->base_point() - c));
  SurfacePoint inf0 = SurfacePoint::infinity(0);
  Complex inv = to_c(cn_) * lim_node * weight_factor(inf0) * tau_factor(inf0) * m_factor(inf0) *
                theta_factor(inf0);
  gamma_ = Complex(Real(1), Real(0)) / inv;
}

void SzegoBundle::compute_gamma_star() {
  // leading coefficient of psi * upsilon over infinity on the second sheet,
  // extrapolated along a fixed ray
  const Complex dir = std::exp(Complex(Real(0), Real(2) / 3));
  const int pw = n_ - g_ - 1;
  Complex inv = extrapolate(
      [&](const Real& h) {
        Complex z = dir * to_c(Real(1) / h);
        SurfacePoint p = SurfacePoint::finite(z, 1);
        Complex zp = std::pow(z, Complex(Real(pw), Real(0)));
        return psi(p) * upsilon(p) * zp;
      },
      Real(1) / (16 * S_->scale()), 5, 4);
  gamma_star_ = Complex(Real(1), Real(0)) / inv;
}

std::pair<Complex, Complex> predict_sa(const SzegoBundle& b, const Complex& z) {
  const Surface& S = b.surface();
  if (S.cuts().dist(z) < S.scale() / 50)
    throw std::invalid_argument("prediction point too close to the cut system");
  return {b.gamma() * b.psi(SurfacePoint::finite(z, 0)),
          b.gamma() * b.psi(SurfacePoint::finite(z, 1))};
}

}  // namespace padelab
