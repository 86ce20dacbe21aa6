#include <padelab/germ.hpp>

#include <algorithm>
#include <cmath>

namespace padelab {

namespace {

Real two_pi() { return Real(2) * const_pi(); }

void prep_zero_data(Factor& f) {
  f.p.trim();
  if (f.p.degree() < 0) throw std::invalid_argument("function element: zero polynomial base");
  f.lead = f.p.c.back();
  if (f.p.degree() >= 1 && f.tracks_log()) {
    RootOptions ro;
    RootResult rr = poly_roots(f.p, ro);
    if (rr.flag == RootFlag::NotConverged)
      throw std::runtime_error("function element: base polynomial roots did not converge");
    f.zeros = rr.roots;
  }
}

}  // namespace

FunctionElement FunctionElement::constant(const Complex& c) {
  if (!(std::abs(c) > Real(0)))
    throw std::invalid_argument("function element: zero constant factor");
  FunctionElement e;
  Factor f;
  f.kind = Factor::Kind::Const;
  f.cval = c;
  e.fs_.push_back(std::move(f));
  return e;
}

FunctionElement FunctionElement::polynomial(Poly p) {
  FunctionElement e;
  Factor f;
  f.kind = Factor::Kind::Polynomial;
  f.p = std::move(p);
  prep_zero_data(f);
  e.fs_.push_back(std::move(f));
  return e;
}

FunctionElement FunctionElement::algebraic_power(Poly p, long num, long den) {
  if (den == 0) throw std::invalid_argument("function element: zero exponent denominator");
  if (den < 0) { den = -den; num = -num; }
  FunctionElement e;
  Factor f;
  f.kind = Factor::Kind::AlgebraicPower;
  f.p = std::move(p);
  f.num = num;
  f.den = den;
  prep_zero_data(f);
  if (f.p.degree() < 1)
    throw std::invalid_argument("function element: fractional power of a constant");
  e.fs_.push_back(std::move(f));
  return e;
}

FunctionElement FunctionElement::exp_polynomial(Poly p) {
  FunctionElement e;
  Factor f;
  f.kind = Factor::Kind::ExpPolynomial;
  f.p = std::move(p);
  f.p.trim();
  if (f.p.c.empty()) f.p.c.push_back(Complex(Real(0), Real(0)));
  e.fs_.push_back(std::move(f));
  return e;
}

FunctionElement operator*(const FunctionElement& a, const FunctionElement& b) {
  FunctionElement e = a;
  e.fs_.insert(e.fs_.end(), b.fs_.begin(), b.fs_.end());
  return e;
}

Complex FunctionElement::anchor() const {
  Real R(8);
  for (const auto& f : fs_)
    for (const auto& rc : f.zeros) R = std::max(R, Real(4) * (Real(1) + std::abs(rc.z)));
  static const double thetas[] = {0, 1.0 / 7, -1.0 / 7, 2.0 / 7, -2.0 / 7, 3.0 / 7, -3.0 / 7};
  const Real pi = const_pi();
  for (double th : thetas) {
    const Real t = pi * Real(th);
    const Complex z(R * cos(t), R * sin(t));
    bool ok = true;
    for (const auto& f : fs_) {
      if (!f.tracks_log()) continue;
      const Complex pv = f.p.eval(z);
      if (!(std::abs(pv) > Real(0)) || abs(std::arg(pv)) > pi - Real(3) / Real(10)) {
        ok = false;
        break;
      }
    }
    if (ok) return z;
  }
  return Complex(R, R / Real(17));  // last resort; still deterministic
}

BranchState FunctionElement::anchor_state() const {
  BranchState st;
  st.at = anchor();
  st.logs.assign(fs_.size(), Complex(Real(0), Real(0)));
  for (std::size_t i = 0; i < fs_.size(); ++i) {
    const Factor& f = fs_[i];
    if (!f.tracks_log()) continue;
    Complex lg = std::log(f.lead);
    for (const auto& rc : f.zeros) lg += Real(rc.multiplicity) * std::log(st.at - rc.z);
    st.logs[i] = lg;
  }
  return st;
}

Complex FunctionElement::chord_log_step(const Factor& f, const Complex& a, const Complex& b) {
  const Complex pa = f.p.eval(a), pb = f.p.eval(b);
  if (!(std::abs(pa) > Real(0)) || !(std::abs(pb) > Real(0)))
    throw std::runtime_error("continuation path meets a branch zero");
  // Winding estimate from the zero set; along a straight chord each linear
  // factor turns by less than pi, so the principal ratio is exact per zero.
  Real wind(0);
  for (const auto& rc : f.zeros)
    wind += Real(rc.multiplicity) * std::arg((b - rc.z) / (a - rc.z));
  const Complex ratio_log = std::log(pb / pa);
  const Real k = round((wind - ratio_log.imag()) / two_pi());
  return ratio_log + Complex(Real(0), two_pi() * k);
}

BranchState FunctionElement::continued_line(const BranchState& from, const Complex& to) const {
  BranchState st = from;
  for (std::size_t i = 0; i < fs_.size(); ++i)
    if (fs_[i].tracks_log()) st.logs[i] += chord_log_step(fs_[i], from.at, to);
  st.at = to;
  return st;
}

void FunctionElement::arc_step(BranchState& st, const Segment& seg, const Real& s0,
                               const Real& s1, int depth) const {
  if (depth > 40) throw std::runtime_error("continuation path meets a branch zero");
  const Complex a = seg.point(s0), b = seg.point(s1);
  // Acceptable when every zero sees the chord under a small angle; then the
  // arc piece is homotopic to its chord away from all zeros.
  bool ok = true;
  const Real quarter = const_pi() / Real(2);
  for (const auto& f : fs_) {
    if (!f.tracks_log()) continue;
    for (const auto& rc : f.zeros)
      if (abs(std::arg((b - rc.z) / (a - rc.z))) > quarter) { ok = false; break; }
    if (!ok) break;
  }
  if (!ok) {
    const Real mid = (s0 + s1) / Real(2);
    arc_step(st, seg, s0, mid, depth + 1);
    arc_step(st, seg, mid, s1, depth + 1);
    return;
  }
  for (std::size_t i = 0; i < fs_.size(); ++i)
    if (fs_[i].tracks_log()) st.logs[i] += chord_log_step(fs_[i], a, b);
  st.at = b;
}

void FunctionElement::continue_along(BranchState& st, const Path& path) const {
  for (const auto& seg : path.segs) {
    switch (seg.kind) {
      case Segment::Kind::Line:
        st = continued_line(st, seg.b);
        break;
      case Segment::Kind::EllipseArc: {
        if (std::abs(seg.point(Real(0)) - st.at) > Real("1e-30") * (Real(1) + std::abs(st.at)))
          st = continued_line(st, seg.point(Real(0)));
        const int chunks = 8;
        for (int k = 0; k < chunks; ++k)
          arc_step(st, seg, Real(k) / Real(chunks), Real(k + 1) / Real(chunks), 0);
        break;
      }
      case Segment::Kind::RayToInf:
        throw std::runtime_error("cannot continue a branch state out to infinity");
    }
  }
}

BranchState FunctionElement::state_at(const Complex& z, const Router* router) const {
  BranchState st = anchor_state();
  if (router) {
    Path p = router->route(st.at, z);
    if (p.segs.empty() && std::abs(z - st.at) > Real(0))
      throw std::runtime_error("no continuation path found");
    continue_along(st, p);
    return st;
  }
  return continued_line(st, z);
}

Complex FunctionElement::value(const BranchState& st) const {
  Complex v(Real(1), Real(0));
  for (std::size_t i = 0; i < fs_.size(); ++i) {
    const Factor& f = fs_[i];
    switch (f.kind) {
      case Factor::Kind::Const: v *= f.cval; break;
      case Factor::Kind::Polynomial: v *= f.p.eval(st.at); break;
      case Factor::Kind::AlgebraicPower: v *= std::exp(f.exponent() * st.logs[i]); break;
      case Factor::Kind::ExpPolynomial: v *= std::exp(f.p.eval(st.at)); break;
    }
  }
  return v;
}

Complex FunctionElement::log_value(const BranchState& st) const {
  Complex s(Real(0), Real(0));
  for (std::size_t i = 0; i < fs_.size(); ++i) {
    const Factor& f = fs_[i];
    switch (f.kind) {
      case Factor::Kind::Const: s += std::log(f.cval); break;
      case Factor::Kind::Polynomial: s += st.logs[i]; break;
      case Factor::Kind::AlgebraicPower: s += f.exponent() * st.logs[i]; break;
      case Factor::Kind::ExpPolynomial: s += f.p.eval(st.at); break;
    }
  }
  return s;
}

std::vector<Complex> FunctionElement::taylor(const BranchState& st, int n) const {
  if (n <= 0) return {};
  auto pad = [n](std::vector<Complex> v) {
    v.resize(static_cast<std::size_t>(n), Complex(Real(0), Real(0)));
    return v;
  };
  std::vector<Complex> acc = pad({Complex(Real(1), Real(0))});
  for (std::size_t i = 0; i < fs_.size(); ++i) {
    const Factor& f = fs_[i];
    std::vector<Complex> cur;
    switch (f.kind) {
      case Factor::Kind::Const:
        cur = pad({f.cval});
        break;
      case Factor::Kind::Polynomial:
        cur = pad(f.p.taylor_at(st.at, n - 1));
        break;
      case Factor::Kind::AlgebraicPower: {
        std::vector<Complex> s = pad(f.p.taylor_at(st.at, n - 1));
        const Complex s0 = s[0];
        if (!(std::abs(s0) > Real(0)))
          throw std::runtime_error("taylor expansion centered at a branch zero");
        for (auto& x : s) x /= s0;
        cur = ser_pow1(s, Complex(f.exponent(), Real(0)), static_cast<std::size_t>(n));
        const Complex A = std::exp(f.exponent() * st.logs[i]);
        for (auto& x : cur) x *= A;
        break;
      }
      case Factor::Kind::ExpPolynomial: {
        std::vector<Complex> s = pad(f.p.taylor_at(st.at, n - 1));
        const Complex s0 = s[0];
        s[0] = Complex(Real(0), Real(0));
        cur = ser_exp0(s, static_cast<std::size_t>(n));
        const Complex A = std::exp(s0);
        for (auto& x : cur) x *= A;
        break;
      }
    }
    acc = ser_mul(acc, cur, static_cast<std::size_t>(n));
  }
  return acc;
}

LaurentAtInf FunctionElement::laurent_inf(int n) const {
  if (n <= 0) n = 1;
  
  LaurentAtInf out;
  out.ord = 0;
  out.c.assign(static_cast<std::size_t>(n), Complex(Real(0), Real(0)));
  out.c[0] = Complex(Real(1), Real(0));
  for (const auto& f : fs_) {
    const long d = f.p.degree();
    std::vector<Complex> cur(static_cast<std::size_t>(n), Complex(Real(0), Real(0)));
    switch (f.kind) {
      case Factor::Kind::Const:
        cur[0] = f.cval;
        break;
      case Factor::Kind::Polynomial:
        for (long k = 0; k <= d && k < n; ++k) cur[static_cast<std::size_t>(k)] = f.p.c[static_cast<std::size_t>(d - k)];
        out.ord += -d;
        break;
      case Factor::Kind::AlgebraicPower: {
        if ((d * f.num) % f.den != 0)
          throw std::runtime_error("function element is branched at infinity");
        out.ord += -(d * f.num) / f.den;
        std::vector<Complex> t(static_cast<std::size_t>(n), Complex(Real(0), Real(0)));
        for (long k = 0; k <= d && k < n; ++k)
          t[static_cast<std::size_t>(k)] = f.p.c[static_cast<std::size_t>(d - k)] / f.lead;
        cur = ser_pow1(t, Complex(f.exponent(), Real(0)), static_cast<std::size_t>(n));
        // The anchor determination reduces to the principal branch of
        // lead^alpha at infinity; the tail series carries everything else.
        const Complex A = std::exp(f.exponent() * std::log(f.lead));
        for (auto& x : cur) x *= A;
        break;
      }
      case Factor::Kind::ExpPolynomial:
        if (d >= 1)
          throw std::runtime_error("function element has an essential singularity at infinity");
        cur[0] = std::exp(f.p.c.empty() ? Complex(Real(0), Real(0)) : f.p.c[0]);
        break;
    }
    out.c = ser_mul(out.c, cur, static_cast<std::size_t>(n));
  }
  return out;
}

bool FunctionElement::analytic_at_inf() const {
  try {
    return laurent_inf(1).ord >= 0;
  } catch (const std::runtime_error&) {
    return false;
  }
}

std::vector<Complex> FunctionElement::branch_zeros() const {
  std::vector<Complex> zs;
  for (const auto& f : fs_)
    if (f.kind == Factor::Kind::AlgebraicPower)
      for (const auto& rc : f.zeros) zs.push_back(rc.z);
  return zs;
}

// ---------------------------------------------------------------------------

CauchyTransform::CauchyTransform(CutSystem cuts, FunctionElement density, QuadOptions opts)
    : cuts_(std::move(cuts)), rho_(std::move(density)), opts_(opts) {
  // The density must be continuable to every cut start and nonvanishing on
  // the support.
  std::vector<std::vector<Complex>> obstacles;
  for (const auto& c : cuts_.cuts()) obstacles.push_back({c.a, c.b});
  const Real off = Real(1) / Real(50);
  for (const auto& z : rho_.branch_zeros()) {
    obstacles.push_back({z + Complex(off, Real(0)), z + Complex(Real(0), off),
                         z - Complex(off, Real(0)), z - Complex(Real(0), off),
                         z + Complex(off, Real(0))});
  }
  Router router(obstacles);
  for (std::size_t j = 0; j < cuts_.size(); ++j) {
    const Cut& c = cuts_.cuts()[j];
    arc_start_.push_back(rho_.state_at(c.a, &router));
    // Nonvanishing check along the open cut.
    BranchState st = arc_start_.back();
    Real mx(0);
    std::vector<Real> mags;
    for (int k = 1; k < 32; ++k) {
      const Complex t = c.a + (c.b - c.a) * Real(k) / Real(32);
      st = rho_.continued_line(st, t);
      const Real m = std::abs(rho_.value(st));
      mags.push_back(m);
      mx = std::max(mx, m);
    }
    for (const Real& m : mags)
      if (m < Real("1e-30") * mx)
        throw std::runtime_error("density vanishes on the support");
  }
}

Complex CauchyTransform::density_on_cut(std::size_t j, const Complex& t) const {
  return rho_.value(rho_.continued_line(arc_start_.at(j), t));
}

Complex CauchyTransform::density_log_on_cut(std::size_t j, const Complex& t) const {
  return rho_.log_value(rho_.continued_line(arc_start_.at(j), t));
}

Complex CauchyTransform::integrate(
    const std::function<Complex(const Complex&, std::size_t)>& num) const {
  Complex total(Real(0), Real(0));
  for (std::size_t j = 0; j < cuts_.size(); ++j) {
    const Cut& c = cuts_.cuts()[j];
    Segment seg = Segment::line(c.a, c.b);
    seg.singular_start = seg.singular_end = true;
    QuadResult qr = quad_segment([&](const Complex& t) {
      return num(t, j) / cuts_.w_plus(j, t);
    }, seg, opts_);
    if (qr.flag == QuadFlag::NonFinite)
      throw std::runtime_error("cauchy transform: non-finite integrand");
    total += qr.value;
  }
  const Real pi = const_pi();
  return total / (Complex(Real(0), Real(2)) * pi);
}

Complex CauchyTransform::value(const Complex& z) const {
  return integrate([&](const Complex& t, std::size_t j) {
    return density_on_cut(j, t) / (t - z);
  });
}

std::vector<Complex> CauchyTransform::taylor(const Complex& v, int n) const {
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    out.push_back(integrate([&](const Complex& t, std::size_t j) {
      return density_on_cut(j, t) * std::pow(t - v, Complex(Real(-(m + 1)), Real(0)));
    }));
  }
  return out;
}

LaurentAtInf CauchyTransform::laurent_inf(int n) const {
  LaurentAtInf out;
  out.ord = 1;
  for (int k = 0; k < n; ++k) {
    const Complex mu = integrate([&](const Complex& t, std::size_t j) {
      return density_on_cut(j, t) * std::pow(t, Complex(Real(k), Real(0)));
    });
    out.c.push_back(-mu);
  }
  return out;
}

// ---------------------------------------------------------------------------

Complex germ_value(const GermFn& g, const Router& router, const Complex& z) {
  if (std::holds_alternative<FunctionElement>(g)) {
    const auto& fe = std::get<FunctionElement>(g);
    return fe.value(fe.state_at(z, &router));
  }
  return std::get<CauchyTransform>(g).value(z);
}

std::vector<Complex> germ_taylor(const GermFn& g, const Router& router, const Complex& v,
                                 int n) {
  if (std::holds_alternative<FunctionElement>(g)) {
    const auto& fe = std::get<FunctionElement>(g);
    return fe.taylor(fe.state_at(v, &router), n);
  }
  return std::get<CauchyTransform>(g).taylor(v, n);
}

LaurentAtInf germ_laurent_inf(const GermFn& g, int n) {
  if (std::holds_alternative<FunctionElement>(g))
    return std::get<FunctionElement>(g).laurent_inf(n);
  return std::get<CauchyTransform>(g).laurent_inf(n);
}

Complex one_sided_limit(const std::function<Complex(const Complex&)>& g, const Complex& x,
                        const Complex& normal, Real delta0, int levels) {
  Complex nd = normal;
  const Real nn = std::abs(nd);
  if (!(nn > Real(0))) throw std::invalid_argument("one_sided_limit: zero normal");
  nd /= nn;
  if (!(delta0 > Real(0))) delta0 = Real("1e-5");
  if (levels < 2) levels = 2;
  std::vector<Real> d(static_cast<std::size_t>(levels));
  std::vector<Complex> y(static_cast<std::size_t>(levels));
  for (int k = 0; k < levels; ++k) {
    d[static_cast<std::size_t>(k)] = delta0 * pow2(-k);
    y[static_cast<std::size_t>(k)] = g(x + d[static_cast<std::size_t>(k)] * nd);
  }
  for (int j = 1; j < levels; ++j)
    for (int i = levels - 1; i >= j; --i) {
      const std::size_t ii = static_cast<std::size_t>(i);
      const std::size_t ij = static_cast<std::size_t>(i - j);
      y[ii] = y[ii] + (y[ii] - y[ii - 1]) * (d[ii] / (d[ij] - d[ii]));
    }
  return y[static_cast<std::size_t>(levels - 1)];
}

}  // namespace padelab
