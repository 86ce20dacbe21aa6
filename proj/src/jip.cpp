#include "padelab/jip.hpp"

#include <algorithm>
#include <stdexcept>

namespace padelab {

namespace {

Complex holo_plus(const Surface& S, int k, const Complex& t) {
  const Mat& L = S.holo();
  Complex num(0);
  for (Eigen::Index j = L.cols() - 1; j >= 0; --j) num = num * t + L(k, j);
  return num / S.w(t, 0);
}

using TwoSheet = std::function<Complex(const Complex&, int)>;

Complex chi_period_two_sheet(const Surface& S, std::size_t k, const TwoSheet& h) {
  const Bridge& b = S.chi(k);
  auto h0 = [&](const Complex& z) { return h(z, 0); };
  auto h1 = [&](const Complex& z) { return h(z, 1); };
  QuadResult q0 = quad_path(h0, b.planar, S.options().quad);
  QuadResult q1 = quad_path(h1, b.planar, S.options().quad);
  if (q0.flag == QuadFlag::NonFinite || q1.flag == QuadFlag::NonFinite)
    throw std::runtime_error("cycle quadrature hit a non-finite value");
  return Real(b.orient) * (q0.value - q1.value);
}

Complex combo_period_two_sheet(const Surface& S, const std::vector<int>& combo, const TwoSheet& h) {
  Complex acc(0);
  for (std::size_t c = 0; c < combo.size(); ++c)
    if (combo[c] != 0) acc += Real(combo[c]) * chi_period_two_sheet(S, c, h);
  return acc;
}

RVec take_real(const Vec& v, const char* what) {
  Real scale(1);
  for (Eigen::Index i = 0; i < v.size(); ++i) scale = std::max(scale, Real(abs(v(i))));
  RVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (abs(v(i).imag()) > Real("1e-25") * scale)
      throw std::runtime_error(std::string(what) + ": expected a real vector");
    out(i) = v(i).real();
  }
  return out;
}

// ---------------------------------------------------------------- inversion

struct Pt {
  bool zeta = false;  // chart at infinity, z = 1/v
  Complex v{};
  int sheet = 0;
  Vec a;  // cached Abel value
};

SurfacePoint to_surface(const Pt& p) {
  if (p.zeta) {
    if (abs(p.v) < Real("1e-25")) return SurfacePoint::infinity(p.sheet);
    return SurfacePoint::finite(Complex(1) / p.v, p.sheet);
  }
  return SurfacePoint::finite(p.v, p.sheet);
}

void full_eval(const Surface& S, Pt& p) { p.a = S.abel(to_surface(p)); }

// Abel update along the straight segment old -> new when it stays clear of
// the cuts and branch points; falls back to a full routed evaluation.
void move_to(const Surface& S, Pt& p, bool zeta_new, const Complex& v_new) {
  const int g = S.genus();
  if (!p.zeta && !zeta_new) {
    const Complex z0 = p.v, z1 = v_new;
    bool ok = abs(z1 - z0) < S.scale() && !S.cuts().crosses(z0, z1);
    if (ok)
      for (const Complex& e : S.branch_points())
        if (dist_point_segment(e, z0, z1) < Real("1e-5") * S.scale()) { ok = false; break; }
    if (ok) {
      Segment seg = Segment::line(z0, z1);
      Vec delta(g);
      for (int k = 0; k < g; ++k) {
        QuadResult q = quad_segment([&](const Complex& z) { return S.holo_density(k, z); }, seg,
                                    S.options().quad);
        if (q.flag == QuadFlag::NonFinite) { ok = false; break; }
        delta(k) = q.value;
      }
      if (ok) {
        if (p.sheet == 1) delta = -delta;
        p.a += delta;
        p.v = v_new;
        return;
      }
    }
  }
  p.zeta = zeta_new;
  p.v = v_new;
  full_eval(S, p);
}

Complex dabel_dv(const Surface& S, const Pt& p, int k) {
  const Real sgn = p.sheet == 0 ? Real(1) : Real(-1);
  if (!p.zeta) return sgn * S.holo_density(k, p.v);
  if (abs(p.v) < Real("1e-40")) return Complex(-sgn * S.holo()(k, S.genus() - 1));
  const Complex z = Complex(1) / p.v;
  return sgn * S.holo_density(k, z) * (-Complex(1) / (p.v * p.v));
}

Real sup_norm(const Vec& v) {
  Real n(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) n = std::max(n, Real(abs(v(i))));
  return n;
}

struct Attempt {
  bool ok = false;
  std::vector<Pt> pts;
};

Attempt newton_attempt(const Surface& S, const Mat& B, const Vec& rhs, std::vector<Pt> pts,
                       const Real& tol) {
  const int g = S.genus();
  const Real r_far = Real(4) * S.router().ring_radius() + 2 * abs(S.router().hub()) + S.scale();
  for (Pt& p : pts) full_eval(S, p);
  int since_refresh = 0;
  for (int iter = 0; iter < 60; ++iter) {
    Vec F = -rhs;
    for (const Pt& p : pts) F += p.a;
    LatticeSplit sp = lattice_split(B, F);
    Real rn = sup_norm(sp.r);
    if (rn < tol) {
      // kill incremental drift before trusting the result
      for (Pt& p : pts) full_eval(S, p);
      Vec Fr = -rhs;
      for (const Pt& p : pts) Fr += p.a;
      if (sup_norm(lattice_split(B, Fr).r) < 4 * tol) return {true, std::move(pts)};
      since_refresh = 0;
      continue;
    }
    if (++since_refresh >= 12) {
      for (Pt& p : pts) full_eval(S, p);
      since_refresh = 0;
    }

    Mat J(g, g);
    for (int k = 0; k < g; ++k)
      for (int i = 0; i < g; ++i) J(k, i) = dabel_dv(S, pts[static_cast<std::size_t>(i)], k);
    Vec dv = J.fullPivLu().solve(Vec(-sp.r));
    bool finite = true;
    for (int i = 0; i < g; ++i)
      if (!is_finite(dv(i))) finite = false;
    if (!finite) return {};
    for (int i = 0; i < g; ++i) {
      const Pt& p = pts[static_cast<std::size_t>(i)];
      // caps grow with |v| so a point can still run off to infinity
      Real cap = p.zeta ? Real(1) / (Real(5) * r_far) + abs(p.v) / 2 : S.scale() + abs(p.v) / 2;
      Real len = abs(dv(i));
      if (len > cap) dv(i) *= cap / len;
    }

    bool accepted = false;
    Real t(1);
    for (int h = 0; h < 11 && !accepted; ++h, t /= 2) {
      std::vector<Pt> trial = pts;
      for (int i = 0; i < g; ++i) {
        Pt& p = trial[static_cast<std::size_t>(i)];
        Complex nv = p.v + t * dv(i);
        bool nz = p.zeta;
        if (!nz && abs(nv) > r_far) {
          nz = true;
          nv = Complex(1) / nv;
        } else if (nz && abs(nv) > Real(2) / r_far) {
          nz = false;
          nv = Complex(1) / nv;
        }
        move_to(S, p, nz, nv);
      }
      // compare residuals mod the lattice: a full re-evaluation (chart switch,
      // cut-adjacent fallback) may land on a different branch of the Abel map
      Vec Fn = -rhs;
      for (const Pt& p : trial) Fn += p.a;
      if (sup_norm(lattice_split(B, Fn).r) < rn * (1 - t / 8)) {
        pts = std::move(trial);
        accepted = true;
      }
    }
    if (!accepted) return {};
  }
  return {};
}

bool surface_point_less(const SurfacePoint& x, const SurfacePoint& y) {
  if (x.at_inf != y.at_inf) return x.at_inf;
  if (x.sheet != y.sheet) return x.sheet < y.sheet;
  if (x.at_inf) return false;
  if (x.z.real() != y.z.real()) return x.z.real() < y.z.real();
  return x.z.imag() < y.z.imag();
}

std::vector<Complex> start_positions(const Surface& S) {
  std::vector<Complex> pos;
  const Real r0 = S.router().ring_radius();
  const Complex hub = S.router().hub();
  const Complex i1(Real(0), Real(1));
  const auto& cuts = S.cuts().cuts();
  for (const Cut& c : cuts) {
    pos.push_back(c.mid() + i1 * (Real(2) / 5) * c.half());
    pos.push_back(c.mid() - i1 * (Real(2) / 5) * c.half());
  }
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    Complex m = (cuts[j].b + cuts[j + 1].a) / Real(2);
    pos.push_back(m + i1 * (cuts[j + 1].a - cuts[j].b) / Real(5));
  }
  const Real pi = const_pi();
  for (int k = 0; k < 4; ++k) {
    Real th = pi * Real(2 * k) / 4 + Real(7) / 20;
    pos.push_back(hub + (Real(4) * r0 / 5) * Complex(cos(th), sin(th)));
  }
  pos.push_back(hub + Real(3) * r0 * Complex(Real("0.62"), Real("0.79")));
  // keep the pool clear of the cuts and of duplicates
  std::vector<Complex> out;
  for (Complex p : pos) {
    for (int tries = 0; tries < 4 && S.cuts().dist(p) < S.scale() / 50; ++tries)
      p += i1 * (S.scale() / 16);
    bool dup = false;
    for (const Complex& q : out)
      if (abs(p - q) < Real("1e-6") * S.scale()) dup = true;
    if (!dup) out.push_back(p);
  }
  return out;
}

}  // namespace

// ------------------------------------------------------------ scheme vectors

SchemeVectors scheme_vectors(const Surface& S, const std::vector<SurfacePoint>& nodes) {
  const int g = S.genus();
  Vec om = Vec::Zero(g), ta = Vec::Zero(g);
  for (const SurfacePoint& v : nodes) {
    ThirdKind tk = third_kind(S, v);
    auto h = [&](const Complex& z) { return third_kind_density(S, tk, z); };
    om += S.beta_periods(h);
    ta += S.alpha_periods(h);
  }
  const Complex four_pi_i = Complex(Real(0), 4 * const_pi());
  SchemeVectors out;
  out.omega = take_real(Vec(-om / four_pi_i), "scheme omega");
  out.tau = take_real(Vec(ta / four_pi_i), "scheme tau");
  return out;
}

SchemeVectors scheme_vectors_assembled(const Surface& S, const std::vector<SurfacePoint>& nodes) {
  const int g = S.genus();
  struct Node {
    SurfacePoint p;
    int mult = 0;
    ThirdKind tk;
  };
  std::vector<Node> finite;
  int n_inf = 0;
  int inf_sheet = 0;
  for (const SurfacePoint& v : nodes) {
    if (v.at_inf) {
      ++n_inf;
      inf_sheet = v.sheet;
      continue;
    }
    bool merged = false;
    for (Node& nd : finite)
      if (!nd.p.at_inf && nd.p.sheet == v.sheet &&
          abs(nd.p.z - v.z) < Real("1e-30") * S.scale()) {
        ++nd.mult;
        merged = true;
        break;
      }
    if (!merged) finite.push_back({v, 1, {}});
  }
  for (Node& nd : finite) nd.tk = third_kind(S, nd.p);
  ThirdKind tk_inf;
  if (n_inf > 0) tk_inf = third_kind(S, SurfacePoint::infinity(inf_sheet));

  const Real half = Real(1) / 2;
  TwoSheet h = [&](const Complex& z, int sheet) {
    Complex acc(0);
    for (const Node& nd : finite)
      acc += Real(nd.mult) * half *
             (Complex(1) / (z - nd.p.z) + third_kind_density(S, nd.tk, z, sheet));
    if (n_inf > 0) acc += Real(n_inf) * half * third_kind_density(S, tk_inf, z, sheet);
    return acc;
  };

  Vec om(g), ta(g);
  for (int k = 0; k < g; ++k) {
    om(k) = combo_period_two_sheet(S, S.beta_combos()[static_cast<std::size_t>(k)], h);
    ta(k) = combo_period_two_sheet(S, S.alpha_combos()[static_cast<std::size_t>(k)], h);
  }
  const Complex two_pi_i = Complex(Real(0), 2 * const_pi());
  SchemeVectors out;
  out.omega = take_real(Vec(-om / two_pi_i), "scheme omega");
  out.tau = take_real(Vec(ta / two_pi_i), "scheme tau");
  return out;
}

// ------------------------------------------------------------------- c_rho

Vec c_rho_log(const Surface& S, const Integrand& log_rho) {
  const int g = S.genus();
  Vec out = Vec::Zero(g);
  if (g == 0) return out;
  for (const Cut& c : S.cuts().cuts()) {
    Segment seg = Segment::line(c.a, c.b);
    seg.singular_start = seg.singular_end = true;
    for (int k = 0; k < g; ++k) {
      QuadResult q = quad_segment(
          [&](const Complex& t) { return log_rho(t) * holo_plus(S, k, t); }, seg,
          S.options().quad);
      if (q.flag == QuadFlag::NonFinite)
        throw std::runtime_error("weight integral hit a non-finite value");
      out(k) += q.value;
    }
  }
  // both shores fold into twice the sheet-0 shore integral
  const Complex pi_i = Complex(Real(0), const_pi());
  return Vec(out / pi_i);
}

Vec c_rho(const Surface& S, const Integrand& rho) {
  for (const Cut& c : S.cuts().cuts()) {
    Real lo(0), hi(0);
    for (int s = 0; s <= 64; ++s) {
      Complex t = c.a + (c.b - c.a) * (Real(s) / 64);
      Real m = abs(rho(t));
      if (s == 0 || m < lo) lo = m;
      if (s == 0 || m > hi) hi = m;
    }
    if (lo < Real("1e-12") * (hi + Real("1e-200")))
      throw std::domain_error("weight vanishes on the cut system");
  }
  return c_rho_log(S, [&](const Complex& t) { return std::log(rho(t)); });
}

// -------------------------------------------------------- Riemann constants

Vec riemann_constants(const ThetaContext& ctx, const Surface& S) {
  const int g = S.genus();
  if (g == 0) return Vec(0);
  const Mat& B = ctx.B;

  // sample points for degree g-1 test divisors (none needed when g = 1)
  std::vector<Vec> test_rhs;
  if (g == 1) {
    test_rhs.push_back(Vec::Zero(1));
  } else {
    const Real r0 = S.router().ring_radius();
    const Complex hub = S.router().hub();
    const Real pi = const_pi();
    std::vector<SurfacePoint> pool;
    for (int t = 0; t < 4 + g; ++t) {
      Real th = 2 * pi * Real(t) / Real(4 + g) + Real(7) / 10;
      Complex z = hub + (Real(77) / 100) * r0 * Complex(cos(th), sin(th));
      for (int tries = 0; tries < 6 && S.cuts().dist(z) < S.scale() / 20; ++tries)
        z += Complex(Real(0), S.scale() / 13);
      pool.push_back(SurfacePoint::finite(z, t % 2));
    }
    for (int t = 0; t < 5; ++t) {
      Vec a = Vec::Zero(g);
      for (int i = 0; i < g - 1; ++i)
        a += S.abel(pool[static_cast<std::size_t>((t + i) % static_cast<int>(pool.size()))]);
      test_rhs.push_back(a);
    }
  }

  Vec best;
  int hits = 0;
  for (unsigned jm = 0; jm < (1u << (2 * g)); ++jm) {
    Vec cand = Vec::Zero(g);
    for (int k = 0; k < g; ++k) {
      if (jm & (1u << k)) cand(k) += Real(1) / 2;
      if (jm & (1u << (g + k)))
        for (int l = 0; l < g; ++l) cand(l) += B(l, k) / Real(2);
    }
    Real score(0);
    for (const Vec& a : test_rhs)
      score = std::max(score, Real(abs(theta(ctx, lattice_reduce(B, Vec(a + cand))))));
    if (score < Real("1e-18")) {
      ++hits;
      best = cand;
    }
  }
  if (hits != 1) throw std::runtime_error("Riemann constant calibration failed");
  return best;
}

ThetaContext surface_theta_context(const Surface& S, const Real& eps) {
  ThetaContext ctx = make_theta_context(S.period_matrix(), eps);
  ctx.K = riemann_constants(ctx, S);
  return ctx;
}

ThetaContext surface_theta_context(const Surface& S) {
  return surface_theta_context(S, quad_tol_default());
}

// ---------------------------------------------------------- Jacobi inversion

JipResult jacobi_invert(const ThetaContext& ctx, const Surface& S, const Vec& rhs) {
  const int g = S.genus();
  if (rhs.size() != g) throw std::invalid_argument("inversion target has wrong dimension");
  JipResult out;
  out.residual = Real(0);
  if (g == 0) return out;
  const Mat& B = S.period_matrix();
  {
    Real diff(0), sc(1);
    for (Eigen::Index i = 0; i < B.rows(); ++i)
      for (Eigen::Index j = 0; j < B.cols(); ++j) {
        diff = std::max(diff, Real(abs(B(i, j) - ctx.B(i, j))));
        sc = std::max(sc, Real(abs(B(i, j))));
      }
    if (diff > Real("1e-20") * sc)
      throw std::invalid_argument("theta context does not match the surface");
  }

  const Real tol = Real("1e-33");
  const std::vector<Complex> pool = start_positions(S);
  const std::size_t np = pool.size();

  // deterministic multistart: tuples of distinct pool positions x sheet masks
  std::vector<std::vector<Pt>> starts;
  std::vector<std::size_t> idx(static_cast<std::size_t>(g));
  for (int i = 0; i < g; ++i) idx[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
  auto push_tuples = [&](const std::vector<std::size_t>& ix) {
    for (unsigned mask = 0; mask < (1u << g); ++mask) {
      std::vector<Pt> st;
      for (int i = 0; i < g; ++i) {
        Pt p;
        p.v = pool[ix[static_cast<std::size_t>(i)]];
        p.sheet = (mask >> i) & 1u;
        st.push_back(p);
      }
      starts.push_back(std::move(st));
    }
  };
  if (g == 1) {
    for (std::size_t i = 0; i < np; ++i) push_tuples({i});
  } else {
    // walk combinations in lexicographic order
    for (;;) {
      push_tuples(idx);
      int d = g - 1;
      while (d >= 0 && idx[static_cast<std::size_t>(d)] ==
                           np - static_cast<std::size_t>(g - d))
        --d;
      if (d < 0) break;
      ++idx[static_cast<std::size_t>(d)];
      for (int i = d + 1; i < g; ++i)
        idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
      if (starts.size() > 300) break;
    }
  }
  if (starts.size() > 96) starts.resize(96);

  Attempt got;
  for (const auto& st : starts) {
    got = newton_attempt(S, B, rhs, st, tol);
    if (got.ok) break;
  }
  if (!got.ok) throw std::runtime_error("jacobi inversion did not converge");

  // snap near-infinite points exactly to infinity, then refresh
  std::vector<SurfacePoint> pts;
  for (Pt& p : got.pts) {
    if (p.zeta && abs(p.v) < Real("1e-20")) p.v = Complex(0);
    pts.push_back(to_surface(p));
  }
  std::sort(pts.begin(), pts.end(), surface_point_less);
  out.divisor = Divisor(pts);

  Vec F = S.abel_divisor(out.divisor) - rhs;
  LatticeSplit sp = lattice_split(B, F);
  out.j = sp.j;
  out.m = sp.m;
  out.residual = sup_norm(sp.r);

  const Real ptol = Real("1e-10");
  for (std::size_t i = 0; i < pts.size() && out.unique; ++i)
    for (std::size_t k = i + 1; k < pts.size() && out.unique; ++k) {
      const SurfacePoint &x = pts[i], &y = pts[k];
      bool sym = false;
      if (x.at_inf && y.at_inf && x.sheet != y.sheet) sym = true;
      if (!x.at_inf && !y.at_inf && x.sheet != y.sheet && abs(x.z - y.z) < ptol * S.scale())
        sym = true;
      if (!x.at_inf && !y.at_inf)
        for (const Complex& e : S.branch_points())
          if (abs(x.z - e) < ptol * S.scale() && abs(y.z - e) < ptol * S.scale()) sym = true;
      if (!sym &&
          sup_norm(lattice_reduce(B, Vec(S.abel(x) + S.abel(y)))) < ptol)
        sym = true;
      if (sym) out.unique = false;
    }
  return out;
}

JipResult secondary_invert(const ThetaContext& ctx, const Surface& S, const Divisor& d) {
  for (const SurfacePoint& p : d.pts)
    if (p.at_inf && p.sheet == 0)
      throw std::invalid_argument("divisor contains the sheet-0 point at infinity");
  Vec rhs = S.abel_divisor(d) + S.abel(SurfacePoint::infinity(1)) -
            S.abel(SurfacePoint::infinity(0));
  return jacobi_invert(ctx, S, rhs);
}

}  // namespace padelab
