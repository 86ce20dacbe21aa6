#include "padelab/pade.hpp"

#include <algorithm>

#include "padelab/linalg.hpp"
#include "padelab/series.hpp"

namespace padelab {

namespace {

const Complex kOne(Real(1), Real(0));

std::vector<Complex> corner_nodes(SchemeKind kind) {
  const Real q = Real(1) / 4;
  switch (kind) {
    case SchemeKind::FourCorner:
      return {Complex(Real(1), Real(1)), Complex(Real(-1), Real(1)), Complex(Real(-1), Real(-1)),
              Complex(Real(1), Real(-1))};
    case SchemeKind::ShiftedCorner:
      return {Complex(q, Real(1)), Complex(Real(-1), q), Complex(-q, Real(-1)),
              Complex(Real(1), -q)};
    case SchemeKind::TwoCorner:
      return {Complex(Real(1), Real(1)), Complex(Real(-1), Real(-1))};
    default:
      return {};
  }
}

}  // namespace

Poly SchemeRow::node_poly() const {
  Poly v = Poly::constant(kOne);
  for (const auto& [z, m] : finite)
    for (int i = 0; i < m; ++i) v = v * Poly({-z, kOne});
  return v;
}

SchemeRow build_scheme(SchemeKind kind, int n) {
  if (n < 1) throw std::invalid_argument("build_scheme: n must be positive");
  SchemeRow row;
  switch (kind) {
    case SchemeKind::ClassicalInf:
      row.n_inf = 2 * n;
      return row;
    case SchemeKind::FourCorner:
    case SchemeKind::ShiftedCorner: {
      // sizes 4k carry each corner k times; sizes 4k+2 add a double infinity
      const int k = n / 2;
      if (n % 2 == 1) row.n_inf = 2;
      if (k > 0)
        for (const Complex& z : corner_nodes(kind)) row.finite.emplace_back(z, k);
      return row;
    }
    case SchemeKind::TwoCorner:
      for (const Complex& z : corner_nodes(kind)) row.finite.emplace_back(z, n);
      return row;
    default:
      throw std::invalid_argument("build_scheme: kind carries no generation rule");
  }
}

SchemeRow explicit_row(const std::vector<Complex>& nodes, int n_inf) {
  SchemeRow row;
  row.n_inf = n_inf;
  for (const Complex& z : nodes) {
    bool merged = false;
    for (auto& [v, m] : row.finite)
      if (v == z) {
        ++m;
        merged = true;
        break;
      }
    if (!merged) row.finite.emplace_back(z, 1);
  }
  return row;
}

namespace {

std::vector<Complex> singular_support(const GermFn& f) {
  if (std::holds_alternative<FunctionElement>(f))
    return std::get<FunctionElement>(f).branch_zeros();
  return std::get<CauchyTransform>(f).cuts().branch_points();
}

Real node_clearance(const GermFn& f, const Complex& v) {
  if (std::holds_alternative<CauchyTransform>(f))
    return std::get<CauchyTransform>(f).cuts().dist(v);
  Real d(-1);
  for (const Complex& e : std::get<FunctionElement>(f).branch_zeros()) {
    Real s = abs(v - e);
    if (d < 0 || s < d) d = s;
  }
  return d;  // negative when f has no finite singular points
}

Real sup_entry(const Vec& x) {
  Real s(0);
  for (Eigen::Index i = 0; i < x.size(); ++i) s = std::max(s, Real(abs(x(i))));
  return s;
}

// f as a power series in eta = r/(z - mu), the reciprocal of the scaled
// chart, truncated to `len` terms.
Series eta_series(const LaurentAtInf& L, const Complex& mu, const Real& r, std::size_t len) {
  Series u(len, Complex(Real(0)));  // 1/z = (eta/r) * sum (-mu/r)^i eta^i
  Complex pw = kOne / r;
  for (std::size_t i = 1; i < len; ++i) {
    u[i] = pw;
    pw *= -mu / r;
  }
  Series s(len, Complex(Real(0)));
  if (!L.c.empty()) {
    s[0] = L.c.back();
    for (std::size_t t = L.c.size() - 1; t-- > 0;) {
      s = ser_mul(s, u, len);
      s[0] += L.c[t];
    }
  }
  for (long k = 0; k < L.ord; ++k) s = ser_mul(s, u, len);
  return s;
}

}  // namespace

PadeResult compute_pade(const GermFn& f, const Router& router, const SchemeRow& row, int n,
                        const PadeOptions& opt) {
  if (n < 1) throw std::invalid_argument("compute_pade: n must be positive");
  if (row.size() != 2 * n) throw std::invalid_argument("compute_pade: row size must be 2n");
  if (std::holds_alternative<FunctionElement>(f) &&
      !std::get<FunctionElement>(f).analytic_at_inf())
    throw std::invalid_argument("compute_pade: f must be analytic at infinity");

  // centered-scaled monomial basis; anchored to the singular set of f when
  // it has one, to the nodes otherwise
  std::vector<Complex> anchors = singular_support(f);
  if (anchors.empty())
    for (const auto& [v, m] : row.finite) anchors.push_back(v);
  Complex mu(Real(0), Real(0));
  for (const Complex& a : anchors) mu += a;
  if (!anchors.empty()) mu /= Real(static_cast<int>(anchors.size()));
  Real r(0);
  for (const Complex& a : anchors) r = std::max(r, Real(abs(a - mu)));
  if (r < Real("1e-30")) r = Real(1);

  for (const auto& [v, m] : row.finite) {
    Real cl = node_clearance(f, v);
    if (cl >= 0 && cl < Real("1e-25") * (r + abs(v - mu)))
      throw std::invalid_argument("compute_pade: interpolation node on a singularity of f");
  }

  const int ninf = row.n_inf;
  const std::size_t lin = static_cast<std::size_t>(ninf) + 1;
  Series F_inf = eta_series(germ_laurent_inf(f, ninf + 1), mu, r, lin);

  const int rows = 2 * n + 1, cols = 2 * n + 2;
  Mat M = Mat::Zero(rows, cols);
  int ri = 0;

  // binomial table C(k, l), k,l <= n
  std::vector<std::vector<Real>> bin(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    bin[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(k) + 1, Real(1));
    for (int l = 1; l < k; ++l)
      bin[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] =
          bin[static_cast<std::size_t>(k) - 1][static_cast<std::size_t>(l) - 1] +
          bin[static_cast<std::size_t>(k) - 1][static_cast<std::size_t>(l)];
  }

  // interpolation rows: Taylor coefficients of (q f - p) vanish at each node
  // through its multiplicity, written in the local variable (z - v)/r
  for (const auto& [v, m] : row.finite) {
    std::vector<Complex> tay = germ_taylor(f, router, v, m);
    std::vector<Complex> F(static_cast<std::size_t>(m));
    Real rp(1);
    for (int i = 0; i < m; ++i) {
      F[static_cast<std::size_t>(i)] = tay[static_cast<std::size_t>(i)] * rp;
      rp *= r;
    }
    const Complex c = (v - mu) / r;
    std::vector<Complex> cpow(static_cast<std::size_t>(n) + 1, kOne);
    for (int k = 1; k <= n; ++k)
      cpow[static_cast<std::size_t>(k)] = cpow[static_cast<std::size_t>(k) - 1] * c;
    for (int j = 0; j < m; ++j, ++ri) {
      for (int k = 0; k <= n; ++k) {
        Complex acc(Real(0), Real(0));
        for (int l = 0; l <= std::min(j, k); ++l)
          acc += bin[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] *
                 cpow[static_cast<std::size_t>(k - l)] * F[static_cast<std::size_t>(j - l)];
        M(ri, k) = acc;
        if (k >= j)
          M(ri, n + 1 + k) = -bin[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] *
                             cpow[static_cast<std::size_t>(k - j)];
      }
    }
  }

  // order rows at infinity: coefficients of the scaled chart's powers
  // eta^{-j}, j = n - n_inf .. n, of (q f - p) vanish
  for (int j = n - ninf; j <= n; ++j, ++ri) {
    for (int k = 0; k <= n; ++k) {
      const int idx = k - j;
      if (idx >= 0 && idx <= ninf) M(ri, k) = F_inf[static_cast<std::size_t>(idx)];
    }
    if (j >= 0) M(ri, n + 1 + j) = Complex(Real(-1), Real(0));
  }

  for (int i = 0; i < rows; ++i) {
    Real s = sup_entry(Vec(M.row(i).transpose()));
    if (s > 0) M.row(i) /= s;
  }

  Eigen::FullPivLU<Mat> lu(M);
  lu.setThreshold(opt.rank_tol);
  Mat K = lu.kernel();

  PadeResult out;
  out.n = n;
  out.v = row.node_poly();
  out.rank = static_cast<int>(lu.rank());
  out.singular = K.cols() > 1;

  // minimal-degree representative: column-eliminate the q-part from the top
  // degree down; the last pivot found has the smallest top index
  std::vector<Eigen::Index> alive;
  for (Eigen::Index c = 0; c < K.cols(); ++c) alive.push_back(c);
  Eigen::Index chosen = -1;
  int top = -1;
  for (int i = n; i >= 0 && !alive.empty(); --i) {
    for (Eigen::Index c : alive) {
      Real s(0);
      for (int k = 0; k <= n; ++k) s = std::max(s, Real(abs(K(k, c))));
      if (s > Real("1e-40") * sup_entry(Vec(K.col(c)))) K.col(c) /= s;
    }
    Eigen::Index best = -1;
    Real val(0);
    for (Eigen::Index c : alive)
      if (abs(K(i, c)) > val) {
        val = abs(K(i, c));
        best = c;
      }
    if (best < 0 || val <= opt.trunc_tol) continue;
    for (Eigen::Index c : alive)
      if (c != best) K.col(c) -= (K(i, c) / K(i, best)) * K.col(best);
    alive.erase(std::find(alive.begin(), alive.end(), best));
    chosen = best;
    top = i;
  }
  if (chosen < 0) throw std::runtime_error("compute_pade: no usable kernel vector");

  Real rtop(1);
  for (int k = 0; k < top; ++k) rtop *= r;
  Vec x = Vec(K.col(chosen) * (rtop / K(top, chosen)));

  std::vector<Complex> qa(static_cast<std::size_t>(top) + 1),
      pb(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= top; ++k) qa[static_cast<std::size_t>(k)] = x(k);
  for (int k = 0; k <= n; ++k) pb[static_cast<std::size_t>(k)] = x(n + 1 + k);
  const Complex shift = -mu / r, stretch = kOne / r;
  out.q = Poly(std::move(qa)).compose_affine(shift, stretch);
  out.p = Poly(std::move(pb)).compose_affine(shift, stretch);

  // interpolation residual straight off the normalized rows
  Vec resv = M * x;
  Real xs = sup_entry(x);
  Real worst(0);
  for (int i = 0; i < rows - (ninf + 1); ++i) worst = std::max(worst, Real(abs(resv(i))));
  out.max_node_residual = xs > 0 ? worst / xs : worst;

  // poles and residues
  RootResult rr = poly_roots(out.q);
  for (const RootCluster& rc : rr.roots) {
    PoleInfo pi;
    pi.z = rc.z;
    pi.multiplicity = rc.multiplicity;
    if (rc.multiplicity == 1) {
      Complex dq = out.q.derivative().eval(rc.z);
      pi.residue = out.p.eval(rc.z) / dq;
    } else {
      Real rad = r;
      for (const RootCluster& other : rr.roots)
        if (&other != &rc) rad = std::min(rad, Real(abs(other.z - rc.z) / 3));
      const int N = 64 + 16 * rc.multiplicity;
      Complex acc(Real(0), Real(0));
      const Real tau = 2 * const_pi();
      for (int s = 0; s < N; ++s) {
        Real th = tau * Real(s) / N;
        Complex w = rad * Complex(cos(th), sin(th));
        Complex z = rc.z + w;
        acc += out.p.eval(z) / out.q.eval(z) * w;
      }
      pi.residue = acc / Real(N);
    }
    out.poles.push_back(pi);
  }

  if (opt.diagnostics) {
    // probe the error's Laurent tail at infinity on a circle holding
    // everything (nodes, branch points, poles) well inside
    Real a = r;
    for (const Complex& e : anchors) a = std::max(a, Real(abs(e - mu)));
    for (const auto& [v, m] : row.finite) a = std::max(a, Real(abs(v - mu)));
    for (const PoleInfo& pi : out.poles) a = std::max(a, Real(abs(pi.z - mu)));
    const Real rc = 2 * a;
    const int N = n + 150;
    const Real tau = 2 * const_pi();
    std::vector<Complex> h(static_cast<std::size_t>(N));
    Real hs(0), cancel(0);  // error size on the circle / size of what cancelled
    for (int s = 0; s < N; ++s) {
      Real th = tau * Real(s) / N;
      Complex w = rc * Complex(cos(th), sin(th));
      Complex z = mu + w;
      const Complex qf = out.q.eval(z) * germ_value(f, router, z);
      const Complex pv = out.p.eval(z);
      const Complex vv = out.v.eval(z);
      h[static_cast<std::size_t>(s)] = (qf - pv) / vv;
      hs = std::max(hs, Real(abs(h[static_cast<std::size_t>(s)])));
      cancel = std::max(cancel, Real((abs(qf) + abs(pv)) / abs(vv)));
    }
    out.decay_order = n + 2;
    // an error at roundoff relative to the terms it subtracts is zero;
    // otherwise a Laurent term is present when it carries at least 1e-30
    // of the error's size on the circle
    if (hs > Real("1e-60") * cancel) {
      Real rcj(1);
      for (int j = 1; j <= n + 1; ++j) {
        rcj *= rc;
        Complex acc(Real(0), Real(0));
        for (int s = 0; s < N; ++s) {
          Real th = tau * Real(s) / N;
          Complex w = rc * Complex(cos(th), sin(th));
          acc += h[static_cast<std::size_t>(s)] * std::pow(w, Complex(Real(j), Real(0)));
        }
        if (abs(acc) / Real(N) > Real("1e-30") * hs * rcj) {
          out.decay_order = j;
          break;
        }
      }
    }
  }
  return out;
}

Complex linearized_error(const PadeResult& r, const GermFn& f, const Router& router,
                         const Complex& z) {
  return (r.q.eval(z) * germ_value(f, router, z) - r.p.eval(z)) / r.v.eval(z);
}

PoleReport pole_report(const PadeResult& r, const std::vector<Cut>& reference,
                       const Real& threshold) {
  PoleReport rep;
  for (const PoleInfo& pi : r.poles) {
    Real d(-1);
    for (const Cut& c : reference) {
      Real s = dist_point_segment(pi.z, c.a, c.b);
      if (d < 0 || s < d) d = s;
    }
    if (d < 0) d = Real(0);
    rep.dist.push_back(d);
    if (d > threshold) rep.beyond += pi.multiplicity;
    rep.hausdorff = std::max(rep.hausdorff, d);
  }
  return rep;
}

}  // namespace padelab
