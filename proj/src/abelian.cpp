#include <padelab/abelian.hpp>

#include <stdexcept>

namespace padelab {

namespace {

Complex base_density(const Surface& S, const ThirdKind& tk, const Complex& z) {
  // S.w(z, 0) keeps on-cut evaluations on the left shore; raw w0 would flip
  // branch at the cut midpoint and corrupt quadratures along the cuts
  if (tk.pole.at_inf) {
    Complex zg(Real(1), Real(0));
    for (int m = 0; m < S.genus(); ++m) zg *= z;
    const Real sgn = tk.pole.sheet == 0 ? Real(1) : Real(-1);
    return sgn * zg / S.w(z, 0);
  }
  return -tk.w_pole / ((z - tk.pole.z) * S.w(z, 0));
}

Integrand full_density(const Surface& S, const ThirdKind& tk) {
  return [&S, tk](const Complex& z) {
    Complex d = base_density(S, tk, z);
    for (int i = 0; i < S.genus(); ++i) d += tk.correction(i) * S.holo_density(i, z);
    return d;
  };
}

// Deterministic route from the base point to p that keeps clear of the pole.
Path route_avoiding_pole(const Surface& S, const ThirdKind& tk, const SurfacePoint& p) {
  const Complex e0 = S.base_point();
  if (tk.pole.at_inf) {
    if (p.at_inf) throw std::invalid_argument("abelian_integral: both points infinite");
    return S.route_from_base(p.z);
  }
  Real r = Real("0.02") * S.scale();
  r = std::min(r, Real("0.4") * std::abs(e0 - tk.pole.z));
  if (!p.at_inf) r = std::min(r, Real("0.4") * std::abs(p.z - tk.pole.z));
  if (!(r > Real(0))) throw std::invalid_argument("abelian_integral: evaluation at the pole");
  Router router = S.router_avoiding({tk.pole.z}, r);
  Path path;
  if (p.at_inf) {
    Complex dir = e0 - router.hub();
    if (!(std::abs(dir) > Real(0))) dir = Complex(Real(1), Real(0));
    path = router.route_to_inf(e0, dir);
  } else {
    if (std::abs(p.z - e0) < Real("1e-40") * S.scale()) return Path{};
    path = router.route(e0, p.z);
  }
  if (path.segs.empty()) throw std::runtime_error("abelian_integral: no route");
  path.segs.front().singular_start = true;
  if (!p.at_inf) {
    const Real tol = Real("1e-20") * S.scale();
    for (const auto& e : S.branch_points())
      if (std::abs(p.z - e) < tol) { path.segs.back().singular_end = true; break; }
  }
  return path;
}

}  // namespace

ThirdKind third_kind(const Surface& S, const SurfacePoint& v) {
  ThirdKind tk;
  tk.pole = v;
  tk.w_pole = Complex(Real(0), Real(0));
  if (!v.at_inf) {
    tk.w_pole = S.w_at(v);
    if (!(std::abs(tk.w_pole) > Real("1e-40") * S.scale()))
      throw std::invalid_argument("third_kind: pole at a branch point");
  }
  const int g = S.genus();
  tk.correction = Vec::Zero(g);
  if (g == 0) return tk;

  Integrand base = [&S, &tk](const Complex& z) { return base_density(S, tk, z); };
  Vec pa = S.alpha_periods(base);
  Vec pb = S.beta_periods(base);
  // Periods of the normalized basis are [I; B]; choose the correction so all
  // periods of base + correction . du become purely imaginary.
  const Mat& B = S.period_matrix();
  RMat M = RMat::Zero(2 * g, 2 * g);
  RVec rhs(2 * g);
  for (int i = 0; i < g; ++i) {
    M(i, i) = Real(1);
    rhs(i) = -pa(i).real();
    for (int j = 0; j < g; ++j) {
      M(g + i, j) = B(i, j).real();
      M(g + i, g + j) = -B(i, j).imag();
    }
    rhs(g + i) = -pb(i).real();
  }
  RVec x = M.fullPivLu().solve(rhs);
  for (int j = 0; j < g; ++j) tk.correction(j) = Complex(x(j), x(g + j));
  return tk;
}

Complex third_kind_density(const Surface& S, const ThirdKind& tk, const Complex& z) {
  return full_density(S, tk)(z);
}

Complex third_kind_density(const Surface& S, const ThirdKind& tk, const Complex& z, int sheet) {
  Complex h = full_density(S, tk)(z);
  return sheet == 0 ? h : Complex(-h);
}

Complex abelian_integral_along(const Surface& S, const ThirdKind& tk, const Path& planar,
                               int sheet) {
  if (planar.segs.empty()) return Complex(Real(0), Real(0));
  QuadResult q = quad_path(full_density(S, tk), planar, S.options().quad);
  if (q.flag == QuadFlag::NonFinite)
    throw std::runtime_error("abelian_integral: non-finite integrand on the path");
  return sheet == 0 ? q.value : Complex(-q.value);
}

Complex abelian_integral(const Surface& S, const ThirdKind& tk, const SurfacePoint& p) {
  return abelian_integral_along(S, tk, route_avoiding_pole(S, tk, p), p.sheet);
}

Real green(const Surface& S, const SurfacePoint& p, const SurfacePoint& v) {
  return abelian_integral(S, third_kind(S, v), p).real();
}

}  // namespace padelab
