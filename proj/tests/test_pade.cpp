#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <padelab/cuts.hpp>
#include <padelab/germ.hpp>
#include <padelab/pade.hpp>
#include <padelab/quadrature.hpp>
#include <padelab/route.hpp>

using namespace padelab;

namespace {
struct PrecInit {
  PrecInit() { Precision::set_digits(77); }
} prec_init;

Real tol(const char* s) { return Real(s); }

Complex I() { return Complex(Real(0), Real(1)); }

CutSystem seg_cut() { return CutSystem({Cut{Complex(Real(-1)), Complex(Real(1))}}); }

CutSystem cross_cuts() {
  return CutSystem({Cut{Complex(Real(1)), Complex(Real(-1))}, Cut{I(), -I()}});
}

Router cut_router(const CutSystem& cs) {
  std::vector<std::vector<Complex>> obs;
  for (const auto& c : cs.cuts()) obs.push_back({c.a, c.b});
  return Router(obs);
}

// (z^2-1)^{-1/2}/2, the transform of the constant density on [-1,1].
GermFn half_weight() {
  return FunctionElement::constant(Complex(Real(1) / Real(2))) *
         FunctionElement::algebraic_power(Poly({Complex(Real(-1)), Complex(Real(0)), Complex(Real(1))}),
                                          -1, 2);
}

// (z^4-1)^{-1/2}, branch ~ z^{-2} at infinity.
GermFn quartic_weight() {
  return GermFn(FunctionElement::algebraic_power(
      Poly({Complex(Real(-1)), Complex(Real(0)), Complex(Real(0)), Complex(Real(0)),
            Complex(Real(1))}),
      -1, 2));
}

Poly cheb_monic(int n) {
  Poly t0 = Poly::constant(Complex(Real(1)));
  if (n == 0) return t0;
  Poly z = Poly::identity(), t1 = z;
  for (int k = 2; k <= n; ++k) {
    Poly t2 = (z * t1).scaled(Complex(Real(2))) - t0;
    t0 = t1;
    t1 = t2;
  }
  return t1.scaled(Complex(pow2(1 - n)));
}

Real coeff_dist(const Poly& a, const Poly& b) {
  const std::size_t n = std::max(a.c.size(), b.c.size());
  Real d(0);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex ca = i < a.c.size() ? a.c[i] : Complex(Real(0));
    const Complex cb = i < b.c.size() ? b.c[i] : Complex(Real(0));
    d = std::max(d, Real(abs(ca - cb)));
  }
  return d;
}

Complex cpow_int(const Complex& z, int k) {
  Complex r(Real(1), Real(0));
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

// Sup over orders 0..m-1 of the Taylor coefficients of q f - p at v, relative
// to the size of q f there.  An independent check of the interpolation
// conditions: everything is recomputed from the germ, nothing reuses the
// solver's own rows.
Real contract_residual(const PadeResult& r, const GermFn& f, const Router& router,
                       const Complex& v, int m) {
  const std::vector<Complex> tf = germ_taylor(f, router, v, m);
  const std::vector<Complex> tq = r.q.taylor_at(v, m - 1);
  const std::vector<Complex> tp = r.p.taylor_at(v, m - 1);
  Real worst(0), scale(1);
  for (int i = 0; i < m; ++i) {
    Complex acc(Real(0), Real(0));
    for (int l = 0; l <= i; ++l) acc += tq[static_cast<std::size_t>(l)] * tf[static_cast<std::size_t>(i - l)];
    scale = std::max(scale, Real(abs(acc)));
    worst = std::max(worst, Real(abs(acc - tp[static_cast<std::size_t>(i)])));
  }
  return worst / scale;
}
}  // namespace

TEST_CASE("schemes: named generators and interlacing") {
  // All nodes at infinity.
  SchemeRow r3 = build_scheme(SchemeKind::ClassicalInf, 3);
  CHECK(r3.finite.empty());
  CHECK(r3.n_inf == 6);
  CHECK(r3.size() == 6);

  // Four corners of the square, one pass each at 2n = 4.
  SchemeRow c2 = build_scheme(SchemeKind::FourCorner, 2);
  CHECK(c2.n_inf == 0);
  REQUIRE(c2.finite.size() == 4);
  const Complex want[4] = {Complex(Real(1), Real(1)), Complex(Real(-1), Real(1)),
                           Complex(Real(-1), Real(-1)), Complex(Real(1), Real(-1))};
  for (int i = 0; i < 4; ++i) {
    CHECK(abs(c2.finite[static_cast<std::size_t>(i)].first - want[i]) < tol("1e-70"));
    CHECK(c2.finite[static_cast<std::size_t>(i)].second == 1);
  }

  // Odd rows append two nodes at infinity to the previous even row.
  SchemeRow c3 = build_scheme(SchemeKind::FourCorner, 3);
  CHECK(c3.n_inf == 2);
  REQUIRE(c3.finite.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(abs(c3.finite[static_cast<std::size_t>(i)].first -
              c2.finite[static_cast<std::size_t>(i)].first) < tol("1e-70"));
    CHECK(c3.finite[static_cast<std::size_t>(i)].second == 1);
  }
  SchemeRow c1 = build_scheme(SchemeKind::FourCorner, 1);
  CHECK(c1.finite.empty());
  CHECK(c1.n_inf == 2);

  // Shifted corners keep the quarter offsets.
  SchemeRow s2 = build_scheme(SchemeKind::ShiftedCorner, 2);
  const Real q = Real(1) / Real(4);
  const Complex swant[4] = {Complex(q, Real(1)), Complex(Real(-1), q), Complex(-q, Real(-1)),
                            Complex(Real(1), -q)};
  REQUIRE(s2.finite.size() == 4);
  for (int i = 0; i < 4; ++i)
    CHECK(abs(s2.finite[static_cast<std::size_t>(i)].first - swant[i]) < tol("1e-70"));

  // Two opposite corners, multiplicity n each.
  SchemeRow t5 = build_scheme(SchemeKind::TwoCorner, 5);
  REQUIRE(t5.finite.size() == 2);
  CHECK(t5.finite[0].second == 5);
  CHECK(t5.finite[1].second == 5);
  CHECK(abs(t5.finite[0].first - Complex(Real(1), Real(1))) < tol("1e-70"));
  CHECK(abs(t5.finite[1].first + Complex(Real(1), Real(1))) < tol("1e-70"));

  // Every generator fills its row: |V_2n| = 2n.
  for (int n = 1; n <= 9; ++n) {
    CHECK(build_scheme(SchemeKind::ClassicalInf, n).size() == 2 * n);
    CHECK(build_scheme(SchemeKind::FourCorner, n).size() == 2 * n);
    CHECK(build_scheme(SchemeKind::ShiftedCorner, n).size() == 2 * n);
    CHECK(build_scheme(SchemeKind::TwoCorner, n).size() == 2 * n);
  }

  // Kinds without a generation rule are rejected.
  CHECK_THROWS_AS(build_scheme(SchemeKind::Explicit, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_scheme(SchemeKind::Synthesized, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_scheme(SchemeKind::FourCorner, 0), std::invalid_argument);

  // Explicit rows merge repeats and feed through Scheme::row.
  SchemeRow ex = explicit_row({Complex(Real(2)), Complex(Real(2)), Complex(Real(0), Real(3))}, 1);
  CHECK(ex.size() == 4);
  REQUIRE(ex.finite.size() == 2);
  CHECK(ex.finite[0].second == 2);
  Scheme sch;
  sch.kind = SchemeKind::Explicit;
  sch.rows = {ex};
  CHECK(sch.row(1).size() == 4);
  Poly v = ex.node_poly();
  CHECK(v.degree() == 3);
  CHECK(abs(v.c.back() - Complex(Real(1))) < tol("1e-70"));
  CHECK(abs(v.eval(Complex(Real(2)))) < tol("1e-70"));
}

TEST_CASE("pade: rational inputs are reproduced exactly") {
  // f = 1/z: n = 1 gives q = z, p = 1 and a vanishing error.
  GermFn inv_z(FunctionElement::algebraic_power(Poly::identity(), -1, 1));
  Router rz({{Complex(Real(0), Real(-3)) / Real(10), Complex(Real(0), Real(3)) / Real(10)}});
  PadeResult r = compute_pade(inv_z, rz, build_scheme(SchemeKind::ClassicalInf, 1), 1);
  CHECK(coeff_dist(r.q, Poly::identity()) < tol("1e-70"));
  CHECK(coeff_dist(r.p, Poly::constant(Complex(Real(1)))) < tol("1e-70"));
  CHECK(!r.singular);
  CHECK(r.rank == 3);
  REQUIRE(r.poles.size() == 1);
  CHECK(abs(r.poles[0].z) < tol("1e-70"));
  CHECK(r.poles[0].multiplicity == 1);
  CHECK(abs(r.poles[0].residue - Complex(Real(1))) < tol("1e-60"));
  // The error is identically zero, so no Laurent coefficient survives the
  // probe window.
  CHECK(r.decay_order == r.n + 2);
  CHECK(abs(linearized_error(r, inv_z, rz, Complex(Real(3), Real(1)))) < tol("1e-70"));

  // f = 1/(z-2) at n = 2 is degenerate: the solution manifold has dimension
  // two, and the minimal monic representative is still q = z - 2, p = 1.
  GermFn shifted(FunctionElement::algebraic_power(Poly({Complex(Real(-2)), Complex(Real(1))}), -1, 1));
  Router rs({{Complex(Real(2), Real(-1)) , Complex(Real(2), Real(1))}});
  PadeResult d = compute_pade(shifted, rs, build_scheme(SchemeKind::ClassicalInf, 2), 2);
  CHECK(d.singular);
  CHECK(d.rank == 4);
  CHECK(d.q.degree() == 1);
  CHECK(coeff_dist(d.q, Poly({Complex(Real(-2)), Complex(Real(1))})) < tol("1e-65"));
  CHECK(coeff_dist(d.p, Poly::constant(Complex(Real(1)))) < tol("1e-65"));
  CHECK(d.decay_order == d.n + 2);
}

TEST_CASE("pade: classical denominators are monic Chebyshev") {
  GermFn f = half_weight();
  Router router = cut_router(seg_cut());

  // Branch sanity: the germ matches 1/(2 sqrt(z^2-1)) with positive values
  // on the right real axis.
  const Complex f2 = germ_value(f, router, Complex(Real(2)));
  CHECK(abs(f2 - Complex(Real(1)) / (Real(2) * std::sqrt(Complex(Real(3))))) < tol("1e-70"));

  // n = 2 in closed form.
  PadeResult r2 = compute_pade(f, router, build_scheme(SchemeKind::ClassicalInf, 2), 2);
  CHECK(coeff_dist(r2.q, Poly({Complex(Real(-1) / Real(2)), Complex(Real(0)), Complex(Real(1))})) <
        tol("1e-40"));

  for (int n = 1; n <= 12; ++n) {
    PadeResult r = compute_pade(f, router, build_scheme(SchemeKind::ClassicalInf, n), n);
    CHECK(r.q.degree() == n);
    CHECK(!r.singular);
    CHECK(r.rank == 2 * n + 1);
    CHECK(coeff_dist(r.q, cheb_monic(n)) < tol("1e-30"));
    CHECK(r.max_node_residual < tol("1e-50"));
  }

  // All poles of the n = 8 approximant sit on the segment.
  PadeResult r8 = compute_pade(f, router, build_scheme(SchemeKind::ClassicalInf, 8), 8);
  PoleReport rep = pole_report(r8, seg_cut().cuts(), Real(1) / Real(20));
  CHECK(rep.beyond == 0);
  CHECK(rep.hausdorff < tol("1e-3"));
  int total = 0;
  for (const auto& pi : r8.poles) total += pi.multiplicity;
  CHECK(total == 8);
}

TEST_CASE("pade: error decays geometrically in the degree") {
  GermFn f = half_weight();
  Router router = cut_router(seg_cut());
  const Complex z10(Real(10), Real(0));

  Real prev(0);
  for (int n = 2; n <= 12; ++n) {
    PadeResult r = compute_pade(f, router, build_scheme(SchemeKind::ClassicalInf, n), n);
    const Real err = abs(linearized_error(r, f, router, z10));
    CHECK(err > Real(0));
    // the step ratio converges to 1/(2*phi(10)) with phi(10) = 10 + sqrt(99),
    // about 1/39.9
    if (n > 2) CHECK(err < prev / Real(30));
    prev = err;
    // Exact order of contact at infinity: the first surviving Laurent
    // coefficient of the error is the (n+1)-st.
    if (n <= 6) CHECK(r.decay_order == n + 1);
  }
}

TEST_CASE("pade: density transform input gives the same denominators") {
  CutSystem cs = seg_cut();
  GermFn f_rho(CauchyTransform(cs, FunctionElement::constant(Complex(Real(1)))));
  Router router = cut_router(cs);
  PadeOptions opt;
  opt.diagnostics = false;  // keep the transform quadrature count modest
  PadeResult r = compute_pade(f_rho, router, build_scheme(SchemeKind::ClassicalInf, 4), 4, opt);
  CHECK(coeff_dist(r.q, cheb_monic(4)) < tol("1e-25"));
}

TEST_CASE("pade: denominators are orthogonal on the cut") {
  // Classical rows: q_5 kills t^j against the equilibrium weight, j < 5.
  GermFn f = half_weight();
  CutSystem cs = seg_cut();
  Router router = cut_router(cs);
  PadeResult r = compute_pade(f, router, build_scheme(SchemeKind::ClassicalInf, 5), 5);
  for (int j = 0; j <= 5; ++j) {
    Integrand g = [&](const Complex& t) {
      return r.q.eval(t) * cpow_int(t, j) / cs.w_plus(0, t);
    };
    QuadResult qr = quad_segment(g, Segment::line(cs.cuts()[0].a, cs.cuts()[0].b, true, true));
    REQUIRE(qr.ok());
    if (j < 5)
      CHECK(abs(qr.value) < tol("1e-30"));
    else
      CHECK(abs(qr.value) > tol("1e-4"));
  }

  // Corner rows: the weight picks up the node polynomial, and the moments
  // sum to zero across both cuts of the cross.
  GermFn f4 = quartic_weight();
  CutSystem cx = cross_cuts();
  Router rx = cut_router(cx);
  // The germ is the reciprocal of the cross weight on its reference sheet.
  CHECK(abs(germ_value(f4, rx, Complex(Real(2))) * cx.w0(Complex(Real(2))) - Complex(Real(1))) <
        tol("1e-70"));
  const int n4 = 4;
  SchemeRow row = build_scheme(SchemeKind::TwoCorner, n4);
  PadeResult rc = compute_pade(f4, rx, row, n4);
  const Poly v = row.node_poly();
  for (int j = 0; j < n4; ++j) {
    Complex total(Real(0), Real(0));
    for (std::size_t k = 0; k < cx.cuts().size(); ++k) {
      Integrand g = [&](const Complex& t) {
        return rc.q.eval(t) * cpow_int(t, j) / (v.eval(t) * cx.w_plus(k, t));
      };
      QuadResult qr = quad_segment(g, Segment::line(cx.cuts()[k].a, cx.cuts()[k].b, true, true));
      REQUIRE(qr.ok());
      total += qr.value;
    }
    CHECK(abs(total) < tol("1e-28"));
  }
}

TEST_CASE("pade: corner rows meet the interpolation contract") {
  GermFn f = quartic_weight();
  Router router = cut_router(cross_cuts());

  // Pure corner row at 2n = 12: multiplicity 3 at each corner.
  const int n = 6;
  SchemeRow row = build_scheme(SchemeKind::FourCorner, n);
  PadeResult r = compute_pade(f, router, row, n);
  CHECK(r.q.degree() == n);
  CHECK(!r.singular);
  CHECK(r.max_node_residual < tol("1e-50"));
  CHECK(r.decay_order >= n + 1);
  for (const auto& [v, m] : row.finite) {
    CHECK(contract_residual(r, f, router, v, m) < tol("1e-38"));
    // Value-level contract at the node.
    const Complex fv = germ_value(f, router, v);
    const Complex qf = r.q.eval(v) * fv;
    CHECK(abs(qf - r.p.eval(v)) < tol("1e-38") * (Real(1) + abs(qf)));
  }

  // Mixed row: four corners plus two nodes at infinity.
  const int nm = 3;
  SchemeRow mixed = build_scheme(SchemeKind::FourCorner, nm);
  PadeResult rm = compute_pade(f, router, mixed, nm);
  CHECK(rm.decay_order >= nm + 1);
  for (const auto& [v, m] : mixed.finite)
    CHECK(contract_residual(rm, f, router, v, m) < tol("1e-38"));

  // Repeated nodes force derivative conditions.
  const int nt = 2;
  SchemeRow two = build_scheme(SchemeKind::TwoCorner, nt);
  PadeResult rt = compute_pade(f, router, two, nt);
  for (const auto& [v, m] : two.finite) {
    CHECK(m == 2);
    CHECK(contract_residual(rt, f, router, v, m) < tol("1e-38"));
  }

  // Scattered explicit nodes without any symmetry.
  GermFn fh = half_weight();
  Router rh = cut_router(seg_cut());
  SchemeRow ex = explicit_row({Complex(Real(2), Real(1)), Complex(Real(-3), Real(14)) / Real(10) * I() + Complex(Real(-15)) / Real(10),
                               Complex(Real(3), Real(-20)) / Real(10), Complex(Real(25), Real(-4)) / Real(10),
                               Complex(Real(-2), Real(-12)) / Real(10), Complex(Real(11), Real(19)) / Real(10)});
  REQUIRE(ex.size() == 6);
  PadeResult re = compute_pade(fh, rh, ex, 3);
  CHECK(re.q.degree() == 3);
  CHECK(re.decay_order >= 4);
  for (const auto& [v, m] : ex.finite)
    CHECK(contract_residual(re, fh, rh, v, m) < tol("1e-38"));
}

TEST_CASE("pade: pole report distances") {
  PadeResult r;
  r.poles = {{Complex(Real(2), Real(2)), 1, Complex(Real(0))},
             {Complex(Real(1) / Real(2), Real(0)), 2, Complex(Real(0))}};
  PoleReport rep = pole_report(r, seg_cut().cuts(), Real(1));
  REQUIRE(rep.dist.size() == 2);
  const Real want = sqrt(Real(5));  // |2+2i - 1|
  CHECK(abs(rep.dist[0] - want) < tol("1e-70"));
  CHECK(rep.dist[1] < tol("1e-70"));
  CHECK(rep.beyond == 1);
  CHECK(abs(rep.hausdorff - want) < tol("1e-70"));

  PoleReport rep2 = pole_report(r, seg_cut().cuts(), Real(3));
  CHECK(rep2.beyond == 0);
}

TEST_CASE("pade: invalid inputs are rejected") {
  Router rh = cut_router(seg_cut());

  // Input must have a Laurent expansion at infinity.
  GermFn growing(FunctionElement::algebraic_power(
      Poly({Complex(Real(-1)), Complex(Real(0)), Complex(Real(1))}), 1, 2));
  CHECK_THROWS_AS(
      compute_pade(growing, rh, build_scheme(SchemeKind::ClassicalInf, 2), 2),
      std::invalid_argument);

  // Node sitting on a branch point of the input.
  GermFn fh = half_weight();
  CHECK_THROWS_AS(compute_pade(fh, rh, explicit_row({Complex(Real(1)), Complex(Real(3))}), 1),
                  std::invalid_argument);

  // Node on the support of a density transform.
  CutSystem cs = seg_cut();
  GermFn f_rho(CauchyTransform(cs, FunctionElement::constant(Complex(Real(1)))));
  CHECK_THROWS_AS(
      compute_pade(f_rho, rh, explicit_row({Complex(Real(3) / Real(10)), Complex(Real(3))}), 1),
      std::invalid_argument);

  // Row size must match the order.
  CHECK_THROWS_AS(compute_pade(fh, rh, build_scheme(SchemeKind::FourCorner, 2), 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(compute_pade(fh, rh, build_scheme(SchemeKind::ClassicalInf, 1), 0),
                  std::invalid_argument);
}
