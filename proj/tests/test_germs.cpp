#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <padelab/cuts.hpp>
#include <padelab/germ.hpp>
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
  // [1,-1] and [i,-i]; the two segments cross at the origin.
  return CutSystem({Cut{Complex(Real(1)), Complex(Real(-1))},
                    Cut{I(), -I()}});
}

Router cut_router(const CutSystem& cs) {
  std::vector<std::vector<Complex>> obs;
  for (const auto& c : cs.cuts()) obs.push_back({c.a, c.b});
  return Router(obs);
}
}  // namespace

TEST_CASE("cuts: weight closed forms") {
  CutSystem one = seg_cut();
  CHECK(std::abs(one.w0(Complex(Real(2))) - std::sqrt(Complex(Real(3)))) < tol("1e-70"));
  // Behaves like z far away.
  Complex big(Real(1000000), Real(300));
  CHECK(std::abs(one.w0(big) / big - Complex(Real(1))) < tol("1e-10"));

  CutSystem two = cross_cuts();
  CHECK(two.genus() == 1);
  CHECK(std::abs(two.w0(Complex(Real(2))) - std::sqrt(Complex(Real(15)))) < tol("1e-70"));
  // ~ z^2 at infinity.
  CHECK(std::abs(two.w0(big) / (big * big) - Complex(Real(1))) < tol("1e-9"));
}

TEST_CASE("cuts: one-sided boundary values match interior limits") {
  CutSystem one = seg_cut();
  const Complex x(Real(3) / Real(10));
  const Complex wp = one.w_plus(0, x);
  CHECK(std::abs(wp - I() * std::sqrt(Complex(Real(1) - Real(9) / Real(100)))) < tol("1e-70"));
  // Approach from the left-of-orientation side.
  const Complex above = one.w0(x + I() * tol("1e-30"));
  CHECK(std::abs(above - wp) < tol("1e-25"));
  const Complex below = one.w0(x - I() * tol("1e-30"));
  CHECK(std::abs(below + wp) < tol("1e-25"));
  CHECK(one.side_of(0, x + I()) == 1);
  CHECK(one.side_of(0, x - I()) == -1);

  // Same consistency on the vertical cut of the crossing pair.
  CutSystem two = cross_cuts();
  const Complex y = Complex(Real(0), Real(2) / Real(5));
  const Complex wp1 = two.w_plus(1, y);
  // cut 1 runs i -> -i; travelling south, the left hand points east.
  CHECK(two.side_of(1, Complex(Real(1), Real(0))) == 1);
  const Complex lim = two.w0(y + Complex(tol("1e-30"), Real(0)));
  CHECK(std::abs(wp1 - lim) < tol("1e-25"));
}

TEST_CASE("cuts: crossing predicate") {
  CutSystem two = cross_cuts();
  CHECK(two.crosses(Complex(Real(-2)), Complex(Real(2))));             // through the vertical cut
  CHECK(two.crosses(Complex(Real(0), Real(-2)), Complex(Real(0), Real(2))));
  CHECK_FALSE(two.crosses(Complex(Real(-2)), Complex(Real(-2), Real(2))));
  CHECK_FALSE(two.crosses(Complex(Real(2)), Complex(Real(2), Real(2))));
  // Touching an endpoint is not a crossing.
  CHECK_FALSE(two.crosses(Complex(Real(1)), Complex(Real(2), Real(1))));
}

TEST_CASE("route: detours around obstacles and stays legal") {
  CutSystem two = cross_cuts();
  Router r = cut_router(two);
  Path p = r.route(Complex(Real(-2)), Complex(Real(2)));
  REQUIRE(!p.segs.empty());
  CHECK(std::abs(p.start() - Complex(Real(-2))) < tol("1e-60"));
  CHECK(std::abs(p.end() - Complex(Real(2))) < tol("1e-60"));
  for (const auto& s : p.segs) {
    CHECK_FALSE(r.blocked(s.a, s.b));
    CHECK(s.kind == Segment::Kind::Line);
  }
  for (std::size_t i = 0; i + 1 < p.segs.size(); ++i)
    CHECK(std::abs(p.segs[i].b - p.segs[i + 1].a) < tol("1e-60"));

  // Starting on a branch point works (lift-off helper).
  Path q = r.route(I(), Complex(Real(-2)));
  REQUIRE(!q.segs.empty());
  CHECK(std::abs(q.start() - I()) < tol("1e-60"));

  // A target hugging a cut is approached from its own side.
  const Complex target = Complex(Real(3) / Real(10), tol("1e-8"));
  Path t = r.route(Complex(Real(2), Real(2)), target);
  REQUIRE(!t.segs.empty());
  const Complex approach = t.segs.back().a;
  CHECK(approach.imag() > Real(0));
}

TEST_CASE("route: ray exit reaches infinity") {
  CutSystem one = seg_cut();
  Router r = cut_router(one);
  Path p = r.route_to_inf(Complex(Real(0), Real(2)), Complex(Real(0), Real(1)));
  REQUIRE(!p.segs.empty());
  CHECK(p.segs.back().kind == Segment::Kind::RayToInf);
}

TEST_CASE("element: square-root branch agrees with the cut weight") {
  auto fe = FunctionElement::algebraic_power(Poly({Complex(Real(-1)), Complex(Real(0)), Complex(Real(1))}), -1, 2);
  CutSystem one = seg_cut();
  Router r = cut_router(one);
  for (const Complex z : {Complex(Real(2)), Complex(Real(-3), Real(1) / Real(2)),
                          Complex(Real(0), Real(1) / Real(4)),
                          Complex(Real(1) / Real(2), Real(-2))}) {
    const Complex fv = fe.value(fe.state_at(z, &r));
    CHECK(std::abs(fv - Complex(Real(1)) / one.w0(z)) < tol("1e-70"));
  }
}

TEST_CASE("element: quartic germ value and taylor consistency") {
  // (z^4 - 1)^(-1/2), branch with z^2 f(z) -> 1 at infinity.
  Poly p({Complex(Real(-1)), Complex(Real(0)), Complex(Real(0)), Complex(Real(0)), Complex(Real(1))});
  auto fe = FunctionElement::algebraic_power(p, -1, 2);
  const Complex v = fe.value(fe.state_at(std::sqrt(Complex(Real(2)))));
  CHECK(std::abs(v - Complex(Real(1)) / std::sqrt(Complex(Real(3)))) < tol("1e-70"));

  const Complex z0(Real(3) / Real(2), Real(1) / Real(2));
  BranchState st = fe.state_at(z0);
  auto ts = fe.taylor(st, 10);
  const Complex h(Real(1) / Real(100), Real(1) / Real(140));
  Complex acc(Real(0));
  Complex hp(Real(1));
  for (const auto& ck : ts) { acc += ck * hp; hp *= h; }
  const Complex direct = fe.value(fe.state_at(z0 + h));
  CHECK(std::abs(acc - direct) < tol("1e-17"));
  // Ten terms at |h| ~ 1.7e-2: truncation dominates near 1e-18.
}

TEST_CASE("element: monodromy around one zero flips the square root") {
  Poly p({Complex(Real(-1)), Complex(Real(0)), Complex(Real(0)), Complex(Real(0)), Complex(Real(1))});
  auto fe = FunctionElement::algebraic_power(p, -1, 2);
  BranchState st = fe.state_at(Complex(Real(2)));
  const Complex before = fe.value(st);
  Path loop;
  loop.push(Segment::line(Complex(Real(2)), Complex(Real(2), Real(1) / Real(2))));
  loop.push(Segment::line(Complex(Real(2), Real(1) / Real(2)), Complex(Real(1) / Real(2), Real(1) / Real(2))));
  loop.push(Segment::line(Complex(Real(1) / Real(2), Real(1) / Real(2)), Complex(Real(1) / Real(2), Real(-1) / Real(2))));
  loop.push(Segment::line(Complex(Real(1) / Real(2), Real(-1) / Real(2)), Complex(Real(2), Real(-1) / Real(2))));
  loop.push(Segment::line(Complex(Real(2), Real(-1) / Real(2)), Complex(Real(2))));
  fe.continue_along(st, loop);
  CHECK(std::abs(fe.value(st) + before) < tol("1e-70"));
  // A second pass restores the original branch.
  fe.continue_along(st, loop);
  CHECK(std::abs(fe.value(st) - before) < tol("1e-70"));
}

TEST_CASE("element: circular arc continuation closes up") {
  Poly p({Complex(Real(-1)), Complex(Real(0)), Complex(Real(1))});
  auto fe = FunctionElement::algebraic_power(p, -1, 2);
  BranchState st = fe.state_at(Complex(Real(3)));
  const Complex before = fe.value(st);
  Path circle;
  circle.push(Segment::circle(Complex(Real(0)), Real(3)));
  fe.continue_along(st, circle);
  // Both zeros enclosed: log P winds by 4 pi, the -1/2 power is unchanged.
  CHECK(std::abs(fe.value(st) - before) < tol("1e-69"));
  CHECK(abs(st.logs[0].imag() - Real(4) * const_pi()) < tol("1e-69"));
}

TEST_CASE("element: expansions at infinity") {
  Poly p({Complex(Real(-1)), Complex(Real(0)), Complex(Real(0)), Complex(Real(0)), Complex(Real(1))});
  auto fe = FunctionElement::algebraic_power(p, -1, 2);
  auto le = fe.laurent_inf(48);
  CHECK(le.ord == 2);
  CHECK(std::abs(le.c[0] - Complex(Real(1))) < tol("1e-70"));
  const Complex z(Real(10), Real(3));
  CHECK(std::abs(le.eval(z) - fe.value(fe.state_at(z))) < tol("1e-45"));
  CHECK(fe.analytic_at_inf());

  auto poly_el = FunctionElement::polynomial(Poly({Complex(Real(2)), Complex(Real(0)), Complex(Real(3))}));
  auto lp = poly_el.laurent_inf(6);
  CHECK(lp.ord == -2);
  CHECK(std::abs(lp.c[0] - Complex(Real(3))) < tol("1e-70"));
  CHECK(std::abs(lp.c[2] - Complex(Real(2))) < tol("1e-70"));
  CHECK_FALSE(poly_el.analytic_at_inf());

  auto expo = FunctionElement::exp_polynomial(Poly::identity());
  CHECK_THROWS(expo.laurent_inf(4));
  auto cube = FunctionElement::algebraic_power(
      Poly({Complex(Real(-1)), Complex(Real(0)), Complex(Real(0)), Complex(Real(1))}), -1, 2);
  CHECK_THROWS(cube.laurent_inf(4));  // odd degree under a half power
}

TEST_CASE("element: products combine factors") {
  auto fe = FunctionElement::constant(Complex(Real(2))) *
            FunctionElement::exp_polynomial(Poly::identity());
  const Complex z(Real(1) / Real(3), Real(1) / Real(5));
  BranchState st = fe.state_at(z);
  CHECK(std::abs(fe.value(st) - Real(2) * std::exp(z)) < tol("1e-70"));
  CHECK(std::abs(fe.log_value(st) - (std::log(Complex(Real(2))) + z)) < tol("1e-70"));
  auto ts = fe.taylor(st, 5);
  CHECK(std::abs(ts[1] - Real(2) * std::exp(z)) < tol("1e-70"));
}

TEST_CASE("cauchy: unit density on a segment has a closed form") {
  CutSystem one = seg_cut();
  CauchyTransform ct(one, FunctionElement::constant(Complex(Real(1))));
  const Complex v2 = ct.value(Complex(Real(2)));
  CHECK(std::abs(v2 - Complex(Real(1)) / (Real(2) * std::sqrt(Complex(Real(3))))) < tol("1e-30"));
  for (const Complex z : {Complex(Real(3) / Real(10), Real(1) / Real(2)),
                          Complex(Real(-5) / Real(2), Real(-1) / Real(3))}) {
    CHECK(std::abs(ct.value(z) - Complex(Real(1)) / (Real(2) * one.w0(z))) < tol("1e-30"));
  }
  auto le = ct.laurent_inf(5);
  CHECK(le.ord == 1);
  CHECK(std::abs(le.c[0] - Complex(Real(1) / Real(2))) < tol("1e-30"));
  CHECK(std::abs(le.c[1]) < tol("1e-30"));
  CHECK(std::abs(le.c[2] - Complex(Real(1) / Real(4))) < tol("1e-30"));
}

TEST_CASE("cauchy: boundary jump equals density over the one-sided weight") {
  CutSystem one = seg_cut();
  CauchyTransform ct(one, FunctionElement::constant(Complex(Real(1))));
  const Complex x(Real(3) / Real(10));
  auto above = one_sided_limit([&](const Complex& z) { return ct.value(z); }, x, I(),
                               tol("1e-3"), 10);
  auto below = one_sided_limit([&](const Complex& z) { return ct.value(z); }, x, -I(),
                               tol("1e-3"), 10);
  const Complex jump = above - below;
  CHECK(std::abs(jump - Complex(Real(1)) / one.w_plus(0, x)) < tol("1e-20"));
}

TEST_CASE("cauchy: exponential density cross-checks") {
  CutSystem one = seg_cut();
  CauchyTransform ct(one, FunctionElement::exp_polynomial(Poly::identity()));
  auto le = ct.laurent_inf(64);
  const Complex z(Real(10));
  CHECK(std::abs(le.eval(z) / ct.value(z) - Complex(Real(1))) < tol("1e-25"));

  auto ts = ct.taylor(Complex(Real(3)), 2);
  const Real h = tol("1e-8");
  const Complex fd = (ct.value(Complex(Real(3) + h)) - ct.value(Complex(Real(3) - h))) / (Real(2) * h);
  CHECK(std::abs(ts[1] - fd) < tol("1e-12"));
  CHECK(std::abs(ts[0] - ct.value(Complex(Real(3)))) < tol("1e-30"));
}

TEST_CASE("cauchy: variant plumbing") {
  CutSystem one = seg_cut();
  Router r = cut_router(one);
  GermFn g = CauchyTransform(one, FunctionElement::constant(Complex(Real(1))));
  CHECK(std::abs(germ_value(g, r, Complex(Real(2))) -
                 Complex(Real(1)) / (Real(2) * std::sqrt(Complex(Real(3))))) < tol("1e-30"));
  GermFn fe = FunctionElement::algebraic_power(
      Poly({Complex(Real(-1)), Complex(Real(0)), Complex(Real(1))}), -1, 2);
  CHECK(std::abs(germ_value(fe, r, Complex(Real(2))) -
                 Complex(Real(1)) / std::sqrt(Complex(Real(3)))) < tol("1e-70"));
  auto ts = germ_taylor(fe, r, Complex(Real(2)), 3);
  CHECK(ts.size() == 3);
  auto le = germ_laurent_inf(fe, 4);
  CHECK(le.ord == 1);
}

TEST_CASE("limit: extrapolated boundary values") {
  auto entire = [](const Complex& z) { return (Complex(Real(1)) + z) * std::exp(z); };
  CHECK(std::abs(one_sided_limit(entire, Complex(Real(0)), I()) - Complex(Real(1))) < tol("1e-40"));

  CutSystem one = seg_cut();
  Router r = cut_router(one);
  auto fe = FunctionElement::algebraic_power(
      Poly({Complex(Real(-1)), Complex(Real(0)), Complex(Real(1))}), -1, 2);
  const Complex x(Real(1) / Real(2));
  auto side = one_sided_limit(
      [&](const Complex& z) { return fe.value(fe.state_at(z, &r)); }, x, I());
  CHECK(std::abs(side - Complex(Real(1)) / one.w_plus(0, x)) < tol("1e-30"));
}
