#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <padelab/surface.hpp>

using namespace padelab;

namespace {
struct PrecInit {
  PrecInit() { Precision::set_digits(77); }
} prec_init;

Real tol(const char* s) { return Real(s); }

Complex I() { return Complex(Real(0), Real(1)); }

CutSystem seg_cut() { return CutSystem({Cut{Complex(Real(-1)), Complex(Real(1))}}); }

CutSystem cross_cuts() {
  return CutSystem({Cut{Complex(Real(1)), Complex(Real(-1))},
                    Cut{I(), -I()}});
}

CutSystem two_real() {
  return CutSystem({Cut{Complex(Real(-1)), Complex(Real(-1) / 3)},
                    Cut{Complex(Real(1) / 3), Complex(Real(1))}});
}

CutSystem three_real() {
  return CutSystem({Cut{Complex(Real(-3)), Complex(Real(-2))},
                    Cut{Complex(Real(-1)), Complex(Real(1) / 2)},
                    Cut{Complex(Real(2)), Complex(Real(3))}});
}

// Reduce u modulo the lattice Z^g + B Z^g; small residual certifies lattice
// membership (or path independence of an Abel difference).
Vec lattice_reduce(const Vec& u, const Mat& B) {
  const int g = static_cast<int>(u.size());
  RMat imB(g, g);
  RVec imU(g);
  for (int i = 0; i < g; ++i) {
    imU(i) = u(i).imag();
    for (int j = 0; j < g; ++j) imB(i, j) = B(i, j).imag();
  }
  RVec y = imB.fullPivLu().solve(imU);
  Vec m(g), r = u;
  for (int i = 0; i < g; ++i) m(i) = Complex(round(y(i)), Real(0));
  r -= B * m;
  for (int i = 0; i < g; ++i) r(i) -= round(r(i).real());
  return r;
}

Real vec_norm(const Vec& v) {
  Real s(0);
  for (int i = 0; i < v.size(); ++i) s = std::max(s, std::abs(v(i)));
  return s;
}
}  // namespace

TEST_CASE("surface: weight on sheets and shores") {
  Surface s(cross_cuts());
  CHECK(s.genus() == 1);
  // w(2) on sheet 0 is sqrt(15) for these two cuts; sheet 1 negates.
  CHECK(std::abs(s.w(Complex(Real(2)), 0) - std::sqrt(Complex(Real(15)))) < tol("1e-70"));
  CHECK(std::abs(s.w(Complex(Real(2)), 1) + std::sqrt(Complex(Real(15)))) < tol("1e-70"));
  // On a cut interior the two sheets give the two shores (opposite values).
  Complex x(Real(1) / 2, Real(0));
  CHECK(std::abs(s.w(x, 0) + s.w(x, 1)) < tol("1e-60"));
  CHECK(std::abs(s.w(x, 0)) > tol("1e-10"));
  // Sheet-0 value continues the left shore: approach from Im > 0 side of [1,-1].
  Complex up = x + I() * tol("1e-30");
  CHECK(std::abs(s.w(x, 0) - s.w(up, 0)) < tol("1e-25"));
}

TEST_CASE("surface: cut bulge equals doubled shore integral") {
  // For a tight bulge around one cut (no other cut between bulge and cut) the
  // cycle period of dz/w collapses to twice the integral of the shore values.
  for (const CutSystem& cs : {two_real(), three_real()}) {
    Surface s(cs);
    Integrand h = [&](const Complex& z) { return Complex(Real(1)) / cs.w0(z); };
    // chi_1 (index 0) is the bulge around cut 0.
    REQUIRE(s.chi(0).is_cut_bulge);
    Complex period = s.chi_period(0, h);
    const Cut& c = cs.cuts()[0];
    Segment shore = Segment::line(c.a, c.b, true, true);
    Integrand hplus = [&](const Complex& z) { return Complex(Real(1)) / s.w(z, 0); };
    QuadResult q = quad_segment(hplus, shore);
    REQUIRE(q.ok());
    Complex doubled = Real(2) * q.value;
    CHECK(abs(std::abs(period) - std::abs(doubled)) < tol("1e-30"));
    // Same value up to overall cycle orientation.
    CHECK(std::min(std::abs(period - doubled), std::abs(period + doubled)) < tol("1e-30"));
  }
}

TEST_CASE("surface: crossing cuts give the square lattice invariant") {
  // Branch points 1, -1, i, -i: the substitution z -> iz preserves the curve
  // and multiplies the holomorphic differential by i, so the Jacobian admits
  // multiplication by i and the Klein j-invariant equals 1728 -- independent
  // of which symplectic basis the homology construction happened to pick.
  Surface s(cross_cuts());
  Complex tau = s.period_matrix()(0, 0);
  REQUIRE(tau.imag() > Real(0));
  Complex q = std::exp(Complex(Real(0), 2 * const_pi()) * tau);
  Complex e4(Real(1)), e6(Real(1));
  Complex qn(Real(1));
  for (int n = 1; n <= 120; ++n) {
    qn *= q;
    Complex n2 = Complex(Real(n) * Real(n));
    Complex n3 = n2 * Real(n);
    e4 += Real(240) * n3 * qn / (Complex(Real(1)) - qn);
    e6 -= Real(504) * n3 * n2 * qn / (Complex(Real(1)) - qn);
  }
  Complex j = Real(1728) * e4 * e4 * e4 / (e4 * e4 * e4 - e6 * e6);
  CHECK(std::abs(j - Complex(Real(1728))) < tol("1e-40"));
}

TEST_CASE("surface: chain intersections normalize to +1") {
  for (const CutSystem& cs : {two_real(), cross_cuts(), three_real()}) {
    Surface s(cs);
    REQUIRE(s.chi_count() == 2 * static_cast<std::size_t>(s.genus()) + 1);
    for (std::size_t k = 0; k + 1 < s.chi_count(); ++k)
      CHECK(s.consecutive_intersection(k) == 1);
  }
}

TEST_CASE("surface: period matrix is symmetric with positive definite imaginary part") {
  for (const CutSystem& cs : {two_real(), cross_cuts(), three_real()}) {
    Surface s(cs);
    const Mat& B = s.period_matrix();
    const int g = s.genus();
    REQUIRE(B.rows() == g);
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j)
        CHECK(std::abs(B(i, j) - B(j, i)) < tol("1e-20"));
    // Leading principal minors of Im B are positive.
    RMat imB(g, g);
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) imB(i, j) = B(i, j).imag();
    for (int k = 1; k <= g; ++k) {
      RMat lead = imB.topLeftCorner(k, k);
      CHECK(lead.fullPivLu().determinant() > Real(0));
    }
  }
}

TEST_CASE("surface: periods are stable under doubled quadrature order") {
  SurfaceOptions lo, hi;
  lo.quad.order = 24;
  hi.quad.order = 48;
  Surface a(two_real(), lo), b(two_real(), hi);
  CHECK(std::abs(a.period_matrix()(0, 0) - b.period_matrix()(0, 0)) < tol("1e-25"));
  Surface c(three_real(), lo), d(three_real(), hi);
  CHECK(vec_norm(Vec(c.period_matrix().reshaped() - d.period_matrix().reshaped())) <
        tol("1e-25"));
}

TEST_CASE("surface: normalized alpha periods are the identity") {
  Surface s(three_real());
  const int g = s.genus();
  for (int i = 0; i < g; ++i) {
    Vec per = s.alpha_periods([&, i](const Complex& z) { return s.holo_density(i, z); });
    for (int k = 0; k < g; ++k) {
      Complex want = i == k ? Complex(Real(1)) : Complex(Real(0));
      CHECK(std::abs(per(k) - want) < tol("1e-25"));
    }
  }
}

TEST_CASE("surface: abel map basics") {
  Surface s(two_real());
  // Base point maps to zero.
  Vec a0 = s.abel(SurfacePoint::finite(s.base_point()));
  CHECK(vec_norm(a0) < tol("1e-40"));
  // Sheet involution negates the Abel map exactly (same route, negated).
  SurfacePoint p = SurfacePoint::finite(Complex(Real(0), Real(2)));
  Vec up = s.abel(p);
  Vec dn = s.abel(p.star());
  CHECK(vec_norm(Vec(up + dn)) < tol("1e-60"));
  CHECK(vec_norm(up) > tol("1e-10"));
}

TEST_CASE("surface: abel map is path independent modulo the lattice") {
  for (const CutSystem& cs : {two_real(), cross_cuts()}) {
    Surface s(cs);
    Complex z(Real(7) / 4, Real(5) / 4);
    Vec direct = s.abel_along(s.route_from_base(z), 0);
    // A long detour: out above everything, across, and down.
    Path detour;
    Complex hi = s.base_point() + Complex(Real(0), Real(6));
    Complex hz = z + Complex(Real(0), Real(6) - z.imag() + Real(2));
    detour.push(Segment::line(s.base_point(), hi, true, false));
    detour.push(Segment::line(hi, hz));
    detour.push(Segment::line(hz, z));
    Vec other = s.abel_along(detour, 0);
    Vec diff = lattice_reduce(Vec(direct - other), s.period_matrix());
    CHECK(vec_norm(diff) < tol("1e-25"));
  }
}

TEST_CASE("surface: branch points are half-lattice points") {
  Surface s(two_real());
  for (const Complex& e : s.branch_points()) {
    Vec a = s.abel(SurfacePoint::finite(e));
    Vec r = lattice_reduce(Vec(Real(2) * a), s.period_matrix());
    CHECK(vec_norm(r) < tol("1e-25"));
  }
}

TEST_CASE("surface: big circle is null-homologous") {
  Surface s(two_real());
  for (int i = 0; i < s.genus(); ++i) {
    QuadResult q = quad_segment([&](const Complex& z) { return s.holo_density(i, z); },
                                Segment::circle(Complex(Real(0)), Real(4)));
    REQUIRE(q.ok());
    CHECK(std::abs(q.value) < tol("1e-25"));
  }
}

TEST_CASE("surface: genus zero degenerates gracefully") {
  Surface s(seg_cut());
  CHECK(s.genus() == 0);
  CHECK(s.chi_count() == 1);
  CHECK(s.period_matrix().rows() == 0);
  CHECK(s.abel(SurfacePoint::finite(Complex(Real(2)))).size() == 0);
  CHECK(std::abs(s.w(Complex(Real(2)), 0) - std::sqrt(Complex(Real(3)))) < tol("1e-70"));
}

TEST_CASE("surface: infinite points carry opposite abel values") {
  Surface s(two_real());
  Vec pi0 = s.abel(SurfacePoint::infinity(0));
  Vec pi1 = s.abel(SurfacePoint::infinity(1));
  CHECK(vec_norm(Vec(pi0 + pi1)) < tol("1e-60"));
  CHECK(vec_norm(pi0) > tol("1e-10"));
}
