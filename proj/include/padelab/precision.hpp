#pragma once

// Scalar substrate: arbitrary-precision reals over MPFR, complexes as
// std::complex<Real>.  Precision is a process-global run parameter; set it
// once at startup (or in a test fixture) before constructing any values.

#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <sstream>
#include <string>

namespace padelab {

namespace mp = boost::multiprecision;

using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;
using Complex = std::complex<Real>;

// Global precision control.  Digits are decimal; bits are what MPFR actually
// carries.  Mixing values created under different precisions is not
// supported: call set_digits once, up front.
struct Precision {
  static void set_digits(unsigned digits10) {
    if (digits10 < 40) digits10 = 40;
    Real::default_precision(digits10);
  }
  static unsigned digits() { return Real::default_precision(); }
  static unsigned bits() {
    Real probe(0);
    return static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
  }
};

inline Real const_pi() {
  Real p(0);
  mpfr_const_pi(p.backend().data(), MPFR_RNDN);
  return p;
}

// 2^-e at run precision (exact).
inline Real pow2(long e) {
  Real r(1);
  mpfr_mul_2si(r.backend().data(), r.backend().data(), e, MPFR_RNDN);
  return r;
}

// Default quadrature tolerance: half the working precision.
inline Real quad_tol_default() { return pow2(-static_cast<long>(Precision::bits() / 2)); }
// Root-clustering threshold: quarter of the working precision.
inline Real cluster_tol_default() { return pow2(-static_cast<long>(Precision::bits() / 4)); }

inline bool is_finite(const Real& x) { return mpfr_number_p(x.backend().data()) != 0; }
inline bool is_finite(const Complex& z) { return is_finite(z.real()) && is_finite(z.imag()); }

inline Real real_from(const char* s) { return Real(s); }

inline std::string str(const Real& x, int digits = 30) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

inline std::string str(const Complex& z, int digits = 30) {
  std::ostringstream os;
  os << "(" << str(z.real(), digits) << ", " << str(z.imag(), digits) << ")";
  return os.str();
}

inline Complex I_unit() { return Complex(Real(0), Real(1)); }

// Deterministic 64-bit PRNG (splitmix64) for property tests and multistart
// seeds; no dependence on std::random_device anywhere.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0,1) with 64 significant bits.
  Real uniform() { return Real(next_u64()) * pow2(-64); }
  Real uniform(const Real& a, const Real& b) { return a + (b - a) * uniform(); }
  Complex box(const Real& re0, const Real& re1, const Real& im0, const Real& im1) {
    return Complex(uniform(re0, re1), uniform(im0, im1));
  }
};

}  // namespace padelab
