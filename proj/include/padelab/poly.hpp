#pragma once

// Dense polynomials with complex coefficients, ascending order.
// The zero polynomial has degree -1 and an empty coefficient vector.

#include <vector>

#include "padelab/precision.hpp"

namespace padelab {

struct Poly {
  std::vector<Complex> c;  // c[k] multiplies z^k

  Poly() = default;
  explicit Poly(std::vector<Complex> coeffs) : c(std::move(coeffs)) { trim(); }
  static Poly constant(const Complex& v) { return Poly(std::vector<Complex>{v}); }
  static Poly identity() { return Poly({Complex(Real(0)), Complex(Real(1))}); }

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }

  void trim() {
    while (!c.empty() && c.back() == Complex(Real(0))) c.pop_back();
  }

  Complex eval(const Complex& z) const {
    Complex acc(Real(0));
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  Poly derivative() const {
    if (c.size() <= 1) return Poly();
    std::vector<Complex> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = Real(static_cast<int>(k)) * c[k];
    return Poly(std::move(d));
  }

  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Complex> r(c.size() + o.c.size() - 1, Complex(Real(0)));
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
    return Poly(std::move(r));
  }
  Poly operator+(const Poly& o) const {
    std::vector<Complex> r(std::max(c.size(), o.c.size()), Complex(Real(0)));
    for (std::size_t i = 0; i < c.size(); ++i) r[i] += c[i];
    for (std::size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
    return Poly(std::move(r));
  }
  Poly operator-(const Poly& o) const {
    std::vector<Complex> r(std::max(c.size(), o.c.size()), Complex(Real(0)));
    for (std::size_t i = 0; i < c.size(); ++i) r[i] += c[i];
    for (std::size_t i = 0; i < o.c.size(); ++i) r[i] -= o.c[i];
    return Poly(std::move(r));
  }
  Poly scaled(const Complex& s) const {
    Poly r = *this;
    for (auto& v : r.c) v *= s;
    r.trim();
    return r;
  }

  static Poly from_roots(const std::vector<Complex>& roots) {
    Poly p = constant(Complex(Real(1)));
    for (const auto& r : roots) p = p * Poly({-r, Complex(Real(1))});
    return p;
  }

  // Coefficients of p(mu + r*u) as a polynomial in u.
  Poly compose_affine(const Complex& mu, const Complex& r) const {
    Poly acc;  // zero
    Poly lin({mu, r});
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * lin + constant(*it);
    return acc;
  }

  // Taylor coefficients of p around z0, orders 0..nmax (may exceed degree).
  std::vector<Complex> taylor_at(const Complex& z0, int nmax) const {
    Poly sh = compose_affine(z0, Complex(Real(1)));
    std::vector<Complex> out(static_cast<std::size_t>(nmax) + 1, Complex(Real(0)));
    for (std::size_t k = 0; k < sh.c.size() && k < out.size(); ++k) out[k] = sh.c[k];
    return out;
  }
};

}  // namespace padelab
