#pragma once

// Truncated power-series arithmetic used to generate Taylor/Laurent data for
// algebraic germs.  A series is a coefficient vector a[0..n-1] representing
// sum a[k] t^k + O(t^n); all binary ops truncate to the shorter length.

#include <stdexcept>
#include <vector>

#include "padelab/precision.hpp"

namespace padelab {

using Series = std::vector<Complex>;

inline Series ser_mul(const Series& a, const Series& b, std::size_t n) {
  Series r(n, Complex(Real(0)));
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i] == Complex(Real(0))) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// 1/a with a[0] != 0.
inline Series ser_inv(const Series& a, std::size_t n) {
  if (a.empty() || a[0] == Complex(Real(0))) throw std::invalid_argument("ser_inv: a0 == 0");
  Series r(n, Complex(Real(0)));
  r[0] = Complex(Real(1)) / a[0];
  for (std::size_t k = 1; k < n; ++k) {
    Complex acc(Real(0));
    for (std::size_t j = 1; j <= k && j < a.size(); ++j) acc += a[j] * r[k - j];
    r[k] = -acc / a[0];
  }
  return r;
}

// log(a/a0): principal series with zero constant term (branch handled by the
// caller through the constant).
inline Series ser_log1(const Series& a, std::size_t n) {
  if (a.empty() || a[0] == Complex(Real(0))) throw std::invalid_argument("ser_log1: a0 == 0");
  // d/dt log a = a'/a; integrate.
  Series da(n, Complex(Real(0)));
  for (std::size_t k = 1; k < a.size() && k < n + 1; ++k)
    if (k - 1 < n) da[k - 1] = Real(static_cast<int>(k)) * a[k];
  Series q = ser_mul(da, ser_inv(a, n), n);
  Series r(n, Complex(Real(0)));
  for (std::size_t k = 1; k < n; ++k) r[k] = q[k - 1] / Real(static_cast<int>(k));
  return r;
}

// exp(a) with a[0] == 0.
inline Series ser_exp0(const Series& a, std::size_t n) {
  if (!a.empty() && a[0] != Complex(Real(0))) throw std::invalid_argument("ser_exp0: a0 != 0");
  // E' = a' E.
  Series r(n, Complex(Real(0)));
  r[0] = Complex(Real(1));
  for (std::size_t k = 1; k < n; ++k) {
    Complex acc(Real(0));
    for (std::size_t j = 1; j <= k && j < a.size(); ++j)
      acc += Real(static_cast<int>(j)) * a[j] * r[k - j];
    r[k] = acc / Real(static_cast<int>(k));
  }
  return r;
}

// (a/a0)^alpha: unit-leading-coefficient power series.
inline Series ser_pow1(const Series& a, const Complex& alpha, std::size_t n) {
  Series l = ser_log1(a, n);
  for (auto& v : l) v *= alpha;
  return ser_exp0(l, n);
}

}  // namespace padelab
