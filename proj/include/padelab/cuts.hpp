#pragma once

// Straight-segment branch-cut systems and the two-valued algebraic weight
// attached to them.  For cuts [a_0,b_0],...,[a_g,b_g] the weight on the
// principal sheet is
//
//     w0(z) = prod_j  r_j * u_j * sqrt(1 - 1/u_j^2),   u_j = (z - m_j)/r_j,
//
// with m_j, r_j the midpoint/half-length of cut j.  Each factor is analytic
// off its own segment (the principal sqrt branch cut maps exactly onto the
// segment) and behaves like (z - m_j) at infinity, so w0(z) ~ z^(g+1).
// One-sided boundary values on a cut interior have the closed form
// +/- i r sqrt(1-t^2) for the owning factor; "+" is the side to the left of
// the a->b orientation.

#include <padelab/precision.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace padelab {

struct Cut {
  Complex a{}, b{};
  Complex mid() const { return (a + b) / Real(2); }
  Complex half() const { return (b - a) / Real(2); }
};

// Distance from point p to segment [a,b].
inline Real dist_point_segment(const Complex& p, const Complex& a, const Complex& b) {
  const Complex d = b - a;
  const Real dd = std::norm(d);
  if (!(dd > Real(0))) return std::abs(p - a);
  Real t = ((p.real() - a.real()) * d.real() + (p.imag() - a.imag()) * d.imag()) / dd;
  if (t < Real(0)) t = Real(0);
  if (t > Real(1)) t = Real(1);
  return std::abs(p - (a + t * d));
}

// Proper interior crossing of segments [p1,p2] and [q1,q2].  Touching at a
// shared endpoint does not count; collinear overlap does.
bool segments_cross(const Complex& p1, const Complex& p2,
                    const Complex& q1, const Complex& q2,
                    const Real& eps_rel);

class CutSystem {
 public:
  CutSystem() = default;
  explicit CutSystem(std::vector<Cut> cuts) : cuts_(std::move(cuts)) { validate(); }

  const std::vector<Cut>& cuts() const { return cuts_; }
  std::size_t size() const { return cuts_.size(); }
  int genus() const { return static_cast<int>(cuts_.size()) - 1; }

  // Branch points in storage order a_0, b_0, a_1, b_1, ...
  std::vector<Complex> branch_points() const {
    std::vector<Complex> e;
    e.reserve(2 * cuts_.size());
    for (const auto& c : cuts_) { e.push_back(c.a); e.push_back(c.b); }
    return e;
  }

  // Weight on the principal sheet; the other sheet is -w0.
  Complex w0(const Complex& z) const {
    Complex w(Real(1), Real(0));
    for (const auto& c : cuts_) w *= factor(c, z);
    return w;
  }

  // One factor r*u*sqrt(1-1/u^2) of w0.
  static Complex factor(const Cut& c, const Complex& z) {
    const Complex r = c.half();
    const Complex u = (z - c.mid()) / r;
    return r * u * std::sqrt(Complex(Real(1), Real(0)) - Complex(Real(1), Real(0)) / (u * u));
  }

  // Boundary value of w0 on the interior of cut j from the "+" side (left of
  // the a->b orientation); the "-" side value is its negative.  x is taken by
  // its projection onto the cut axis.
  Complex w_plus(std::size_t j, const Complex& x) const {
    const Cut& c = cuts_.at(j);
    const Complex r = c.half();
    Real t = (((x - c.mid()) / r)).real();
    if (t < Real(-1)) t = Real(-1);
    if (t > Real(1)) t = Real(1);
    Complex own = Complex(Real(0), Real(1)) * r * sqrt(Real(1) - t * t);
    Complex rest(Real(1), Real(0));
    const Complex xc = c.mid() + t * r;
    for (std::size_t k = 0; k < cuts_.size(); ++k)
      if (k != j) rest *= factor(cuts_[k], xc);
    return own * rest;
  }

  // Which side of cut j the point z lies on: +1 = left of a->b, -1 = right,
  // 0 = on the cut axis.
  int side_of(std::size_t j, const Complex& z) const {
    const Cut& c = cuts_.at(j);
    const Real s = ((z - c.mid()) / c.half()).imag();
    if (s > Real(0)) return 1;
    if (s < Real(0)) return -1;
    return 0;
  }

  Real dist(const Complex& z) const {
    Real best = Real(0);
    bool first = true;
    for (const auto& c : cuts_) {
      Real d = dist_point_segment(z, c.a, c.b);
      if (first || d < best) { best = d; first = false; }
    }
    return best;
  }

  // Does the open segment p->q cross any cut interior?
  bool crosses(const Complex& p, const Complex& q) const {
    const Real eps = pow2(-static_cast<long>(Precision::bits()) / 2);
    for (const auto& c : cuts_)
      if (segments_cross(p, q, c.a, c.b, eps)) return true;
    return false;
  }

  Real scale() const {
    Real s(1);
    for (const auto& c : cuts_) {
      Real m = std::abs(c.a);
      if (m > s) s = m;
      m = std::abs(c.b);
      if (m > s) s = m;
    }
    return s;
  }

 private:
  void validate() const {
    if (cuts_.empty()) throw std::invalid_argument("CutSystem: empty cut list");
    for (const auto& c : cuts_)
      if (!(std::abs(c.b - c.a) > Real(0)))
        throw std::invalid_argument("CutSystem: zero-length cut");
    // Endpoints must be pairwise distinct (simple branch points).
    auto e = branch_points();
    const Real tol = Real("1e-30") * scale();
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = i + 1; j < e.size(); ++j)
        if (std::abs(e[i] - e[j]) < tol)
          throw std::invalid_argument("CutSystem: coincident branch points");
  }

  std::vector<Cut> cuts_;
};

}  // namespace padelab
