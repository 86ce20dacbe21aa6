#pragma once

// Integration paths in the z-plane: chains of segments with closed-form
// parametrizations and per-endpoint singularity flags (square-root endpoint
// substitution is applied by the quadrature driver, not here).

#include <functional>
#include <utility>
#include <vector>

#include "padelab/precision.hpp"

namespace padelab {

struct Segment {
  enum class Kind { Line, EllipseArc, RayToInf };

  Kind kind = Kind::Line;
  // Line: z = a + s*(b-a).
  Complex a, b;
  // EllipseArc: z = center + half_axis*(cos th + i*flatten*sin th),
  // th = th0 + s*(th1-th0).  half_axis is complex (rotates the ellipse);
  // flatten=1 gives a circular arc.
  Complex center, half_axis;
  Real flatten, th0, th1;
  // RayToInf: z = a + dir*s/(1-s); only sensible under integrands decaying
  // like z^-2 or faster.
  Complex dir;
  // sqrt-type integrable singularity of the integrand at an endpoint
  // (typically a branch point of the surface).
  bool singular_start = false;
  bool singular_end = false;

  static Segment line(const Complex& a, const Complex& b, bool sing_a = false, bool sing_b = false) {
    Segment s;
    s.kind = Kind::Line;
    s.a = a;
    s.b = b;
    s.singular_start = sing_a;
    s.singular_end = sing_b;
    return s;
  }
  static Segment ellipse_arc(const Complex& center, const Complex& half_axis, const Real& flatten,
                             const Real& th0, const Real& th1, bool sing_a = false,
                             bool sing_b = false) {
    Segment s;
    s.kind = Kind::EllipseArc;
    s.center = center;
    s.half_axis = half_axis;
    s.flatten = flatten;
    s.th0 = th0;
    s.th1 = th1;
    s.singular_start = sing_a;
    s.singular_end = sing_b;
    return s;
  }
  static Segment circle(const Complex& center, const Real& radius) {
    return ellipse_arc(center, Complex(radius, Real(0)), Real(1), Real(0), 2 * const_pi());
  }
  static Segment ray_to_inf(const Complex& from, const Complex& direction) {
    Segment s;
    s.kind = Kind::RayToInf;
    s.a = from;
    s.dir = direction;
    return s;
  }

  Complex point(const Real& s) const {
    switch (kind) {
      case Kind::Line:
        return a + s * (b - a);
      case Kind::EllipseArc: {
        Real th = th0 + s * (th1 - th0);
        return center + half_axis * Complex(cos(th), flatten * sin(th));
      }
      case Kind::RayToInf:
      default:
        return a + dir * (s / (1 - s));
    }
  }
  Complex velocity(const Real& s) const {  // dz/ds
    switch (kind) {
      case Kind::Line:
        return b - a;
      case Kind::EllipseArc: {
        Real th = th0 + s * (th1 - th0);
        return half_axis * Complex(-sin(th), flatten * cos(th)) * (th1 - th0);
      }
      case Kind::RayToInf:
      default: {
        Real d = 1 - s;
        return dir / (d * d);
      }
    }
  }
  Complex start() const { return point(Real(0)); }
  Complex end() const {
    if (kind == Kind::RayToInf) return a + dir;  // direction marker, not a point
    return point(Real(1));
  }

  Segment reversed() const {
    Segment s = *this;
    switch (kind) {
      case Kind::Line:
        std::swap(s.a, s.b);
        break;
      case Kind::EllipseArc:
        std::swap(s.th0, s.th1);
        break;
      case Kind::RayToInf:
        break;  // not reversible; callers never reverse rays
    }
    std::swap(s.singular_start, s.singular_end);
    return s;
  }
};

struct Path {
  std::vector<Segment> segs;

  Path() = default;
  explicit Path(Segment s) : segs{std::move(s)} {}
  explicit Path(std::vector<Segment> ss) : segs(std::move(ss)) {}

  void push(Segment s) { segs.push_back(std::move(s)); }
  void append(const Path& p) { segs.insert(segs.end(), p.segs.begin(), p.segs.end()); }
  bool empty() const { return segs.empty(); }
  Complex start() const { return segs.front().start(); }
  Complex end() const { return segs.back().end(); }

  Path reversed() const {
    Path p;
    for (auto it = segs.rbegin(); it != segs.rend(); ++it) p.push(it->reversed());
    return p;
  }

  static Path polyline(const std::vector<Complex>& pts) {
    Path p;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) p.push(Segment::line(pts[i], pts[i + 1]));
    return p;
  }
};

}  // namespace padelab
