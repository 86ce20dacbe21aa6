#include <padelab/surface.hpp>

#include <stdexcept>

namespace padelab {

Surface::Surface(CutSystem cs, SurfaceOptions opt) : cs_(std::move(cs)), opt_(opt) {
  epts_ = cs_.branch_points();
  std::vector<std::vector<Complex>> obs;
  for (const auto& c : cs_.cuts()) obs.push_back({c.a, c.b});
  router_ = Router(obs);
  build_homology();
  build_periods();
  // Deterministic escape route for integrals out to infinity.
  Complex dir = base_point() - router_.hub();
  if (!(std::abs(dir) > Real(0))) dir = Complex(Real(1), Real(0));
  base_inf_ = router_.route_to_inf(base_point(), dir);
  if (base_inf_.segs.empty()) throw std::runtime_error("surface: no route to infinity");
  base_inf_.segs.front().singular_start = true;
}

Complex Surface::w(const Complex& z, int sheet) const {
  const Real sign = sheet == 0 ? Real(1) : Real(-1);
  const Real tol = Real("1e-25") * scale();
  for (std::size_t j = 0; j < cs_.size(); ++j) {
    const Cut& c = cs_.cuts()[j];
    if (dist_point_segment(z, c.a, c.b) < tol) return sign * cs_.w_plus(j, z);
  }
  return sign * cs_.w0(z);
}

Complex Surface::w_at(const SurfacePoint& p) const {
  if (p.at_inf) throw std::invalid_argument("w_at: infinite point");
  return w(p.z, p.sheet);
}

Complex Surface::chi_period(std::size_t k, const Integrand& h) const {
  const Bridge& b = chi_.at(k);
  QuadResult q = quad_path(h, b.planar, opt_.quad);
  if (q.flag == QuadFlag::NonFinite)
    throw std::runtime_error("surface: non-finite period integrand");
  return Real(2 * b.orient) * q.value;
}

Complex Surface::combo_period(const std::vector<int>& combo, const Integrand& h) const {
  Complex s(Real(0), Real(0));
  for (std::size_t k = 0; k < combo.size(); ++k)
    if (combo[k] != 0) s += Real(combo[k]) * chi_period(k, h);
  return s;
}

Vec Surface::alpha_periods(const Integrand& h) const {
  Vec v(genus());
  for (int i = 0; i < genus(); ++i) v(i) = combo_period(alpha_[static_cast<std::size_t>(i)], h);
  return v;
}

Vec Surface::beta_periods(const Integrand& h) const {
  Vec v(genus());
  for (int i = 0; i < genus(); ++i) v(i) = combo_period(beta_[static_cast<std::size_t>(i)], h);
  return v;
}

Complex Surface::holo_density(int i, const Complex& z) const {
  Complex num(Real(0), Real(0));
  for (int j = genus(); j-- > 0;) num = num * z + holo_(i, j);
  // w(z, 0) rather than raw w0: on-cut evaluations must sit on the left
  // shore consistently, not flip branch at the cut midpoint
  return num / w(z, 0);
}

Path Surface::route_from_base(const Complex& z) const {
  Path p = router_.route(base_point(), z);
  if (p.segs.empty() && std::abs(z - base_point()) > Real(0))
    throw std::runtime_error("surface: no path from the base point");
  if (!p.segs.empty()) {
    p.segs.front().singular_start = true;
    const Real tol = Real("1e-20") * scale();
    for (const auto& e : epts_)
      if (std::abs(z - e) < tol) { p.segs.back().singular_end = true; break; }
  }
  return p;
}

Vec Surface::abel_along(const Path& planar, int sheet) const {
  Vec a = Vec::Zero(genus());
  for (int i = 0; i < genus(); ++i) {
    QuadResult q = quad_path([&](const Complex& z) { return holo_density(i, z); }, planar,
                             opt_.quad);
    if (q.flag == QuadFlag::NonFinite)
      throw std::runtime_error("surface: non-finite abel integrand");
    a(i) = q.value;
  }
  return sheet == 0 ? a : Vec(-a);
}

Vec Surface::abel(const SurfacePoint& p) const {
  if (genus() == 0) return Vec(0);
  if (p.at_inf) return abel_along(base_inf_, p.sheet);
  // Far from everything the densities decay like z^-2; integrating the short
  // ray tail out of p is far better conditioned than a huge routed segment.
  const Complex off = p.z - router_.hub();
  if (std::abs(off) > Real(4) * router_.ring_radius()) {
    Path ray;
    ray.push(Segment::ray_to_inf(p.z, off));
    Vec tail = abel_along(ray, p.sheet);
    return Vec(abel(SurfacePoint::infinity(p.sheet)) - tail);
  }
  if (std::abs(p.z - base_point()) < Real("1e-40") * scale()) return Vec::Zero(genus());
  return abel_along(route_from_base(p.z), p.sheet);
}

Vec Surface::abel_divisor(const Divisor& d) const {
  Vec a = Vec::Zero(genus());
  for (const auto& p : d.pts) a += abel(p);
  return a;
}

Router Surface::router_avoiding(const std::vector<Complex>& avoid, const Real& radius) const {
  std::vector<std::vector<Complex>> obs;
  for (const auto& c : cs_.cuts()) obs.push_back({c.a, c.b});
  for (const auto& z : avoid) {
    obs.push_back({z + Complex(radius, Real(0)), z + Complex(Real(0), radius),
                   z - Complex(radius, Real(0)), z - Complex(Real(0), radius),
                   z + Complex(radius, Real(0))});
  }
  return Router(obs);
}

}  // namespace padelab
