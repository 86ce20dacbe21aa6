#include <padelab/cuts.hpp>
#include <padelab/route.hpp>

#include <algorithm>
#include <deque>
#include <limits>

namespace padelab {

bool segments_cross(const Complex& p1, const Complex& p2,
                    const Complex& q1, const Complex& q2,
                    const Real& eps_rel) {
  // Solve p1 + s(p2-p1) = q1 + t(q2-q1).
  const Complex dp = p2 - p1, dq = q2 - q1;
  const Real den = dp.real() * dq.imag() - dp.imag() * dq.real();
  const Real scale = std::abs(dp) * std::abs(dq);
  if (!(scale > Real(0))) return false;
  const Complex rhs = q1 - p1;
  if (abs(den) <= eps_rel * scale) {
    // Parallel.  Collinear overlap counts as a crossing.
    const Real off = dp.real() * rhs.imag() - dp.imag() * rhs.real();
    if (abs(off) > eps_rel * std::abs(dp) * (std::abs(rhs) + std::abs(dq) + std::abs(dp)))
      return false;
    // Project q1,q2 onto p-axis.
    const Real dd = std::norm(dp);
    Real t1 = ((q1 - p1).real() * dp.real() + (q1 - p1).imag() * dp.imag()) / dd;
    Real t2 = ((q2 - p1).real() * dp.real() + (q2 - p1).imag() * dp.imag()) / dd;
    if (t1 > t2) std::swap(t1, t2);
    const Real lo = std::max(t1, Real(0)), hi = std::min(t2, Real(1));
    return hi - lo > eps_rel;  // shared stretch of positive length
  }
  const Real s = (rhs.real() * dq.imag() - rhs.imag() * dq.real()) / den;
  const Real t = (rhs.real() * dp.imag() - rhs.imag() * dp.real()) / den;
  // Blocked when one segment's interior meets any point of the other;
  // endpoint-to-endpoint contact is permitted (paths may start on a vertex).
  const bool s_int = s > eps_rel && s < Real(1) - eps_rel;
  const bool t_int = t > eps_rel && t < Real(1) - eps_rel;
  const bool s_touch = s > -eps_rel && s < Real(1) + eps_rel;
  const bool t_touch = t > -eps_rel && t < Real(1) + eps_rel;
  return (s_int && t_touch) || (t_int && s_touch);
}

Router::Router(std::vector<std::vector<Complex>> obstacles, int ring_nodes)
    : obstacles_(std::move(obstacles)) {
  Complex sum(Real(0), Real(0));
  int n = 0;
  for (const auto& ob : obstacles_)
    for (const auto& v : ob) { sum += v; ++n; }
  hub_ = n ? sum / Real(n) : Complex(Real(0), Real(0));
  Real ext(1);
  for (const auto& ob : obstacles_)
    for (const auto& v : ob) ext = std::max(ext, std::abs(v - hub_));
  ring_radius_ = Real(2) * ext + Real(1);
  const Real pi = const_pi();
  for (int k = 0; k < ring_nodes; ++k) {
    const Real th = Real(2) * pi * Real(k) / Real(ring_nodes);
    ring_.push_back(hub_ + ring_radius_ * Complex(cos(th), sin(th)));
  }
  // Offset waypoints beside every obstacle vertex, eight compass directions.
  for (const auto& ob : obstacles_)
    for (const auto& v : ob) {
      Real local = ext;
      for (const auto& ob2 : obstacles_)
        for (const auto& v2 : ob2) {
          const Real d = std::abs(v2 - v);
          if (d > Real("1e-20") && d < local) local = d;
        }
      const Real off = Real("0.37") * std::min(local, ext / Real(2) + Real("0.5"));
      static const double dirs[8][2] = {{1, 0}, {-1, 0}, {0, 1},  {0, -1},
                                        {0.7071067811865476, 0.7071067811865476},
                                        {-0.7071067811865476, 0.7071067811865476},
                                        {0.7071067811865476, -0.7071067811865476},
                                        {-0.7071067811865476, -0.7071067811865476}};
      for (const auto& d : dirs)
        waypoints_.push_back(v + off * Complex(Real(d[0]), Real(d[1])));
    }
}

bool Router::blocked(const Complex& p, const Complex& q) const {
  const Real eps = pow2(-static_cast<long>(Precision::bits()) / 2);
  for (const auto& ob : obstacles_)
    for (std::size_t i = 0; i + 1 < ob.size(); ++i)
      if (segments_cross(p, q, ob[i], ob[i + 1], eps)) return true;
  return false;
}

Complex Router::liftoff(const Complex& p) const {
  // Find nearest obstacle point; if p is close, step away from it.
  Real best = Real(-1);
  Complex foot{};
  for (const auto& ob : obstacles_)
    for (std::size_t i = 0; i + 1 < ob.size(); ++i) {
      const Complex a = ob[i], b = ob[i + 1];
      const Complex d = b - a;
      const Real dd = std::norm(d);
      Real t = dd > Real(0)
                   ? ((p.real() - a.real()) * d.real() + (p.imag() - a.imag()) * d.imag()) / dd
                   : Real(0);
      t = std::min(Real(1), std::max(Real(0), t));
      const Complex f = a + t * d;
      const Real dist = std::abs(p - f);
      if (best < Real(0) || dist < best) { best = dist; foot = f; }
    }
  if (best < Real(0)) return p;
  const Real step = Real("0.3");
  if (best > step) return p;
  Complex away = p - foot;
  if (std::abs(away) < Real("1e-25")) {
    // p sits on an obstacle (e.g. a branch point): walk radially from hub.
    away = p - hub_;
    if (std::abs(away) < Real("1e-25")) away = Complex(Real(1), Real(0));
  }
  away /= std::abs(away);
  return p + step * away;
}

Path Router::route(const Complex& from, const Complex& to) const {
  auto as_path = [](const std::vector<Complex>& pts) {
    Path p;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      if (std::abs(pts[i + 1] - pts[i]) > Real("1e-40")) p.push(Segment::line(pts[i], pts[i + 1]));
    return p;
  };
  if (!blocked(from, to)) return as_path({from, to});

  // Node table: 0=from, 1=to, then helpers, waypoints, ring.
  std::vector<Complex> nodes = {from, to};
  const Complex lf = liftoff(from), lt = liftoff(to);
  if (std::abs(lf - from) > Real(0)) nodes.push_back(lf);
  if (std::abs(lt - to) > Real(0)) nodes.push_back(lt);
  for (const auto& w : waypoints_) nodes.push_back(w);
  for (const auto& r : ring_) nodes.push_back(r);

  const std::size_t N = nodes.size();
  std::vector<int> prev(N, -1);
  std::vector<char> seen(N, 0);
  std::deque<std::size_t> q;
  seen[0] = 1;
  q.push_back(0);
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop_front();
    if (u == 1) break;
    for (std::size_t v = 0; v < N; ++v) {
      if (seen[v] || v == u) continue;
      if (blocked(nodes[u], nodes[v])) continue;
      seen[v] = 1;
      prev[v] = static_cast<int>(u);
      q.push_back(v);
    }
  }
  if (!seen[1]) return Path{};
  std::vector<Complex> pts;
  for (int at = 1; at != -1; at = prev[at]) pts.push_back(nodes[at]);
  std::reverse(pts.begin(), pts.end());
  // Shortcut pass: drop interior nodes when the direct hop is clear.
  bool changed = true;
  while (changed && pts.size() > 2) {
    changed = false;
    for (std::size_t i = 0; i + 2 < pts.size(); ++i)
      if (!blocked(pts[i], pts[i + 2])) {
        pts.erase(pts.begin() + static_cast<long>(i) + 1);
        changed = true;
        break;
      }
  }
  return as_path(pts);
}

Path Router::route_to_inf(const Complex& from, const Complex& dir_hint) const {
  Complex dir = dir_hint;
  if (!(std::abs(dir) > Real(0))) dir = Complex(Real(1), Real(0));
  dir /= std::abs(dir);
  // Exit through the ring node closest to the hinted azimuth.
  Complex exit_pt = ring_.empty() ? hub_ + ring_radius_ * dir : ring_[0];
  Real best = std::abs(exit_pt - (hub_ + ring_radius_ * dir));
  for (const auto& r : ring_) {
    const Real d = std::abs(r - (hub_ + ring_radius_ * dir));
    if (d < best) { best = d; exit_pt = r; }
  }
  Path p = route(from, exit_pt);
  if (p.segs.empty() && std::abs(from - exit_pt) > Real(0)) return Path{};
  Complex ray_dir = exit_pt - hub_;
  ray_dir /= std::abs(ray_dir);
  p.push(Segment::ray_to_inf(exit_pt, ray_dir));
  return p;
}

}  // namespace padelab
