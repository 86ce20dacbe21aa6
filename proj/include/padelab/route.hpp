#pragma once

// Deterministic obstacle-avoiding path planning in the plane.  Obstacles are
// open polylines (branch cuts, previously routed homology bridges).  Queries
// return piecewise-linear paths whose segments never cross an obstacle
// interior; touching an obstacle endpoint is allowed, so paths may start at a
// branch point and may end arbitrarily close to a cut (one-sided limits).
//
// The planner searches a fixed visibility graph: the two query points, two
// optional lift-off helpers (when a query point hugs an obstacle), per-vertex
// offset waypoints, and a coarse ring that encloses every obstacle.  BFS over
// that graph makes results reproducible; there is no randomness anywhere.

#include <padelab/path.hpp>
#include <padelab/precision.hpp>

#include <vector>

namespace padelab {

class Router {
 public:
  Router() = default;
  explicit Router(std::vector<std::vector<Complex>> obstacles, int ring_nodes = 24);

  // Piecewise-linear path from `from` to `to`.  Empty path => unreachable.
  Path route(const Complex& from, const Complex& to) const;

  // Path from `from` out to infinity, leaving along direction `dir_hint`
  // (need not be normalized).  The last segment is a ray.
  Path route_to_inf(const Complex& from, const Complex& dir_hint) const;

  // True if segment p->q crosses some obstacle interior.
  bool blocked(const Complex& p, const Complex& q) const;

  Real ring_radius() const { return ring_radius_; }
  const Complex& hub() const { return hub_; }
  void add_waypoint(const Complex& w) { waypoints_.push_back(w); }

 private:
  std::vector<std::vector<Complex>> obstacles_;
  std::vector<Complex> waypoints_;  // vertex offsets + user extras
  std::vector<Complex> ring_;
  Complex hub_{};
  Real ring_radius_{0};

  // Waypoint placed beside p when p is an obstacle vertex or is close to an
  // obstacle; returns p itself otherwise.
  Complex liftoff(const Complex& p) const;
};

}  // namespace padelab
