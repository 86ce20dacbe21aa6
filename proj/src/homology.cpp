#include <padelab/surface.hpp>

#include <stdexcept>

namespace padelab {

namespace {

// Polyline sample of one segment (endpoints included).
std::vector<Complex> sample_segment(const Segment& s, int n) {
  std::vector<Complex> pts;
  pts.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) pts.push_back(s.point(Real(k) / Real(n)));
  return pts;
}

bool polyline_clear(const std::vector<Complex>& pts,
                    const std::vector<std::vector<Complex>>& obstacles) {
  const Real eps = pow2(-static_cast<long>(Precision::bits()) / 2);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    for (const auto& ob : obstacles)
      for (std::size_t j = 0; j + 1 < ob.size(); ++j)
        if (segments_cross(pts[i], pts[i + 1], ob[j], ob[j + 1], eps)) return false;
  return true;
}

Complex unit(const Complex& v) {
  const Real m = std::abs(v);
  if (!(m > Real(0))) throw std::runtime_error("homology: degenerate tangent");
  return v / m;
}

// Traversal direction of a bridge cycle at a shared branch point in the local
// coordinate t = sqrt(z - e): +sqrt(u) when the planar path leaves e along u,
// -sqrt(u) when it arrives along -u.  The sqrt branch must be continuous on
// all directions a path can take, so its cut is aligned with the cut of the
// surface emanating from e: sqrt_d(u) = sqrt(u * rot) / sqrt(rot) with
// rot = -conj(d) placing the discontinuity exactly along d.
Complex crossing_direction(const Bridge& b, bool at_start, const Complex& rot) {
  Complex u, v;
  if (at_start) {
    u = unit(b.planar.segs.front().velocity(Real(0)));
    v = std::sqrt(u * rot);
  } else {
    u = unit(-b.planar.segs.back().velocity(Real(1)));
    v = -std::sqrt(u * rot);
  }
  return Real(b.orient) * v / std::sqrt(rot);
}

Complex cut_direction_at(const CutSystem& cs, const Complex& e) {
  const Real tol = Real("1e-30") * cs.scale();
  for (const auto& c : cs.cuts()) {
    if (std::abs(e - c.a) < tol) return unit(c.b - c.a);
    if (std::abs(e - c.b) < tol) return unit(c.a - c.b);
  }
  throw std::logic_error("homology: shared point is not a cut endpoint");
}

}  // namespace

int Surface::consecutive_intersection(std::size_t k) const {
  const Bridge& b1 = chi_.at(k);
  const Bridge& b2 = chi_.at(k + 1);
  const Complex rot = -std::conj(cut_direction_at(cs_, b1.e_to));
  const Complex v1 = crossing_direction(b1, false, rot);
  const Complex v2 = crossing_direction(b2, true, rot);
  const Real cr = (std::conj(v1) * v2).imag();
  if (cr > Real(0)) return 1;
  if (cr < Real(0)) return -1;
  return 0;
}

void Surface::build_homology() {
  const int g = genus();
  const auto& cuts = cs_.cuts();
  std::vector<std::vector<Complex>> obstacles;
  for (const auto& c : cuts) obstacles.push_back({c.a, c.b});

  static const double kappas[] = {0.35, 0.5, 0.8, 1.3, 1.7, 2.3, 0.18, 0.1};

  for (int k = 1; k <= 2 * g + 1; ++k) {
    Bridge b;
    if (k % 2 == 1) {
      // Cut bulge for cut j = (k-1)/2: elliptic arc around the segment.
      const std::size_t j = static_cast<std::size_t>((k - 1) / 2);
      const Cut& c = cuts[j];
      bool placed = false;
      for (int side = 0; side < 2 && !placed; ++side) {
        for (double kap : kappas) {
          const Real fl = (side == 0 ? Real(1) : Real(-1)) * Real(kap);
          Segment arc = Segment::ellipse_arc(c.mid(), c.half(), fl, const_pi(), Real(0),
                                             true, true);
          auto pts = sample_segment(arc, opt_.arc_samples);
          if (!polyline_clear(pts, obstacles)) continue;
          b.planar.push(arc);
          b.e_from = c.a;
          b.e_to = c.b;
          b.is_cut_bulge = true;
          placed = true;
          break;
        }
      }
      if (!placed) throw std::runtime_error("surface: could not place a cut bulge");
    } else {
      // Gap bridge from b_(j) to a_(j+1), j = k/2 - 1.
      const std::size_t j = static_cast<std::size_t>(k / 2 - 1);
      Router r(obstacles);
      Path p = r.route(cuts[j].b, cuts[j + 1].a);
      if (p.segs.empty()) throw std::runtime_error("surface: could not route a gap bridge");
      p.segs.front().singular_start = true;
      p.segs.back().singular_end = true;
      b.planar = std::move(p);
      b.e_from = cuts[j].b;
      b.e_to = cuts[j + 1].a;
    }
    // Future bridges must not cross this one.  chi_1 is exempt: it never
    // enters the symplectic basis (the combos below start at chi_2), so only
    // the cuts constrain it, and nothing needs to dodge it.
    if (k >= 2) {
      std::vector<Complex> poly;
      for (const auto& s : b.planar.segs) {
        auto pts = sample_segment(s, s.kind == Segment::Kind::Line ? 1 : opt_.arc_samples);
        if (!poly.empty()) pts.erase(pts.begin());
        poly.insert(poly.end(), pts.begin(), pts.end());
      }
      obstacles.push_back(std::move(poly));
    }
    chi_.push_back(std::move(b));
  }

  // Normalize consecutive intersection signs to +1.
  for (std::size_t k = 0; k + 1 < chi_.size(); ++k) {
    const int s = consecutive_intersection(k);
    if (s == 0) throw std::runtime_error("surface: tangential cycle crossing");
    if (s < 0) chi_[k + 1].orient = -chi_[k + 1].orient;
  }

  // Symplectic basis over the chain (0-based: chi_[i] is chi_(i+1)).
  alpha_.assign(static_cast<std::size_t>(g), std::vector<int>(chi_.size(), 0));
  beta_.assign(static_cast<std::size_t>(g), std::vector<int>(chi_.size(), 0));
  for (int jj = 1; jj <= g; ++jj) {
    alpha_[static_cast<std::size_t>(jj - 1)][static_cast<std::size_t>(2 * jj - 1)] = 1;
    for (int m = jj; m <= g; ++m)
      beta_[static_cast<std::size_t>(jj - 1)][static_cast<std::size_t>(2 * m)] = 1;
  }
}

void Surface::build_periods() {
  const int g = genus();
  raw_alpha_ = Mat::Zero(g, g);
  raw_beta_ = Mat::Zero(g, g);
  holo_ = Mat::Zero(g, g);
  B_ = Mat::Zero(g, g);
  if (g == 0) return;
  for (int j = 0; j < g; ++j) {
    Integrand monomial = [&, j](const Complex& z) {
      Complex zj(Real(1), Real(0));
      for (int m = 0; m < j; ++m) zj *= z;
      return zj / cs_.w0(z);
    };
    raw_alpha_.col(j) = alpha_periods(monomial);
    raw_beta_.col(j) = beta_periods(monomial);
  }
  // du_i = sum_j holo_(i,j) z^j / w with alpha-periods the identity:
  // holo_ * raw_alpha_^T = I.
  Mat id = Mat::Identity(g, g);
  holo_ = raw_alpha_.transpose().fullPivLu().solve(id);
  B_ = holo_ * raw_beta_.transpose();
}

}  // namespace padelab
