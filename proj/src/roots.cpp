#include "padelab/roots.hpp"

#include <algorithm>
#include <numeric>

namespace padelab {

namespace {

Real cauchy_bound(const std::vector<Complex>& c) {
  // 1 + max |c_k / c_n|
  Real m(0);
  Real lead = abs(c.back());
  for (std::size_t k = 0; k + 1 < c.size(); ++k) m = std::max(m, abs(c[k]) / lead);
  return 1 + m;
}

std::vector<Complex> aberth(const std::vector<Complex>& c, const RootOptions& opt, bool& converged) {
  const int n = static_cast<int>(c.size()) - 1;
  Poly p{std::vector<Complex>(c)};
  Poly dp = p.derivative();

  Real R = cauchy_bound(c);
  std::vector<Complex> z(n);
  Real pi = const_pi();
  for (int i = 0; i < n; ++i) {
    // Deterministic spread; slight eccentricity breaks symmetric stalls.
    Real th = 2 * pi * i / n + Real(3) / (7 * n + 2);
    z[i] = Complex(Real("0.85") * R * cos(th), Real("0.93") * R * sin(th));
  }

  converged = false;
  for (int iter = 0; iter < opt.max_iters; ++iter) {
    Real step_max(0);
    for (int i = 0; i < n; ++i) {
      Complex pv = p.eval(z[i]);
      Complex dv = dp.eval(z[i]);
      if (pv == Complex(Real(0))) continue;
      Complex w = dv == Complex(Real(0)) ? Complex(Real(0)) : pv / dv;
      Complex s(Real(0));
      for (int j = 0; j < n; ++j)
        if (j != i) s += Complex(Real(1)) / (z[i] - z[j]);
      Complex denom = Complex(Real(1)) - w * s;
      Complex delta = denom == Complex(Real(0)) ? w : w / denom;
      z[i] -= delta;
      step_max = std::max(step_max, abs(delta) / (1 + abs(z[i])));
    }
    if (step_max < opt.tol) {
      converged = true;
      break;
    }
  }
  return z;
}

}  // namespace

RootResult poly_roots(const Poly& p_in, const RootOptions& opt) {
  RootResult out;
  Poly p = p_in;
  p.trim();
  if (p.degree() <= 0) {
    out.flag = p.is_zero() ? RootFlag::Degenerate : RootFlag::Ok;
    return out;
  }

  // Strip exact zero roots at the origin (common after normalizations).
  int zero_mult = 0;
  while (!p.c.empty() && p.c.front() == Complex(Real(0))) {
    p.c.erase(p.c.begin());
    ++zero_mult;
  }

  std::vector<Complex> z;
  Poly dp = p.derivative();
  std::vector<Real> radius;  // Newton inclusion radius per approximant
  if (p.degree() >= 1) {
    bool converged = false;
    RootOptions stage = opt;
    // Multiple roots converge only linearly; stop the sweep at the cluster
    // scale and let the post-merge polish restore full precision.
    stage.tol = std::max(opt.tol, opt.cluster_tol * opt.cluster_tol);
    z = aberth(p.c, stage, converged);
    if (!converged) out.flag = RootFlag::NotConverged;

    // Newton polish (quadratic for simple roots; harmless for clusters).
    for (auto& zi : z) {
      for (int it = 0; it < 10; ++it) {
        Complex pv = p.eval(zi);
        Complex dv = dp.eval(zi);
        if (dv == Complex(Real(0))) break;
        Complex step = pv / dv;
        zi -= step;
        if (abs(step) < opt.tol * opt.tol * (1 + abs(zi))) break;
      }
    }
    radius.resize(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      Complex dv = dp.eval(z[i]);
      radius[i] = dv == Complex(Real(0)) ? Real(1)
                                         : Real(p.degree()) * abs(p.eval(z[i])) / abs(dv);
    }
  }

  // Merge approximants whose Newton inclusion disks overlap (multiple roots)
  // or that sit within the configured cluster tolerance.
  std::vector<bool> used(z.size(), false);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> members{i};
    used[i] = true;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (used[j]) continue;
        for (auto m : members) {
          Real gap = abs(z[j] - z[m]);
          if (gap < 4 * (radius[j] + radius[m]) + opt.cluster_tol * (1 + abs(z[m]))) {
            members.push_back(j);
            used[j] = true;
            grew = true;
            break;
          }
        }
      }
    }
    Complex mean(Real(0));
    for (auto m : members) mean += z[m];
    mean /= Real(static_cast<int>(members.size()));
    RootCluster rc;
    rc.z = mean;
    rc.multiplicity = static_cast<int>(members.size());
    if (rc.multiplicity > 1) {
      // Newton on p^(m-1), which has a simple root at the cluster center.
      Poly d = p;
      for (int k = 1; k < rc.multiplicity; ++k) d = d.derivative();
      Poly dd = d.derivative();
      for (int it = 0; it < 20; ++it) {
        Complex dv = dd.eval(rc.z);
        if (dv == Complex(Real(0))) break;
        Complex step = d.eval(rc.z) / dv;
        rc.z -= step;
        if (abs(step) < opt.tol * opt.tol * (1 + abs(rc.z))) break;
      }
    }
    out.roots.push_back(rc);
  }
  if (zero_mult > 0) out.roots.push_back({Complex(Real(0)), zero_mult});

  Real lead = abs(p_in.c.back());
  for (const auto& r : out.roots) {
    Real pr = abs(p_in.eval(r.z)) / lead;
    out.residual_scale = std::max(out.residual_scale, pr);
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const RootCluster& a, const RootCluster& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });
  return out;
}

}  // namespace padelab
