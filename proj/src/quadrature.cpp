#include "padelab/quadrature.hpp"

#include <map>
#include <stdexcept>

namespace padelab {

namespace {

// Legendre P_n and P_n' by the three-term recurrence.
void legendre(int n, const Real& x, Real& p, Real& dp) {
  Real p0(1), p1 = x;
  if (n == 0) {
    p = p0;
    dp = Real(0);
    return;
  }
  for (int k = 2; k <= n; ++k) {
    Real pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1);
}

}  // namespace

const std::pair<std::vector<Real>, std::vector<Real>>& gauss_legendre(int order) {
  static std::map<std::pair<int, unsigned>, std::pair<std::vector<Real>, std::vector<Real>>> cache;
  auto key = std::make_pair(order, Precision::bits());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  if (order < 2) throw std::invalid_argument("gauss_legendre: order must be >= 2");
  std::vector<Real> xs(order), ws(order);
  Real pi = const_pi();
  Real newton_tol = pow2(-static_cast<long>(Precision::bits()) + 6);
  for (int k = 0; k < (order + 1) / 2; ++k) {
    // Chebyshev-like initial guess, then Newton.
    Real x = cos(pi * (4 * k + 3) / (4 * order + 2));
    Real p, dp;
    for (int iter = 0; iter < 200; ++iter) {
      legendre(order, x, p, dp);
      Real dx = p / dp;
      x -= dx;
      if (abs(dx) < newton_tol) break;
    }
    legendre(order, x, p, dp);
    Real w = 2 / ((1 - x * x) * dp * dp);
    xs[k] = -x;  // ascending order
    ws[k] = w;
    xs[order - 1 - k] = x;
    ws[order - 1 - k] = w;
  }
  if (order % 2 == 1) {
    Real x(0), p, dp;
    legendre(order, x, p, dp);
    xs[order / 2] = Real(0);
    ws[order / 2] = 2 / (dp * dp);
  }
  auto res = cache.emplace(key, std::make_pair(std::move(xs), std::move(ws)));
  return res.first->second;
}

namespace {

// f mapped through the segment parametrization plus (optionally) endpoint
// sqrt substitutions, as a function of u in [0,1].
struct Mapped {
  const Integrand* f;
  const Segment* seg;
  bool arclen;
  // substitution state: 0 none, 1 s = u^2 (singular start), 2 s = 1-(1-u)^2
  // (singular end).
  int sub;

  Complex eval(const Real& u, bool& finite) const {
    Real s, jac;
    if (sub == 1) {
      s = u * u;
      jac = 2 * u;
    } else if (sub == 2) {
      Real v = 1 - u;
      s = 1 - v * v;
      jac = 2 * v;
    } else {
      s = u;
      jac = Real(1);
    }
    Complex z = seg->point(s);
    Complex vel = seg->velocity(s);
    Complex fv = (*f)(z);
    finite = is_finite(fv);
    Complex meas = arclen ? Complex(abs(vel), Real(0)) : vel;
    return fv * meas * jac;
  }
};

struct Panel {
  Real a, b;
  Complex estimate;
  int depth;
};

QuadResult quad_mapped(const Mapped& m, const Real& a, const Real& b, const QuadOptions& opt) {
  const auto& [xs, ws] = gauss_legendre(opt.order);
  QuadResult out;

  auto gl = [&](const Real& lo, const Real& hi, bool& finite) -> Complex {
    Complex acc(Real(0), Real(0));
    Real mid = (lo + hi) / 2, half = (hi - lo) / 2;
    finite = true;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      bool ok = true;
      acc += ws[i] * m.eval(mid + half * xs[i], ok);
      finite = finite && ok;
    }
    out.evals += static_cast<long>(xs.size());
    return acc * half;
  };

  bool fin = true;
  std::vector<Panel> stack;
  stack.push_back({a, b, gl(a, b, fin), 0});
  if (!fin) {
    out.flag = QuadFlag::NonFinite;
    return out;
  }

  Real span = b - a;
  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    if (out.evals > opt.max_evals) {
      out.flag = QuadFlag::BudgetExceeded;
      out.value += p.estimate;
      continue;
    }
    Real mid = (p.a + p.b) / 2;
    bool fin1 = true, fin2 = true;
    Complex left = gl(p.a, mid, fin1);
    Complex right = gl(mid, p.b, fin2);
    if (!fin1 || !fin2) {
      out.flag = QuadFlag::NonFinite;
      out.value += p.estimate;
      continue;
    }
    Complex refined = left + right;
    Real err = abs(refined - p.estimate);
    // Per-panel budget proportional to parameter length keeps the total
    // below opt.tol.
    if (err <= opt.tol * ((p.b - p.a) / span) || p.depth >= opt.max_depth) {
      if (p.depth >= opt.max_depth && err > opt.tol * ((p.b - p.a) / span))
        out.flag = QuadFlag::BudgetExceeded;
      out.value += refined;
      out.est_error += err;
    } else {
      stack.push_back({p.a, mid, left, p.depth + 1});
      stack.push_back({mid, p.b, right, p.depth + 1});
    }
  }
  return out;
}

QuadResult quad_segment_impl(const Integrand& f, const Segment& seg, const QuadOptions& opt,
                             bool arclen) {
  // Halve the tolerance per substitution piece when both ends are singular.
  if (seg.singular_start && seg.singular_end) {
    Real mid(0.5);
    Segment first = seg, second = seg;
    // Split at parameter 1/2 by re-parametrizing each half back to [0,1].
    // Only Line and EllipseArc can carry singular flags in practice.
    QuadResult r1, r2;
    if (seg.kind == Segment::Kind::Line) {
      Complex zm = seg.point(mid);
      first = Segment::line(seg.a, zm, true, false);
      second = Segment::line(zm, seg.b, false, true);
    } else if (seg.kind == Segment::Kind::EllipseArc) {
      Real thm = seg.th0 + mid * (seg.th1 - seg.th0);
      first = seg;
      first.th1 = thm;
      first.singular_end = false;
      second = seg;
      second.th0 = thm;
      second.singular_start = false;
    }
    QuadOptions half_opt = opt;
    half_opt.tol = opt.tol / 2;
    r1 = quad_segment_impl(f, first, half_opt, arclen);
    r2 = quad_segment_impl(f, second, half_opt, arclen);
    QuadResult out;
    out.value = r1.value + r2.value;
    out.est_error = r1.est_error + r2.est_error;
    out.evals = r1.evals + r2.evals;
    out.flag = r1.ok() ? r2.flag : r1.flag;
    return out;
  }

  Mapped m{&f, &seg, arclen, seg.singular_start ? 1 : (seg.singular_end ? 2 : 0)};
  return quad_mapped(m, Real(0), Real(1), opt);
}

}  // namespace

QuadResult quad_segment(const Integrand& f, const Segment& seg, const QuadOptions& opt) {
  return quad_segment_impl(f, seg, opt, false);
}

QuadResult quad_path(const Integrand& f, const Path& path, const QuadOptions& opt) {
  QuadResult out;
  if (path.empty()) return out;
  QuadOptions per = opt;
  per.tol = opt.tol / static_cast<int>(path.segs.size());
  for (const auto& seg : path.segs) {
    QuadResult r = quad_segment_impl(f, seg, per, false);
    out.value += r.value;
    out.est_error += r.est_error;
    out.evals += r.evals;
    if (!r.ok()) out.flag = r.flag;
  }
  return out;
}

QuadResult quad_path_arclen(const Integrand& f, const Path& path, const QuadOptions& opt) {
  QuadResult out;
  if (path.empty()) return out;
  QuadOptions per = opt;
  per.tol = opt.tol / static_cast<int>(path.segs.size());
  for (const auto& seg : path.segs) {
    QuadResult r = quad_segment_impl(f, seg, per, true);
    out.value += r.value;
    out.est_error += r.est_error;
    out.evals += r.evals;
    if (!r.ok()) out.flag = r.flag;
  }
  return out;
}

}  // namespace padelab
