#include "bing/topology.hpp"

#include <algorithm>
#include <cassert>

#include "bing/errors.hpp"

namespace bing {

BasicNbhd::BasicNbhd(Point z, Rat eps) : center(std::move(z)), radius(std::move(eps)) {
  if (radius <= 0) throw InputError("neighborhood radius must be positive");
  if (center.y < 0) throw InputError("center below the base line");
}

namespace {

// |v - c| ? eps, exactly
bool within_open(const QF3& v, const QF3& c, const Rat& eps) {
  QF3 d = v - c;
  return qf3_sign(d + QF3(eps)) > 0 && qf3_sign(QF3(eps) - d) > 0;
}
bool within_closed(const QF3& v, const QF3& c, const Rat& eps) {
  QF3 d = v - c;
  return qf3_sign(d + QF3(eps)) >= 0 && qf3_sign(QF3(eps) - d) >= 0;
}

}  // namespace

bool nbhd_contains(const BasicNbhd& n, const Point& w) {
  if (w == n.center) return true;
  if (!w.on_base()) return false;
  QF3 v{w.x, Rat(0)};
  return within_open(v, proj_minus(n.center), n.radius) ||
         within_open(v, proj_plus(n.center), n.radius);
}

bool strip_closure_contains(const QF3& x, const Rat& eps, const Point& b) {
  return within_closed(proj_minus(b), x, eps) || within_closed(proj_plus(b), x, eps);
}

bool nbhd_closure_contains(const BasicNbhd& n, const Point& b) {
  if (b == n.center) return true;
  return strip_closure_contains(proj_minus(n.center), n.radius, b) ||
         strip_closure_contains(proj_plus(n.center), n.radius, b);
}

bool ritter_regular_nbhd_contains(const BasicNbhd& n, const Point& b) {
  if (b == n.center) return true;
  QF3 zm = proj_minus(n.center), zp = proj_plus(n.center);
  auto in_trace = [&](const QF3& v) {
    return within_open(v, zm, n.radius) || within_open(v, zp, n.radius);
  };
  return in_trace(proj_minus(b)) && in_trace(proj_plus(b));
}

BasicNbhd affine_map_nbhd(const Rat& a, const Rat& b, const BasicNbhd& n) {
  return BasicNbhd(affine_map(a, b, n.center), a * n.radius);
}

// ---- theta-discreteness ----------------------------------------------

ThetaWitness theta_discrete_finite(const std::vector<Point>& d) {
  ThetaWitness w;
  // collect projection values tagged by owner
  std::vector<std::pair<QF3, size_t>> vals;
  for (size_t i = 0; i < d.size(); ++i) {
    vals.emplace_back(proj_minus(d[i]), i);
    if (!d[i].on_base()) vals.emplace_back(proj_plus(d[i]), i);
  }
  std::sort(vals.begin(), vals.end(),
            [](const auto& a, const auto& b) { return qf3_less(a.first, b.first); });
  // distinct points never share a projection value; the least cross-owner
  // gap is attained between sort-adjacent values
  std::optional<QF3> gap;
  for (size_t i = 0; i + 1 < vals.size(); ++i) {
    if (vals[i].second == vals[i + 1].second) continue;
    QF3 g = vals[i + 1].first - vals[i].first;
    assert(qf3_sign(g) > 0);
    if (!gap || qf3_less(g, *gap)) gap = g;
  }
  if (!gap) return w;  // zero or one point: nothing to separate
  w.min_gap = gap;
  if (gap->is_rational()) {
    w.separation_radius = gap->r0 / 3;
  } else {
    // largest dyadic at or below gap/3
    Rat third_num = gap->r0 / 3, third_sqrt = gap->r1 / 3;
    QuadSum third{third_num, Rat(0), third_sqrt, Rat(0)};
    Rat r(1);
    while (sign_quadsum(third - QuadSum(r)) < 0) r /= 2;
    w.separation_radius = r;
  }
  return w;
}

bool separation_holds(const std::vector<Point>& d, const Rat& radius) {
  for (const Point& b : d) {
    BasicNbhd n(b, radius);
    for (const Point& other : d) {
      if (other == b) continue;
      if (nbhd_closure_contains(n, other)) return false;
    }
  }
  return true;
}

// ---- examples ----------------------------------------------------------

Point example1_member(unsigned long k) {
  if (k < 1) throw InputError("family index starts at 1");
  return {Rat(0), Rat(1, k)};
}

Int example1_audit(const Rat& eps) {
  if (eps <= 0) throw InputError("radius must be positive");
  // least K >= 1 with 3*q^2 <= p^2*K^2 for eps = p/q
  Int p = eps.get_num(), q = eps.get_den();
  Int target = 3 * q * q, pp = p * p;
  Int k = sqrt(target / pp);
  if (k < 1) k = 1;
  while (k * k * pp < target) ++k;
  while (k > 1 && (k - 1) * (k - 1) * pp >= target) --k;
  return k;
}

std::vector<Point> example2_window(long lo, long hi) {
  if (lo > hi) throw InputError("empty window");
  std::vector<Point> out;
  for (long k = lo; k <= hi; ++k) out.emplace_back(Rat(k), Rat(0));
  return out;
}

}  // namespace bing
