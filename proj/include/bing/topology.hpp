#pragma once

#include <optional>
#include <vector>

#include "bing/point.hpp"

namespace bing {

// N(z, eps) = {z} together with the two base strips
//   { w on the base : |w.x - proj(z)| < eps }  for proj in {z-, z+}
struct BasicNbhd {
  Point center;
  Rat radius;  // positive rational

  BasicNbhd(Point z, Rat eps);
};

// w in N(z, eps): w == z, or w is a base point within eps of a projection
bool nbhd_contains(const BasicNbhd& n, const Point& w);

// b in closure(N(z, eps)): b == z, or some projection of b lies within
// closed distance eps of some projection of z
bool nbhd_closure_contains(const BasicNbhd& n, const Point& b);

// b in int(closure(N(z, eps))): b == z, or both projections of b lie in
// the union of the open eps-intervals around z's projections. This is the
// membership predicate of the corresponding regular-open set.
bool ritter_regular_nbhd_contains(const BasicNbhd& n, const Point& b);

// closure of the single base strip {w : |x - w| < eps} contains b
bool strip_closure_contains(const QF3& x, const Rat& eps, const Point& b);

BasicNbhd affine_map_nbhd(const Rat& a, const Rat& b, const BasicNbhd& n);

// ---- finite theta-discreteness witness -----------------------------

struct ThetaWitness {
  bool theta_discrete = true;      // finite sets always are
  std::optional<QF3> min_gap;      // least distance between projection
                                   // values of distinct points
  std::optional<Rat> separation_radius;  // rational radius r with
                                         // closure(N(b, r)) meeting D only
                                         // in b, for every b in D
};

ThetaWitness theta_discrete_finite(const std::vector<Point>& d);

// every element of d is separated at the given radius (exact check)
bool separation_holds(const std::vector<Point>& d, const Rat& radius);

// ---- worked examples ------------------------------------------------

// the sequence (0, 1/k), k >= 1, converging to the origin in the
// euclidean sense but with projections +-sqrt3/k
Point example1_member(unsigned long k);

// least K with closure(N((0,0), eps)) containing every (0, 1/k), k >= K;
// equivalently least K with 3 <= eps^2 K^2
Int example1_audit(const Rat& eps);

// integer base points k in [lo, hi]
std::vector<Point> example2_window(long lo, long hi);

}  // namespace bing
