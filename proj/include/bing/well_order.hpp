#pragma once

#include <vector>

#include "bing/point.hpp"

namespace bing {

// Canonical enumeration of all rational points of the space: ordered by
// height max(|p|,q,|r|,s) of x = p/q, y = r/s in lowest terms, ties broken
// lexicographically by (x, y). Deterministic; grown one height level at a
// time and cached.
class WellOrder {
 public:
  const Point& at(size_t i);

  // position in the enumeration (linear in the point's height level)
  size_t index_of(const Point& z);

  // strict "comes before" in the canonical order, computed directly
  static bool precedes(const Point& a, const Point& b);

  // all reduced rationals v with max(|num|, den) <= h, sorted by value
  static std::vector<Rat> rationals_up_to(const Int& h, bool nonnegative);

  // all points with height exactly h, in canonical order
  static std::vector<Point> level(const Int& h);

 private:
  void grow();

  std::vector<Point> cache_;
  Int grown_ = 0;
};

}  // namespace bing
