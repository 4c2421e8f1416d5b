#include "bing/well_order.hpp"

#include <algorithm>

#include "bing/errors.hpp"

namespace bing {

std::vector<Rat> WellOrder::rationals_up_to(const Int& h, bool nonnegative) {
  std::vector<Rat> out;
  for (Int den = 1; den <= h; ++den) {
    for (Int num = nonnegative ? Int(0) : -h; num <= h; ++num) {
      if (gcd(abs(num), den) != 1) continue;
      out.emplace_back(num, den);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Point> WellOrder::level(const Int& h) {
  std::vector<Rat> xs = rationals_up_to(h, false);
  std::vector<Rat> ys = rationals_up_to(h, true);
  std::vector<Point> out;
  for (const Rat& x : xs)
    for (const Rat& y : ys) {
      if (rat_height(x) < h && rat_height(y) < h) continue;
      if (rat_height(x) > h || rat_height(y) > h) continue;
      out.emplace_back(x, y);
    }
  // xs, ys are sorted, so the double loop is already lexicographic
  return out;
}

void WellOrder::grow() {
  grown_ += 1;
  std::vector<Point> lvl = level(grown_);
  cache_.insert(cache_.end(), lvl.begin(), lvl.end());
}

const Point& WellOrder::at(size_t i) {
  while (cache_.size() <= i) grow();
  return cache_[i];
}

size_t WellOrder::index_of(const Point& z) {
  if (z.y < 0) throw InputError("index_of: point below the base line");
  Int h = point_height(z);
  while (grown_ < h) grow();
  for (size_t i = 0; i < cache_.size(); ++i)
    if (cache_[i] == z) return i;
  throw InputError("index_of: point not reduced?");
}

bool WellOrder::precedes(const Point& a, const Point& b) {
  Int ha = point_height(a), hb = point_height(b);
  if (ha != hb) return ha < hb;
  int c = cmp(a.x, b.x);
  if (c != 0) return c < 0;
  return a.y < b.y;
}

}  // namespace bing
