#pragma once

#include "bing/algebra.hpp"

namespace bing {

// clopen interval (lo + sqrt2, hi + sqrt2) of the projection line; the
// sqrt2 offset keeps both endpoints outside Q + Q*sqrt3, so membership is
// never borderline
struct CutIv {
  Rat lo, hi;  // lo < hi

  CutIv() : lo(0), hi(0) {}
  CutIv(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {}

  bool contains(const QF3& v) const {
    return cut_compare_qf3(Cut(lo), v) == Order::LT && cut_compare_qf3(Cut(hi), v) == Order::GT;
  }
  Rat diameter() const { return hi - lo; }
  bool contains_iv(const CutIv& o) const { return lo <= o.lo && o.hi <= hi; }
  bool disjoint(const CutIv& o) const { return hi <= o.lo || o.hi <= lo; }

  friend bool operator==(const CutIv& a, const CutIv& b) { return a.lo == b.lo && a.hi == b.hi; }
};

}  // namespace bing
