#pragma once

#include <vector>

#include "bing/interval.hpp"

namespace bing {

// open interval with rational endpoints, the "allowed room" around one
// enumerated value
struct RatIv {
  Rat lo, hi;
  bool contains(const QF3& v) const {
    return qf3_sign(v - QF3(lo)) > 0 && qf3_sign(QF3(hi) - v) > 0;
  }
};

struct RefineResult {
  std::vector<CutIv> intervals;   // pairwise disjoint, B_k inside its room
  std::vector<size_t> chosen;     // n_k: index of the value that forced B_k
};

// Greedy disjoint refinement: repeatedly take the least-index value not yet
// covered and carve the largest dyadic-endpoint interval around it that fits
// inside its room and avoids everything carved so far. Stops after
// max_intervals rounds or once the whole enumeration prefix is covered.
RefineResult convex_refine(const std::vector<QF3>& values,
                           const std::vector<RatIv>& rooms,
                           size_t max_intervals);

}  // namespace bing
