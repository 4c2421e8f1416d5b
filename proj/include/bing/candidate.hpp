#pragma once

#include <vector>

#include "bing/partition.hpp"

namespace bing {

// Knobs for the diamond point searches. Budgets count internal enumeration
// steps; blowing one raises CapError, which in practice means the diamond is
// degenerate or the forbidden set is absurdly large.
struct CandidateConfig {
  long long exact_node_budget = 5000000;
  long long stream_round_budget = 200000;
};

// All reduced rationals in the open interval (lo, hi) with
// max(|num|, den) <= bound, in ascending numeric order.
std::vector<Rat> rationals_in_interval(const QuadSum& lo, const QuadSum& hi,
                                       const Int& bound);

// Deterministic "simplest first" point of the diamond: walks Stern-Brocot
// splittings of the admissible y bands and per-y x windows on a diagonal
// schedule and returns the first point not in `forbid`. Existence only; the
// result is reproducible but not the least in the canonical point order.
Point simplest_candidate(const DiamondCell& d, const std::vector<Point>& forbid,
                         bool want_base, const CandidateConfig& cfg = {});

// The least point of the diamond in the canonical order (height, then x,
// then y) avoiding `forbid`, with the requested parity: want_base picks
// points on the boundary line, otherwise strictly above it. Exhaustive up to
// a height bound seeded by simplest_candidate, so the result is exactly the
// canonical minimum.
Point candidate_in_diamond(const DiamondCell& d, const std::vector<Point>& forbid,
                           bool want_base, const CandidateConfig& cfg = {});

}  // namespace bing
