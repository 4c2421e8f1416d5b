#include "bing/candidate.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <utility>

#include "bing/errors.hpp"
#include "bing/well_order.hpp"

namespace bing {

namespace {

struct Budget {
  long long left;
  void spend(long long c = 1) {
    left -= c;
    if (left < 0) throw CapError("candidate search budget exhausted");
  }
};

// endpoint of a part as a QuadSum, i.e. v + sqrt2
QuadSum qs_cut(const Rat& v) { return QuadSum(v, Rat(1), Rat(0), Rat(0)); }

struct PairIJ {
  CutIv i, j;
};

// Ordered part pairs (minus projection lands in i, plus projection in j).
// For a single cell both orders arise from the same part list; for two cells
// each orientation across the pair is admissible.
std::vector<PairIJ> build_pairs(const DiamondCell& d) {
  std::vector<PairIJ> out;
  if (d.u.id == d.v.id) {
    for (const auto& a : d.u.parts)
      for (const auto& b : d.u.parts) out.push_back({a, b});
  } else {
    for (const auto& a : d.u.parts)
      for (const auto& b : d.v.parts) out.push_back({a, b});
    for (const auto& a : d.v.parts)
      for (const auto& b : d.u.parts) out.push_back({a, b});
  }
  return out;
}

// Open height band for a pair: the two projections differ by 2*sqrt3*y, so
// y ranges over (j.lo - i.hi, j.hi - i.lo) / (2*sqrt3), clamped to y > 0.
// a / (2*sqrt3) = (a/6)*sqrt3.
bool band_of(const CutIv& i, const CutIv& j, QuadSum& lo, QuadSum& hi) {
  lo = QuadSum(Rat(0), Rat(0), Rat(j.lo - i.hi) / 6, Rat(0));
  hi = QuadSum(Rat(0), Rat(0), Rat(j.hi - i.lo) / 6, Rat(0));
  if (sign_quadsum(lo) < 0) lo = QuadSum(Rat(0));
  return sign_quadsum(hi - lo) > 0;
}

// Admissible x window at height y: x - sqrt3*y must land in i + sqrt2 and
// x + sqrt3*y in j + sqrt2.
bool x_window(const CutIv& i, const CutIv& j, const Rat& y, QuadSum& lo, QuadSum& hi) {
  QuadSum lo1(i.lo, Rat(1), y, Rat(0));
  QuadSum hi1(i.hi, Rat(1), y, Rat(0));
  QuadSum lo2(j.lo, Rat(1), -y, Rat(0));
  QuadSum hi2(j.hi, Rat(1), -y, Rat(0));
  lo = sign_quadsum(lo1 - lo2) >= 0 ? lo1 : lo2;
  hi = sign_quadsum(hi1 - hi2) <= 0 ? hi1 : hi2;
  return sign_quadsum(hi - lo) > 0;
}

// Lazy Stern-Brocot splitting of an open interval, breadth first, so every
// rational of the interval shows up at some finite index.
struct SBStream {
  std::vector<Rat> items;
  std::deque<std::pair<QuadSum, QuadSum>> frontier;

  SBStream() = default;
  SBStream(const QuadSum& lo, const QuadSum& hi) {
    if (sign_quadsum(hi - lo) > 0) frontier.emplace_back(lo, hi);
  }

  const Rat* get(size_t idx, Budget& budget) {
    while (items.size() <= idx) {
      if (frontier.empty()) return nullptr;
      auto iv = frontier.front();
      frontier.pop_front();
      budget.spend();
      Rat m = simplest_between(iv.first, iv.second);
      items.push_back(m);
      QuadSum mq(m);
      frontier.emplace_back(iv.first, mq);
      frontier.emplace_back(mq, iv.second);
    }
    return &items[idx];
  }
};

// All reduced rationals of height <= bound in the open interval, unsorted.
// Splitting at the simplest element keeps every node's denominator minimal
// for its subinterval, so den > bound prunes the whole branch; a branch
// whose values all exceed bound in absolute value cannot hold heights
// <= bound either.
void collect_rats(const QuadSum& lo0, const QuadSum& hi0, const Int& bound,
                  std::vector<Rat>& out, Budget& budget) {
  if (bound < 1 || sign_quadsum(hi0 - lo0) <= 0) return;
  QuadSum hb{Rat(bound)}, nhb{-Rat(bound)};
  std::vector<std::pair<QuadSum, QuadSum>> st{{lo0, hi0}};
  while (!st.empty()) {
    auto [lo, hi] = st.back();
    st.pop_back();
    budget.spend();
    if (sign_quadsum(lo - hb) >= 0) continue;
    if (sign_quadsum(hi - nhb) <= 0) continue;
    Rat m = simplest_between(lo, hi);
    if (m.get_den() > bound) continue;
    if (rat_height(m) <= bound) out.push_back(m);
    QuadSum mq(m);
    st.emplace_back(lo, mq);
    st.emplace_back(mq, hi);
  }
}

// Leftmost rational in the open interval with height <= h0, skipping excl.
std::optional<Rat> leftmost_le(const QuadSum& lo0, const QuadSum& hi0, const Int& h0,
                               const std::set<Rat>* excl, Budget& budget) {
  struct Node {
    QuadSum lo, hi;
    bool is_val;
    Rat val;
  };
  QuadSum hb{Rat(h0)}, nhb{-Rat(h0)};
  std::vector<Node> st;
  st.push_back({lo0, hi0, false, Rat(0)});
  while (!st.empty()) {
    Node n = st.back();
    st.pop_back();
    if (n.is_val) {
      if (rat_height(n.val) <= h0 && (!excl || !excl->count(n.val))) return n.val;
      continue;
    }
    budget.spend();
    if (sign_quadsum(n.hi - n.lo) <= 0) continue;
    if (sign_quadsum(n.lo - hb) >= 0) continue;
    if (sign_quadsum(n.hi - nhb) <= 0) continue;
    Rat m = simplest_between(n.lo, n.hi);
    if (m.get_den() > h0) continue;
    QuadSum mq(m);
    st.push_back({mq, n.hi, false, Rat(0)});
    st.push_back({n.lo, n.hi, true, m});
    st.push_back({n.lo, mq, false, Rat(0)});
  }
  return std::nullopt;
}

// Minimal height over the interval's rationals, capped at limit. Branch and
// bound: a subinterval whose simplest element already has denominator >= the
// incumbent cannot improve, nor can one lying beyond it in absolute value.
std::optional<Int> min_height_in(const QuadSum& lo0, const QuadSum& hi0, const Int& limit,
                                 const std::set<Rat>* excl, Budget& budget) {
  Int hbest = limit + 1;
  std::vector<std::pair<QuadSum, QuadSum>> st{{lo0, hi0}};
  while (!st.empty()) {
    auto [lo, hi] = st.back();
    st.pop_back();
    budget.spend();
    if (sign_quadsum(hi - lo) <= 0) continue;
    if (sign_quadsum(lo - QuadSum(Rat(hbest))) >= 0) continue;
    if (sign_quadsum(hi + QuadSum(Rat(hbest))) <= 0) continue;
    Rat m = simplest_between(lo, hi);
    if (m.get_den() >= hbest) continue;
    Int h = rat_height(m);
    if (h < hbest && (!excl || !excl->count(m))) hbest = h;
    QuadSum mq(m);
    st.emplace_back(lo, mq);
    st.emplace_back(mq, hi);
  }
  if (hbest > limit) return std::nullopt;
  return hbest;
}

Point check_found(const DiamondCell& d, const Point& z, bool want_base) {
  if (z.on_base() != want_base || !diamond_contains(d, z))
    throw VerifyError("candidate postcondition violated at " + format_point(z));
  return z;
}

}  // namespace

std::vector<Rat> rationals_in_interval(const QuadSum& lo, const QuadSum& hi,
                                       const Int& bound) {
  std::vector<Rat> out;
  Budget budget{1LL << 62};
  collect_rats(lo, hi, bound, out, budget);
  std::sort(out.begin(), out.end());
  return out;
}

Point simplest_candidate(const DiamondCell& d, const std::vector<Point>& forbid,
                         bool want_base, const CandidateConfig& cfg) {
  Budget budget{cfg.exact_node_budget};
  std::set<Point> fb(forbid.begin(), forbid.end());

  if (want_base) {
    if (d.u.id != d.v.id)
      throw VerifyError("diamond " + d.u.id + "|" + d.v.id + " has no boundary trace");
    std::vector<SBStream> streams;
    for (const auto& part : d.u.parts)
      streams.emplace_back(qs_cut(part.lo), qs_cut(part.hi));
    for (long long r = 0; r <= cfg.stream_round_budget; ++r) {
      for (auto& s : streams) {
        const Rat* x = s.get(static_cast<size_t>(r), budget);
        if (!x) continue;
        Point z(*x, Rat(0));
        if (!fb.count(z)) return check_found(d, z, true);
      }
    }
    throw CapError("boundary candidate stream exhausted");
  }

  auto pairs = build_pairs(d);
  size_t np = pairs.size();
  std::vector<SBStream> ys(np);
  std::vector<char> live(np, 0);
  for (size_t p = 0; p < np; ++p) {
    QuadSum lo, hi;
    if (band_of(pairs[p].i, pairs[p].j, lo, hi)) {
      ys[p] = SBStream(lo, hi);
      live[p] = 1;
    }
  }
  std::vector<std::vector<SBStream>> xs(np);

  // Diagonal sweep over (pair, y index, x index) so no empty window can
  // starve the rest of the search.
  for (long long t = 0; t <= cfg.stream_round_budget; ++t) {
    for (size_t p = 0; p < np && static_cast<long long>(p) <= t; ++p) {
      if (!live[p]) continue;
      for (long long i = 0; i + static_cast<long long>(p) <= t; ++i) {
        long long j = t - static_cast<long long>(p) - i;
        const Rat* y = ys[p].get(static_cast<size_t>(i), budget);
        if (!y) break;
        while (static_cast<long long>(xs[p].size()) <= i) {
          const Rat* yk = ys[p].get(xs[p].size(), budget);
          QuadSum xlo, xhi;
          if (yk && x_window(pairs[p].i, pairs[p].j, *yk, xlo, xhi))
            xs[p].emplace_back(xlo, xhi);
          else
            xs[p].emplace_back();
        }
        const Rat* x = xs[p][static_cast<size_t>(i)].get(static_cast<size_t>(j), budget);
        if (!x) continue;
        Point z(*x, *y);
        if (!fb.count(z)) return check_found(d, z, false);
      }
    }
  }
  throw CapError("diamond candidate stream exhausted");
}

Point candidate_in_diamond(const DiamondCell& d, const std::vector<Point>& forbid,
                           bool want_base, const CandidateConfig& cfg) {
  Budget budget{cfg.exact_node_budget};
  std::set<Point> fb(forbid.begin(), forbid.end());

  if (want_base) {
    if (d.u.id != d.v.id)
      throw VerifyError("diamond " + d.u.id + "|" + d.v.id + " has no boundary trace");
    std::optional<Point> best;
    for (const auto& part : d.u.parts) {
      QuadSum lo = qs_cut(part.lo), hi = qs_cut(part.hi);
      Int bound = rat_height(simplest_between(lo, hi));
      std::optional<Point> pb;
      while (!pb) {
        std::vector<Rat> found;
        collect_rats(lo, hi, bound, found, budget);
        for (const auto& x : found) {
          Point z(x, Rat(0));
          if (fb.count(z)) continue;
          if (!pb || WellOrder::precedes(z, *pb)) pb = z;
        }
        bound *= 2;
      }
      if (!best || WellOrder::precedes(*pb, *best)) best = *pb;
    }
    return check_found(d, *best, true);
  }

  // A reproducible valid point seeds the height bound; everything at or
  // below that bound is then examined exhaustively, denominator by
  // denominator on the y side.
  Point best = simplest_candidate(d, forbid, false, cfg);
  Int hbest = point_height(best);
  std::map<Rat, std::set<Rat>> fby;
  for (const auto& f : forbid) fby[f.y].insert(f.x);

  for (const auto& pr : build_pairs(d)) {
    QuadSum ylo, yhi;
    if (!band_of(pr.i, pr.j, ylo, yhi)) continue;
    for (Int s = 1; s <= hbest; ++s) {
      budget.spend();
      Int rlo = floor_quadsum(Rat(s) * ylo) + 1;
      Int rhi = ceil_quadsum(Rat(s) * yhi) - 1;
      if (rlo < 1) rlo = 1;
      for (Int r = rlo; r <= rhi; ++r) {
        if (gcd(r, s) != 1) continue;
        Int hy = r > s ? r : s;
        if (hy > hbest) continue;
        Rat y = Rat(r) / Rat(s);
        QuadSum xlo, xhi;
        if (!x_window(pr.i, pr.j, y, xlo, xhi)) continue;
        const std::set<Rat>* ex = nullptr;
        auto it = fby.find(y);
        if (it != fby.end()) ex = &it->second;
        // With y's height fixed, the best partner is the leftmost x no
        // taller than y; failing that, the shortest x available.
        std::optional<Point> cand;
        auto xa = leftmost_le(xlo, xhi, hy, ex, budget);
        if (xa) {
          cand = Point(*xa, y);
        } else {
          auto hm = min_height_in(xlo, xhi, hbest, ex, budget);
          if (hm) {
            auto xb = leftmost_le(xlo, xhi, *hm, ex, budget);
            if (xb) cand = Point(*xb, y);
          }
        }
        if (cand && WellOrder::precedes(*cand, best)) {
          best = *cand;
          hbest = point_height(best);
        }
      }
    }
  }
  return check_found(d, best, false);
}

}  // namespace bing
