#include "bing/refine.hpp"

#include <cassert>
#include <optional>

#include "bing/errors.hpp"

namespace bing {

namespace {

// bound of the free component around x: either a rational wall of the room
// or a cut endpoint of an earlier interval (cuts may be reused as shared
// endpoints, rational walls may not be touched)
struct Wall {
  QuadSum value;
  bool is_cut;
};

// least lattice numerator m with m/2^j admissible on the low side
std::optional<Rat> low_cut_at_level(const Wall& w, const QF3& x, const Rat& scale) {
  Int m;
  if (w.is_cut) {
    // cut walls: q >= wall's q, i.e. m >= wall * 2^j
    m = ceil_quadsum(scale * (w.value - QuadSum::from_cut(Cut(Rat(0)))));
  } else {
    // rational walls: need wall < m/2^j + sqrt2 strictly
    m = floor_quadsum(scale * (w.value - QuadSum(Rat(0), Rat(1), Rat(0), Rat(0)))) + 1;
  }
  Rat q = Rat(m) / scale;
  // the cut must still lie strictly below x
  if (cut_compare_qf3(Cut(q), x) == Order::LT) return q;
  return std::nullopt;
}

std::optional<Rat> high_cut_at_level(const Wall& w, const QF3& x, const Rat& scale) {
  Int m;
  if (w.is_cut) {
    m = floor_quadsum(scale * (w.value - QuadSum::from_cut(Cut(Rat(0)))));
  } else {
    m = ceil_quadsum(scale * (w.value - QuadSum(Rat(0), Rat(1), Rat(0), Rat(0)))) - 1;
  }
  Rat q = Rat(m) / scale;
  if (cut_compare_qf3(Cut(q), x) == Order::GT) return q;
  return std::nullopt;
}

}  // namespace

RefineResult convex_refine(const std::vector<QF3>& values,
                           const std::vector<RatIv>& rooms,
                           size_t max_intervals) {
  if (values.size() != rooms.size()) throw InputError("convex_refine: size mismatch");
  for (size_t i = 0; i < values.size(); ++i)
    if (!rooms[i].contains(values[i]))
      throw InputError("convex_refine: value outside its own room");

  RefineResult res;
  std::vector<bool> covered(values.size(), false);
  size_t scan = 0;

  for (size_t round = 0; round < max_intervals; ++round) {
    while (scan < values.size() && covered[scan]) ++scan;
    if (scan == values.size()) break;
    size_t n = scan;
    const QF3& x = values[n];
    const RatIv& room = rooms[n];

    // free component of room \ (earlier intervals) around x
    Wall lo{QuadSum(room.lo), false};
    Wall hi{QuadSum(room.hi), false};
    for (const CutIv& b : res.intervals) {
      QuadSum blo = QuadSum::from_cut(Cut(b.lo)), bhi = QuadSum::from_cut(Cut(b.hi));
      if (cut_compare_qf3(Cut(b.hi), x) == Order::LT) {
        if (sign_quadsum(bhi - lo.value) > 0) lo = Wall{bhi, true};
      } else {
        assert(cut_compare_qf3(Cut(b.lo), x) == Order::GT);
        if (sign_quadsum(hi.value - blo) > 0) hi = Wall{blo, true};
      }
    }

    // smallest dyadic level admitting cuts on both sides of x
    Rat scale(1);
    for (;;) {
      auto c1 = low_cut_at_level(lo, x, scale);
      auto c2 = high_cut_at_level(hi, x, scale);
      if (c1 && c2) {
        res.intervals.emplace_back(*c1, *c2);
        res.chosen.push_back(n);
        break;
      }
      scale *= 2;
    }

    const CutIv& placed = res.intervals.back();
    for (size_t i = scan; i < values.size(); ++i)
      if (!covered[i] && placed.contains(values[i])) covered[i] = true;
  }
  return res;
}

}  // namespace bing
