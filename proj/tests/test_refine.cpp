#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "bing/errors.hpp"
#include "bing/refine.hpp"
#include "bing/well_order.hpp"
#include "support/rng.hpp"

using namespace bing;

namespace {

QF3 q3(const Rat& a, const Rat& b) { return QF3{a, b}; }

// every structural promise of a refinement, checked from scratch; interval
// endpoints live at lo + sqrt2, so room containment goes through cuts
void check_result(const RefineResult& r, const std::vector<QF3>& values,
                  const std::vector<RatIv>& rooms) {
  REQUIRE(r.intervals.size() == r.chosen.size());
  for (std::size_t i = 0; i < r.intervals.size(); ++i) {
    const CutIv& iv = r.intervals[i];
    std::size_t k = r.chosen[i];
    REQUIRE(k < values.size());
    CHECK(iv.lo < iv.hi);
    // the forcing value sits inside its interval
    CHECK(iv.contains(values[k]));
    // and the interval sits strictly inside that value's room
    CHECK(cut_compare_qf3(Cut(iv.lo), q3(rooms[k].lo, Rat(0))) == Order::GT);
    CHECK(cut_compare_qf3(Cut(iv.hi), q3(rooms[k].hi, Rat(0))) == Order::LT);
    for (std::size_t j = 0; j < i; ++j) CHECK(iv.disjoint(r.intervals[j]));
  }
  // chosen indices are strictly increasing: always the least uncovered value
  for (std::size_t i = 1; i < r.chosen.size(); ++i) CHECK(r.chosen[i - 1] < r.chosen[i]);
  // prefix coverage: each value up to the last chosen one is in some interval
  if (!r.chosen.empty()) {
    for (std::size_t k = 0; k <= r.chosen.back(); ++k) {
      bool covered = false;
      for (const CutIv& iv : r.intervals) covered = covered || iv.contains(values[k]);
      CHECK(covered);
    }
  }
}

bool all_covered(const RefineResult& r, const std::vector<QF3>& values) {
  for (const QF3& v : values) {
    bool in = false;
    for (const CutIv& iv : r.intervals) in = in || iv.contains(v);
    if (!in) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("one value gets one interval") {
  std::vector<QF3> values = {q3(Rat(0), Rat(0))};
  std::vector<RatIv> rooms = {RatIv{Rat(-1), Rat(1)}};
  auto r = convex_refine(values, rooms, 4);
  REQUIRE(r.intervals.size() == 1);
  CHECK(r.chosen[0] == 0);
  check_result(r, values, rooms);
}

TEST_CASE("separated rooms force separate intervals") {
  std::vector<QF3> values = {q3(Rat(0), Rat(0)), q3(Rat(1) / 10, Rat(0))};
  std::vector<RatIv> rooms = {RatIv{Rat(-1), Rat(1) / 16}, RatIv{Rat(1) / 16, Rat(1)}};
  auto r = convex_refine(values, rooms, 8);
  check_result(r, values, rooms);
  REQUIRE(r.intervals.size() == 2);
  CHECK(r.intervals[0].contains(values[0]));
  CHECK_FALSE(r.intervals[0].contains(values[1]));
  CHECK(r.intervals[1].contains(values[1]));
  CHECK(all_covered(r, values));
}

TEST_CASE("a shared room may be swallowed in one round") {
  std::vector<QF3> values = {q3(Rat(0), Rat(0)), q3(Rat(1) / 10, Rat(0))};
  std::vector<RatIv> rooms = {RatIv{Rat(-1), Rat(1)}, RatIv{Rat(-1), Rat(1)}};
  auto r = convex_refine(values, rooms, 8);
  check_result(r, values, rooms);
  CHECK(all_covered(r, values));
}

TEST_CASE("a value outside its own room is rejected") {
  std::vector<QF3> values = {q3(Rat(5), Rat(0))};
  std::vector<RatIv> rooms = {RatIv{Rat(-1), Rat(1)}};
  CHECK_THROWS_AS(convex_refine(values, rooms, 4), InputError);
  CHECK_THROWS_AS(convex_refine(values, {}, 4), InputError);
}

TEST_CASE("the round cap stops the carving") {
  std::vector<QF3> values;
  std::vector<RatIv> rooms;
  for (int k = 0; k < 10; ++k) {
    values.push_back(q3(Rat(3 * k), Rat(0)));
    rooms.push_back(RatIv{Rat(3 * k - 1), Rat(3 * k + 1)});
  }
  auto r = convex_refine(values, rooms, 4);
  CHECK(r.intervals.size() == 4);
  check_result(r, values, rooms);
  CHECK_FALSE(all_covered(r, values));

  auto full = convex_refine(values, rooms, 10);
  CHECK(full.intervals.size() == 10);
  CHECK(all_covered(full, values));
}

TEST_CASE("deterministic across calls") {
  std::vector<QF3> values = {q3(Rat(0), Rat(1)), q3(Rat(2), Rat(0)), q3(Rat(0), Rat(0)),
                             q3(Rat(1), Rat(1))};
  std::vector<RatIv> rooms(4, RatIv{Rat(-10), Rat(10)});
  auto r1 = convex_refine(values, rooms, 16);
  auto r2 = convex_refine(values, rooms, 16);
  CHECK(r1.intervals == r2.intervals);
  CHECK(r1.chosen == r2.chosen);
  check_result(r1, values, rooms);
  CHECK(all_covered(r1, values));
}

TEST_CASE("random covers refine cleanly") {
  std::mt19937_64 g(401);
  std::uniform_int_distribution<int> nvals(1, 12);
  for (int trial = 0; trial < 60; ++trial) {
    int n = nvals(g);
    std::vector<QF3> values;
    std::set<std::pair<std::string, std::string>> seen;
    std::vector<RatIv> rooms;
    for (int k = 0; k < n; ++k) {
      QF3 v{testrng::rat(g, 8), testrng::rat(g, 4)};
      auto key = std::make_pair(v.r0.get_str(), v.r1.get_str());
      if (!seen.insert(key).second) {
        --k;
        continue;
      }
      values.push_back(v);
      Rat pad = testrng::positive_rat(g, 4) + 8;
      // generous rational room sure to contain v: |v - r0| <= 4*sqrt3 < 8
      rooms.push_back(RatIv{v.r0 - pad, v.r0 + pad});
    }
    auto r = convex_refine(values, rooms, 64);
    check_result(r, values, rooms);
    // every round covers at least the least uncovered value, so 64 rounds
    // on at most 12 values always finish
    CHECK(all_covered(r, values));
  }
}
