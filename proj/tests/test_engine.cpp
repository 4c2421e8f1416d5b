#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "bing/engine.hpp"
#include "bing/errors.hpp"

using namespace bing;

namespace {

using Seed = std::vector<std::pair<Point, Point>>;

Point pt(long x, long y) { return Point(Rat(x), Rat(y)); }

std::set<std::string> failing(const StageReport& r) {
  std::set<std::string> out;
  for (const auto& c : r.checks)
    if (!c.pass) out.insert(c.name);
  return out;
}

bool has_check(const StageReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return true;
  return false;
}

}  // namespace

TEST_CASE("stage zero accepts the seed variants") {
  // empty seed
  Engine e0({});
  CHECK(e0.depth() == 0);
  CHECK(e0.stage(0).a.empty());
  CHECK(e0.verify(0).pass);
  CHECK(has_check(e0.verify(0), "seed_stage"));

  // base-to-base identity pair
  Engine e1({{pt(0, 0), pt(0, 0)}});
  CHECK(e1.verify(0).pass);
  CHECK_FALSE(e1.mode_of(pt(0, 0)).has_value());  // base points carry no mode

  // parity-crossing pair: the off-base image is glued into a double cell
  Engine e2({{pt(0, 0), pt(0, 1)}});
  CHECK(e2.verify(0).pass);
  REQUIRE(e2.mode_of(pt(0, 1)).has_value());
  CHECK(*e2.mode_of(pt(0, 1)) == CellMode::doubled);
  Cell c = e2.stage(0).cover->cell_of(QF3(Rat(0)));
  CHECK(e2.stage(0).phi->apply(c).is_double());

  // off-base to off-base pair: both endpoints stay paired
  Engine e3({{pt(0, 1), pt(0, 2)}});
  CHECK(e3.verify(0).pass);
  CHECK(*e3.mode_of(pt(0, 1)) == CellMode::paired);
  CHECK(*e3.mode_of(pt(0, 2)) == CellMode::paired);
  CHECK(e3.doubled_points().empty());
}

TEST_CASE("bad seeds are rejected") {
  CHECK_THROWS_AS(Engine({{Point(Rat(0), Rat(-1)), pt(0, 0)}}), InputError);
  CHECK_THROWS_AS(Engine({{pt(0, 0), Point(Rat(0), Rat(-1))}}), InputError);
  // duplicated source
  CHECK_THROWS_AS(Engine({{pt(0, 0), pt(0, 0)}, {pt(0, 0), pt(1, 0)}}), InputError);
  // two sources hitting one target
  CHECK_THROWS_AS(Engine({{pt(0, 0), pt(2, 0)}, {pt(1, 0), pt(2, 0)}}), InputError);
}

TEST_CASE("first stage choices from the empty seed are frozen") {
  Engine e({});
  e.extend();
  const Stage& s1 = e.stage(1);
  REQUIRE(s1.chosen.has_value());
  CHECK(s1.chosen->fwd_src == pt(-1, 0));
  CHECK(s1.chosen->fwd_img == pt(-1, 0));
  CHECK(s1.chosen->ret_img == pt(-1, 1));
  CHECK(s1.chosen->ret_src == pt(-1, 1));
  CHECK(s1.a == std::vector<Point>{pt(-1, 0), pt(-1, 1)});
  CHECK(s1.b == std::vector<Point>{pt(-1, 0), pt(-1, 1)});
  CHECK(e.verify(1).pass);
}

TEST_CASE("stages grow by a forward and a return enrollment") {
  Engine e({{pt(0, 0), pt(0, 1)}});
  e.extend_to(8);
  CHECK(e.depth() == 8);
  for (int n = 1; n <= 8; ++n) {
    const Stage& prev = e.stage(n - 1);
    const Stage& s = e.stage(n);
    REQUIRE(s.chosen.has_value());
    // growth: exactly the two chosen points are appended
    REQUIRE(s.a.size() == prev.a.size() + 2);
    REQUIRE(s.b.size() == prev.b.size() + 2);
    CHECK(std::equal(prev.a.begin(), prev.a.end(), s.a.begin()));
    CHECK(std::equal(prev.b.begin(), prev.b.end(), s.b.begin()));
    CHECK(s.a[s.a.size() - 2] == s.chosen->fwd_src);
    CHECK(s.b[s.b.size() - 2] == s.chosen->fwd_img);
    CHECK(s.b.back() == s.chosen->ret_img);
    CHECK(s.a.back() == s.chosen->ret_src);
    // the map extends its predecessor
    for (const auto& [x, y] : prev.f) {
      auto it = s.f.find(x);
      REQUIRE(it != s.f.end());
      CHECK(it->second == y);
    }
    // stage 1+ enrollments preserve parity
    CHECK(s.chosen->fwd_src.on_base() == s.chosen->fwd_img.on_base());
    CHECK(s.chosen->ret_img.on_base() == s.chosen->ret_src.on_base());
    // the full verdict
    StageReport r = e.verify(n);
    INFO(r.summary());
    CHECK(r.pass);
  }
  // mesh halves every stage
  CHECK(e.stage(3).cover->mesh() == Rat(1) / 8);
  CHECK(e.stage(8).cover->mesh() == Rat(1) / 256);
}

TEST_CASE("the verification surface is complete") {
  Engine e({{pt(0, 0), pt(0, 1)}});
  e.extend();
  StageReport r = e.verify(1);
  for (const char* name :
       {"bookkeeping", "mesh_schedule", "admissible", "mode_shape", "images_in_diamond",
        "fwd_src_least", "fwd_img_fresh_in_diamond", "fwd_parity", "ret_img_least",
        "ret_src_fresh", "ret_parity", "ret_img_in_mapped_diamond", "growth", "map_extends",
        "image_cells_nested", "mode_stable"}) {
    INFO(name);
    CHECK(has_check(r, name));
  }
  CHECK(r.summary() == "stage 1: pass");
}

TEST_CASE("verification catches tampered choices") {
  Engine e({});
  e.extend_to(2);
  const Stage& s1 = e.stage(1);
  Stage bad = e.stage(2);

  // a stale forward image: reuse a point already on the image side
  bad.chosen->fwd_img = s1.b[0];
  StageReport r = verify_stage(&s1, bad);
  CHECK_FALSE(r.pass);
  CHECK(failing(r).count("fwd_img_fresh_in_diamond") == 1);

  // a forward source that is not the least missing point
  bad = e.stage(2);
  bad.chosen->fwd_src = Point(Rat(7), Rat(9));
  r = verify_stage(&s1, bad);
  CHECK_FALSE(r.pass);
  CHECK(failing(r).count("fwd_src_least") == 1);

  // a return image that is not the least missing image point
  bad = e.stage(2);
  bad.chosen->ret_img = Point(Rat(9), Rat(7));
  r = verify_stage(&s1, bad);
  CHECK_FALSE(r.pass);
  CHECK(failing(r).count("ret_img_least") == 1);
}

TEST_CASE("verification catches a broken cell bijection") {
  Engine e({{pt(0, 0), pt(0, 1)}});
  Stage s = e.stage(0);
  // identity on cells ignores the forced overrides of the seed
  s.phi = CellBijection::make(s.cover, nullptr, {});
  StageReport r = verify_stage(nullptr, s);
  CHECK_FALSE(r.pass);
  // the image check fails, either by verdict or by aborting on the broken table
  bool image_check_failed = false;
  for (const std::string& name : failing(r))
    image_check_failed = image_check_failed || name.rfind("images_in_diamond", 0) == 0;
  CHECK(image_check_failed);
}

TEST_CASE("verification catches a wrong mesh") {
  Engine e({});
  e.extend();
  Stage bad = e.stage(1);
  bad.cover = LazyPartition::make_root(Rat(1), bad.a, bad.b, {});
  StageReport r = verify_stage(&e.stage(0), bad);
  CHECK_FALSE(r.pass);
  CHECK(failing(r).count("mesh_schedule") == 1);
}

TEST_CASE("classify buckets stage members") {
  Seed seed = {{pt(0, 0), pt(0, 1)}, {pt(0, 2), pt(0, 3)}};
  Engine e(seed);
  e.extend_to(3);
  StageClasses k = classify(e.stage(3), seed);
  CHECK(k.seed_base_to_off == std::vector<Point>{pt(0, 0)});
  CHECK(k.img_of_base_seed == std::vector<Point>{pt(0, 1)});
  CHECK(k.seed_off_to_base.empty());
  // the off-off pair lands in the grown buckets by side
  CHECK(std::find(k.grown_off.begin(), k.grown_off.end(), pt(0, 2)) != k.grown_off.end());
  CHECK(std::find(k.grown_img_off.begin(), k.grown_img_off.end(), pt(0, 3)) !=
        k.grown_img_off.end());
  // sizes add up: every enrolled source is in exactly one bucket
  CHECK(k.seed_off_to_base.size() + k.seed_base_to_off.size() + k.grown_base.size() +
            k.grown_off.size() ==
        e.stage(3).a.size());
}

TEST_CASE("modes are decided once and inherited") {
  // the crossing pair forces doubled; the off-off pair stays paired unless
  // its component later touches a doubled point
  Seed seed = {{pt(0, 1), pt(0, 2)}, {pt(1, 0), pt(1, 1)}};
  Engine e(seed);
  CHECK(*e.mode_of(pt(0, 1)) == CellMode::paired);
  CHECK(*e.mode_of(pt(0, 2)) == CellMode::paired);
  CHECK(*e.mode_of(pt(1, 1)) == CellMode::doubled);
  auto dbl0 = e.doubled_points();
  CHECK(dbl0 == std::vector<Point>{pt(1, 1)});

  e.extend_to(10);
  // a mode, once set, never flips
  CHECK(*e.mode_of(pt(0, 1)) == CellMode::paired);
  CHECK(*e.mode_of(pt(1, 1)) == CellMode::doubled);
  for (const Point& d : dbl0) {
    auto now = e.doubled_points();
    CHECK(std::find(now.begin(), now.end(), d) != now.end());
  }
  for (int n = 0; n <= 10; ++n) CHECK(e.verify(n).pass);
}

TEST_CASE("evaluate and inverse_evaluate agree") {
  Engine e({{pt(0, 0), pt(0, 1)}});
  WellOrder wo;
  for (std::size_t i = 0; i < 12; ++i) {
    Point z = wo.at(i);
    Point w = e.evaluate(z, 128);
    CHECK(e.inverse_evaluate(w, 128) == z);
  }
  // seed pairs evaluate to their prescribed images without extension
  Engine f({{pt(2, 2), pt(3, 3)}});
  CHECK(f.evaluate(pt(2, 2), 0) == pt(3, 3));
  CHECK(f.inverse_evaluate(pt(3, 3), 0) == pt(2, 2));
  // depth caps surface as CapError
  Engine g({});
  CHECK_THROWS_AS(g.evaluate(pt(5, 5), 1), CapError);
  CHECK_THROWS_AS(g.inverse_evaluate(pt(5, 5), 1), CapError);
}

TEST_CASE("enrollment follows the canonical order") {
  // after n stages every point preceding the n-th is enrolled on both sides
  Engine e({});
  e.extend_to(20);
  WellOrder wo;
  const Stage& s = e.current();
  for (std::size_t i = 0; i < 20; ++i) {
    Point z = wo.at(i);
    CHECK(s.f.count(z) == 1);
    CHECK(s.f_inv.count(z) == 1);
  }
}

TEST_CASE("continuity audit at the origin") {
  Engine e({});
  ContinuityReport r = continuity_audit(e, pt(0, 0), Rat(1) / 2, 4, 64);
  CHECK(r.pass());
  CHECK(r.delta > 0);
  CHECK(r.samples_checked > 0);

  // finer tolerances still audit clean, on this engine with deeper stages
  for (int t = 2; t <= 3; ++t) {
    Rat eps = Rat(1) / (1 << t);
    ContinuityReport rt = continuity_audit(e, pt(0, 0), eps, 4, 64);
    CHECK(rt.pass());
    CHECK(rt.delta > 0);
  }

  // an off-base center works too
  Engine e2({{pt(0, 0), pt(0, 1)}});
  ContinuityReport r2 = continuity_audit(e2, Point(Rat(1) / 2, Rat(1) / 3), Rat(1) / 4, 4, 64);
  CHECK(r2.pass());
  CHECK(r2.delta > 0);
}

TEST_CASE("deep runs stay verified") {
  Engine e({{pt(0, 0), pt(0, 1)}, {pt(1, 1), pt(2, 0)}});
  e.extend_to(24);
  for (int n = 20; n <= 24; ++n) {
    StageReport r = e.verify(n);
    INFO(r.summary());
    CHECK(r.pass);
  }
  // beyond the exact window the simplest-first rule kicks in; both regimes
  // satisfy the same conditions, so the boundary is seamless
  CHECK(e.config().exact_stage_limit < 24);
}
