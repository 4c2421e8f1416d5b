#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bing/bijection.hpp"
#include "bing/candidate.hpp"
#include "bing/well_order.hpp"

namespace bing {

// How an off-base marked point meets the cover: one one-part cell per
// projection, or a single two-part cell gluing both projections together.
// Decided when the point is first marked, then immutable.
enum class CellMode { paired, doubled };

struct StageChoices {
  Point fwd_src;  // least point not yet enrolled as a source
  Point fwd_img;  // its image, found inside the mapped diamond of fwd_src
  Point ret_img;  // least point still missing from the image side
  Point ret_src;  // its source, found inside the preimage diamond of ret_img
};

struct Stage {
  int n = 0;
  std::vector<Point> a, b;  // enrollment order; a[i] maps to b[i]
  std::map<Point, Point> f, f_inv;
  std::shared_ptr<const LazyPartition> cover;
  std::shared_ptr<const CellBijection> phi;
  std::optional<StageChoices> chosen;  // absent at stage 0
};

// Seed pairs split by parity behaviour, later enrollments by side of the
// base line; stages 1+ preserve parity, so crossings only come from the seed.
struct StageClasses {
  std::vector<Point> seed_off_to_base, seed_base_to_off;
  std::vector<Point> img_of_off_seed, img_of_base_seed;
  std::vector<Point> grown_base, grown_off;
  std::vector<Point> grown_img_base, grown_img_off;
};

StageClasses classify(const Stage& s, const std::vector<std::pair<Point, Point>>& seed);

struct RunConfig {
  // stages up to this depth pick the least valid candidate exactly; deeper
  // stages use the deterministic simplest-first rule (the least-candidate
  // scan grows like 2^n and becomes infeasible long before the stage counts
  // needed to enroll a given point)
  int exact_stage_limit = 10;
  CandidateConfig search;
  bool verify_each_step = true;
};

struct ConditionReport {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct StageReport {
  int n = 0;
  bool pass = true;
  std::vector<ConditionReport> checks;
  std::string summary() const;
};

// Exhaustive exact re-check of one constructed stage against its
// predecessor: choice minimality, diamond membership, parity, growth and
// extension bookkeeping, cover admissibility, cell and image-cell nesting,
// and the image-in-diamond invariant for every enrolled source. prev is
// null exactly for stage 0.
StageReport verify_stage(const Stage* prev, const Stage& s);

class Engine {
 public:
  explicit Engine(std::vector<std::pair<Point, Point>> seed, RunConfig cfg = {});

  int depth() const { return static_cast<int>(stages_.size()) - 1; }
  const Stage& stage(int n) const;
  const Stage& current() const { return stages_.back(); }
  const std::vector<std::pair<Point, Point>>& seed() const { return seed_; }
  const RunConfig& config() const { return cfg_; }

  const Stage& extend();  // build and (by default) verify one more stage
  void extend_to(int n);

  // run until the argument is enrolled, then apply the map; CapError when
  // the depth cap is hit first
  Point evaluate(const Point& z, int max_stages);
  Point inverse_evaluate(const Point& w, int max_stages);

  StageReport verify(int n) const;

  std::optional<CellMode> mode_of(const Point& z) const;
  std::vector<Point> doubled_points() const;

 private:
  void init_modes();
  void note_edge(const Point& x, const Point& y);
  std::vector<Point> mode_conflicts(const Point& anchor) const;
  Point pick_candidate(const DiamondCell& d, const std::vector<Point>& forbid, bool want_base,
                       int n) const;

  RunConfig cfg_;
  std::vector<std::pair<Point, Point>> seed_;
  std::vector<Stage> stages_;
  std::map<Point, CellMode> modes_;  // off-base marked points only
  WellOrder order_;
};

struct ContinuityReport {
  Rat delta;
  int stage = 0;             // depth whose cells justified delta
  long samples_checked = 0;
  long samples_skipped = 0;  // samples whose image would need more stages
  std::optional<std::pair<Point, Point>> counterexample;  // (w, image of w)
  bool pass() const { return !counterexample.has_value(); }
};

// Audit of continuity at z: find the first stage whose image diamond of z
// fits inside the eps-trace around the image of z, derive a dyadic delta
// from z's own cells there, then try to falsify with every point of height
// <= sample_height lying in N(z, delta).
ContinuityReport continuity_audit(Engine& e, const Point& z, const Rat& eps,
                                  long sample_height, int max_stages);

}  // namespace bing
