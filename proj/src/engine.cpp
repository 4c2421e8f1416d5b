#include "bing/engine.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "bing/errors.hpp"
#include "bing/topology.hpp"

namespace bing {

namespace {

Rat mesh_at(int n) {
  Rat m(1);
  for (int i = 0; i < n; ++i) m /= 2;
  return m;
}

// 1 when both projections share a cell (base points, merged doubles)
int shape_of(const LazyPartition& cover, const Point& z) {
  if (z.on_base()) return 1;
  return cover.rec_of(proj_minus(z)).cell.id == cover.rec_of(proj_plus(z)).cell.id ? 1 : 2;
}

std::string pair_text(const Point& x, const Point& y) {
  return format_point(x) + " -> " + format_point(y);
}

}  // namespace

std::string StageReport::summary() const {
  std::string out = "stage " + std::to_string(n) + (pass ? ": pass" : ": FAIL");
  if (pass) return out;
  for (const auto& c : checks) {
    if (c.pass) continue;
    out += "; " + c.name;
    if (!c.detail.empty()) out += " [" + c.detail + "]";
  }
  return out;
}

StageClasses classify(const Stage& s, const std::vector<std::pair<Point, Point>>& seed) {
  StageClasses out;
  std::set<std::pair<Point, Point>> seeded(seed.begin(), seed.end());
  for (const Point& x : s.a) {
    const Point& y = s.f.at(x);
    if (seeded.count({x, y}) && x.on_base() != y.on_base()) {
      if (x.on_base()) {
        out.seed_base_to_off.push_back(x);
        out.img_of_base_seed.push_back(y);
      } else {
        out.seed_off_to_base.push_back(x);
        out.img_of_off_seed.push_back(y);
      }
      continue;
    }
    (x.on_base() ? out.grown_base : out.grown_off).push_back(x);
    (y.on_base() ? out.grown_img_base : out.grown_img_off).push_back(y);
  }
  return out;
}

StageReport verify_stage(const Stage* prev, const Stage& s) {
  StageReport rep;
  rep.n = s.n;
  auto add = [&](std::string name, bool ok, std::string detail = "") {
    if (!ok) rep.pass = false;
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  auto guarded = [&](const char* name, auto&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(std::string(name) + " aborted", false, e.what());
    }
  };

  guarded("bookkeeping", [&] {
    bool ok = s.cover && s.phi && s.a.size() == s.b.size() && s.f.size() == s.a.size() &&
              s.f_inv.size() == s.a.size();
    std::string why;
    if (ok) {
      std::set<Point> src(s.a.begin(), s.a.end()), img(s.b.begin(), s.b.end());
      ok = src.size() == s.a.size() && img.size() == s.b.size();
      if (!ok) why = "repeated enrollment";
      for (size_t i = 0; ok && i < s.a.size(); ++i) {
        auto it = s.f.find(s.a[i]);
        ok = it != s.f.end() && it->second == s.b[i] && s.f_inv.count(s.b[i]) &&
             s.f_inv.at(s.b[i]) == s.a[i] && !(s.a[i].y < 0) && !(s.b[i].y < 0);
        if (!ok) why = "slot " + std::to_string(i);
      }
    } else {
      why = "size mismatch";
    }
    add("bookkeeping", ok, ok ? "" : why);
  });
  if (!rep.pass) return rep;

  guarded("mesh_schedule", [&] {
    add("mesh_schedule", s.cover->mesh() == mesh_at(s.n));
  });

  guarded("admissible", [&] {
    AdmissibilityReport a = check_admissible(*s.cover, s.a, s.b, s.cover->doubled_points(),
                                             mesh_at(s.n), prev ? prev->cover.get() : nullptr);
    add("admissible", a.pass(), a.counterexample);
  });

  guarded("mode_shape", [&] {
    for (const Point& x : s.a) {
      if (shape_of(*s.cover, x) != shape_of(*s.cover, s.f.at(x))) {
        add("mode_shape", false, pair_text(x, s.f.at(x)));
        return;
      }
    }
    add("mode_shape", true);
  });

  guarded("images_in_diamond", [&] {
    for (const Point& x : s.a) {
      DiamondCell d = s.phi->apply_diamond(s.cover->diamond_of(x));
      if (!diamond_contains(d, s.f.at(x))) {
        add("images_in_diamond", false, pair_text(x, s.f.at(x)));
        return;
      }
    }
    add("images_in_diamond", true);
  });

  if (!prev) {
    add("seed_stage", s.n == 0 && !s.chosen.has_value());
    return rep;
  }

  if (!s.chosen.has_value() || prev->n + 1 != s.n) {
    add("choices_present", false);
    return rep;
  }
  const StageChoices& c = *s.chosen;
  std::set<Point> in_a(prev->a.begin(), prev->a.end());
  std::set<Point> in_b(prev->b.begin(), prev->b.end());

  guarded("fwd_src_least", [&] {
    WellOrder wo;
    for (size_t i = 0;; ++i) {
      const Point& z = wo.at(i);
      if (in_a.count(z)) continue;
      add("fwd_src_least", z == c.fwd_src, z == c.fwd_src ? "" : format_point(z) + " comes first");
      return;
    }
  });

  guarded("fwd_img_fresh_in_diamond", [&] {
    bool fresh = !in_b.count(c.fwd_img);
    DiamondCell d = prev->phi->apply_diamond(prev->cover->diamond_of(c.fwd_src));
    bool inside = diamond_contains(d, c.fwd_img);
    add("fwd_img_fresh_in_diamond", fresh && inside, fresh ? "outside image diamond" : "image reused");
  });

  guarded("fwd_parity", [&] {
    add("fwd_parity", c.fwd_src.on_base() == c.fwd_img.on_base());
  });

  guarded("ret_img_least", [&] {
    WellOrder wo;
    for (size_t i = 0;; ++i) {
      const Point& z = wo.at(i);
      if (in_b.count(z) || z == c.fwd_img) continue;
      add("ret_img_least", z == c.ret_img, z == c.ret_img ? "" : format_point(z) + " comes first");
      return;
    }
  });

  guarded("ret_src_fresh", [&] {
    add("ret_src_fresh", !in_a.count(c.ret_src) && c.ret_src != c.fwd_src);
  });

  guarded("ret_parity", [&] {
    add("ret_parity", c.ret_src.on_base() == c.ret_img.on_base());
  });

  guarded("ret_img_in_mapped_diamond", [&] {
    DiamondCell d = prev->phi->apply_diamond(prev->cover->diamond_of(c.ret_src));
    add("ret_img_in_mapped_diamond", diamond_contains(d, c.ret_img));
  });

  guarded("growth", [&] {
    std::vector<Point> wa = prev->a, wb = prev->b;
    wa.push_back(c.fwd_src);
    wa.push_back(c.ret_src);
    wb.push_back(c.fwd_img);
    wb.push_back(c.ret_img);
    add("growth", wa == s.a && wb == s.b);
  });

  guarded("map_extends", [&] {
    for (const auto& [x, y] : prev->f) {
      auto it = s.f.find(x);
      if (it == s.f.end() || !(it->second == y)) {
        add("map_extends", false, pair_text(x, y) + " dropped");
        return;
      }
    }
    add("map_extends", true);
  });

  guarded("image_cells_nested", [&] {
    std::vector<Cell> sample = s.cover->marked_cells();
    std::map<std::string, Cell> parents;
    for (const Cell& v : sample) {
      Cell p = s.cover->parent_cell_of(v);
      parents.emplace(p.id, p);
    }
    for (const auto& [pid, p] : parents)
      for (std::size_t k = 0; k < 3; ++k) sample.push_back(s.cover->kth_free_child(p, k, Side::A));
    for (const Cell& v : sample) {
      Cell w = s.phi->apply(v);
      Cell wp = prev->phi->apply(s.cover->parent_cell_of(v));
      for (const CutIv& part : w.parts) {
        bool inside = false;
        for (const CutIv& big : wp.parts) inside = inside || big.contains_iv(part);
        if (!inside) {
          add("image_cells_nested", false, v.id + " maps outside its parent's image");
          return;
        }
      }
    }
    add("image_cells_nested", true);
  });

  guarded("mode_stable", [&] {
    for (const std::vector<Point>* side : {&prev->a, &prev->b}) {
      for (const Point& x : *side) {
        if (shape_of(*prev->cover, x) != shape_of(*s.cover, x)) {
          add("mode_stable", false, format_point(x));
          return;
        }
      }
    }
    add("mode_stable", true);
  });

  return rep;
}

Engine::Engine(std::vector<std::pair<Point, Point>> seed, RunConfig cfg)
    : cfg_(cfg), seed_(std::move(seed)) {
  std::sort(seed_.begin(), seed_.end(),
            [](const auto& p, const auto& q) { return p.first < q.first; });
  Stage s;
  s.n = 0;
  for (const auto& [x, y] : seed_) {
    if (x.y < 0 || y.y < 0)
      throw InputError("seed point below the base line: " + format_point(x.y < 0 ? x : y));
    if (s.f.count(x)) throw InputError("seed maps " + format_point(x) + " twice");
    if (s.f_inv.count(y)) throw InputError("seed not injective at " + format_point(y));
    s.f.emplace(x, y);
    s.f_inv.emplace(y, x);
    s.a.push_back(x);
    s.b.push_back(y);
  }
  init_modes();
  s.cover = LazyPartition::make_root(Rat(1), s.a, s.b, doubled_points());
  s.phi = CellBijection::make(s.cover, nullptr,
                              stage_zero_closure(forced_overrides(*s.cover, nullptr, seed_)));
  stages_.push_back(std::move(s));
  if (cfg_.verify_each_step) {
    StageReport rep = verify_stage(nullptr, stages_.back());
    if (!rep.pass) throw VerifyError(rep.summary());
  }
}

void Engine::init_modes() {
  std::map<Point, std::vector<Point>> adj;
  for (const auto& [x, y] : seed_) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  std::set<Point> seen;
  for (const auto& [root, ignored] : adj) {
    if (seen.count(root)) continue;
    std::vector<Point> comp;
    std::deque<Point> todo{root};
    seen.insert(root);
    bool touches_base = false;
    while (!todo.empty()) {
      Point w = todo.front();
      todo.pop_front();
      comp.push_back(w);
      if (w.on_base()) touches_base = true;
      for (const Point& nb : adj[w])
        if (seen.insert(nb).second) todo.push_back(nb);
    }
    // a component tied to the base line forces one-cell shape everywhere
    CellMode m = touches_base ? CellMode::doubled : CellMode::paired;
    for (const Point& w : comp)
      if (!w.on_base()) modes_.emplace(w, m);
  }
}

void Engine::note_edge(const Point& x, const Point& y) {
  if (x.on_base() != y.on_base())
    throw VerifyError("parity broken on a constructed pair: " + pair_text(x, y));
  if (x.on_base()) return;
  auto ix = modes_.find(x), iy = modes_.find(y);
  if (ix != modes_.end() && iy != modes_.end()) {
    if (ix->second != iy->second)
      throw VerifyError("cell mode conflict between " + format_point(x) + " and " +
                        format_point(y));
  } else if (ix != modes_.end()) {
    modes_.emplace(y, ix->second);
  } else if (iy != modes_.end()) {
    modes_.emplace(x, iy->second);
  } else {
    modes_.emplace(x, CellMode::paired);
    modes_.emplace(y, CellMode::paired);
  }
}

std::vector<Point> Engine::mode_conflicts(const Point& anchor) const {
  std::vector<Point> out;
  auto it = modes_.find(anchor);
  if (anchor.on_base() || it == modes_.end()) return out;
  for (const auto& [z, m] : modes_)
    if (m != it->second) out.push_back(z);
  return out;
}

Point Engine::pick_candidate(const DiamondCell& d, const std::vector<Point>& forbid,
                             bool want_base, int n) const {
  if (n <= cfg_.exact_stage_limit) return candidate_in_diamond(d, forbid, want_base, cfg_.search);
  return simplest_candidate(d, forbid, want_base, cfg_.search);
}

const Stage& Engine::extend() {
  const Stage& p = stages_.back();
  int n = p.n + 1;
  std::set<Point> in_a(p.a.begin(), p.a.end());
  std::set<Point> in_b(p.b.begin(), p.b.end());

  StageChoices c;
  for (size_t i = 0;; ++i) {
    const Point& z = order_.at(i);
    if (!in_a.count(z)) {
      c.fwd_src = z;
      break;
    }
  }
  {
    DiamondCell d = p.phi->apply_diamond(p.cover->diamond_of(c.fwd_src));
    std::vector<Point> forbid = p.b;
    for (const Point& q : mode_conflicts(c.fwd_src)) forbid.push_back(q);
    c.fwd_img = pick_candidate(d, forbid, c.fwd_src.on_base(), n);
  }
  note_edge(c.fwd_src, c.fwd_img);

  for (size_t i = 0;; ++i) {
    const Point& z = order_.at(i);
    if (!in_b.count(z) && z != c.fwd_img) {
      c.ret_img = z;
      break;
    }
  }
  {
    DiamondCell d = p.phi->inverse_diamond(p.cover->diamond_of(c.ret_img));
    std::vector<Point> forbid = p.a;
    forbid.push_back(c.fwd_src);
    for (const Point& q : mode_conflicts(c.ret_img)) forbid.push_back(q);
    c.ret_src = pick_candidate(d, forbid, c.ret_img.on_base(), n);
  }
  note_edge(c.ret_src, c.ret_img);

  Stage s;
  s.n = n;
  s.a = p.a;
  s.b = p.b;
  s.a.push_back(c.fwd_src);
  s.a.push_back(c.ret_src);
  s.b.push_back(c.fwd_img);
  s.b.push_back(c.ret_img);
  s.f = p.f;
  s.f_inv = p.f_inv;
  s.f.emplace(c.fwd_src, c.fwd_img);
  s.f_inv.emplace(c.fwd_img, c.fwd_src);
  s.f.emplace(c.ret_src, c.ret_img);
  s.f_inv.emplace(c.ret_img, c.ret_src);
  s.chosen = c;
  s.cover = LazyPartition::make_refinement(p.cover, mesh_at(n), s.a, s.b, doubled_points());
  std::vector<std::pair<Point, Point>> graph;
  for (const Point& x : s.a) graph.emplace_back(x, s.f.at(x));
  s.phi = CellBijection::make(s.cover, p.phi, forced_overrides(*s.cover, p.phi.get(), graph));

  if (cfg_.verify_each_step) {
    StageReport rep = verify_stage(&p, s);
    if (!rep.pass) throw VerifyError(rep.summary());
  }
  stages_.push_back(std::move(s));
  return stages_.back();
}

void Engine::extend_to(int n) {
  while (depth() < n) extend();
}

const Stage& Engine::stage(int n) const {
  if (n < 0 || n > depth()) throw InputError("no stage " + std::to_string(n));
  return stages_[static_cast<size_t>(n)];
}

Point Engine::evaluate(const Point& z, int max_stages) {
  if (z.y < 0) throw InputError("point below the base line: " + format_point(z));
  while (!current().f.count(z)) {
    if (depth() >= max_stages)
      throw CapError("stage cap " + std::to_string(max_stages) + " reached before " +
                     format_point(z) + " was enrolled");
    extend();
  }
  return current().f.at(z);
}

Point Engine::inverse_evaluate(const Point& w, int max_stages) {
  if (w.y < 0) throw InputError("point below the base line: " + format_point(w));
  while (!current().f_inv.count(w)) {
    if (depth() >= max_stages)
      throw CapError("stage cap " + std::to_string(max_stages) + " reached before " +
                     format_point(w) + " was hit");
    extend();
  }
  return current().f_inv.at(w);
}

StageReport Engine::verify(int n) const {
  const Stage& s = stage(n);
  return verify_stage(n == 0 ? nullptr : &stages_[static_cast<size_t>(n - 1)], s);
}

std::optional<CellMode> Engine::mode_of(const Point& z) const {
  auto it = modes_.find(z);
  if (it == modes_.end()) return std::nullopt;
  return it->second;
}

std::vector<Point> Engine::doubled_points() const {
  std::vector<Point> out;
  for (const auto& [z, m] : modes_)
    if (m == CellMode::doubled) out.push_back(z);
  return out;
}

ContinuityReport continuity_audit(Engine& e, const Point& z, const Rat& eps, long sample_height,
                                  int max_stages) {
  if (!(eps > 0)) throw InputError("audit radius must be positive");
  ContinuityReport out;
  Point w = e.evaluate(z, max_stages);
  const QF3 wm = proj_minus(w), wp = proj_plus(w);

  auto part_in_trace = [&](const CutIv& part) {
    for (const QF3* v : {&wm, &wp}) {
      // (part.lo + sqrt2, part.hi + sqrt2) inside (v - eps, v + eps); the
      // endpoints can never coincide, so closed and open agree
      int lo_ok = sign_quadsum(QuadSum{part.lo + eps - v->r0, Rat(1), -v->r1, Rat(0)});
      int hi_ok = sign_quadsum(QuadSum{v->r0 + eps - part.hi, Rat(-1), v->r1, Rat(0)});
      if (lo_ok > 0 && hi_ok > 0) return true;
    }
    return false;
  };
  auto cell_in_trace = [&](const Cell& c) {
    for (const CutIv& part : c.parts)
      if (!part_in_trace(part)) return false;
    return true;
  };

  int hit = -1;
  for (int m = 0; m <= max_stages; ++m) {
    if (m > e.depth()) e.extend();
    const Stage& s = e.stage(m);
    DiamondCell d = s.phi->apply_diamond(s.cover->diamond_of(z));
    if (cell_in_trace(d.u) && (d.v.id == d.u.id || cell_in_trace(d.v))) {
      hit = m;
      break;
    }
  }
  if (hit < 0)
    throw CapError("no stage within the cap traps the image diamond in the trace around " +
                   format_point(w));
  out.stage = hit;

  const Stage& s = e.stage(hit);
  auto fits = [&](const QF3& v, const Rat& delta) {
    const Cell c = s.cover->cell_of(v);
    for (const CutIv& part : c.parts) {
      if (!part.contains(v)) continue;
      int lo_ok = sign_quadsum(QuadSum{v.r0 - delta - part.lo, Rat(-1), v.r1, Rat(0)});
      int hi_ok = sign_quadsum(QuadSum{part.hi - v.r0 - delta, Rat(1), -v.r1, Rat(0)});
      return lo_ok > 0 && hi_ok > 0;
    }
    return false;
  };
  Rat delta(1);
  for (int k = 0;; ++k) {
    if (fits(proj_minus(z), delta) && fits(proj_plus(z), delta)) break;
    if (k > 4096) throw CapError("no dyadic radius fits inside the stage cells");
    delta /= 2;
  }
  out.delta = delta;

  BasicNbhd around_z(z, delta);
  BasicNbhd around_w(w, eps);
  std::vector<Rat> xs = WellOrder::rationals_up_to(Int(sample_height), false);
  std::vector<Rat> ys = WellOrder::rationals_up_to(Int(sample_height), true);
  for (const Rat& x : xs) {
    for (const Rat& y : ys) {
      Point sample(x, y);
      if (!nbhd_contains(around_z, sample)) continue;
      Point image;
      if (sample == z) {
        image = w;
      } else {
        try {
          image = e.evaluate(sample, max_stages);
        } catch (const CapError&) {
          ++out.samples_skipped;
          continue;
        }
      }
      if (!nbhd_closure_contains(around_w, image)) {
        out.counterexample = std::make_pair(sample, image);
        return out;
      }
      ++out.samples_checked;
    }
  }
  return out;
}

}  // namespace bing
