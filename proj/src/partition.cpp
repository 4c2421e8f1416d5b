#include "bing/partition.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

#include "bing/errors.hpp"

namespace bing {

// ---- Cell -----------------------------------------------------------

bool Cell::contains(const QF3& v) const {
  for (const auto& iv : parts)
    if (iv.contains(v)) return true;
  return false;
}

Rat Cell::max_part_diameter() const {
  Rat m(0);
  for (const auto& iv : parts) {
    Rat d = iv.diameter();
    if (d > m) m = d;
  }
  return m;
}

bool operator==(const Cell& a, const Cell& b) {
  return a.id == b.id && a.parts.size() == b.parts.size() &&
         std::equal(a.parts.begin(), a.parts.end(), b.parts.begin());
}
bool operator!=(const Cell& a, const Cell& b) { return !(a == b); }

DiamondCell::DiamondCell(Cell a, Cell b) {
  if (b.id < a.id) std::swap(a, b);
  u = std::move(a);
  v = std::move(b);
}

bool operator==(const DiamondCell& a, const DiamondCell& b) { return a.u == b.u && a.v == b.v; }

bool diamond_contains(const DiamondCell& d, const Point& z) {
  QF3 m = proj_minus(z), p = proj_plus(z);
  bool mu = d.u.contains(m), mv = d.v.contains(m);
  bool pu = d.u.contains(p), pv = d.v.contains(p);
  // both projections covered, both cells met
  return (mu || mv) && (pu || pv) && (mu || pu) && (mv || pv);
}

Rat dyadic_cut_between(const QF3& v, const QF3& w) {
  if (qf3_compare(v, w) != Order::LT) throw VerifyError("dyadic_cut_between: empty gap");
  QuadSum a(Rat(v.r0), Rat(-1), Rat(v.r1), Rat(0));
  QuadSum b(Rat(w.r0), Rat(-1), Rat(w.r1), Rat(0));
  return pick_dyadic_between(a, b);
}

// ---- LazyPartition: construction ------------------------------------

std::shared_ptr<LazyPartition> LazyPartition::make_root(const Rat& eps,
                                                        const std::vector<Point>& marked_a,
                                                        const std::vector<Point>& marked_b,
                                                        const std::vector<Point>& doubled) {
  if (eps <= 0) throw InputError("mesh must be positive");
  std::shared_ptr<LazyPartition> p(new LazyPartition());
  p->eps_ = eps;
  p->mu_ = eps / 2;
  p->index_marks(marked_a, marked_b, doubled);
  return p;
}

std::shared_ptr<LazyPartition> LazyPartition::make_refinement(
    std::shared_ptr<const LazyPartition> parent, const Rat& eps,
    const std::vector<Point>& marked_a, const std::vector<Point>& marked_b,
    const std::vector<Point>& doubled) {
  if (!parent) throw InputError("refinement needs a parent partition");
  if (eps <= 0) throw InputError("mesh must be positive");
  std::shared_ptr<LazyPartition> p(new LazyPartition());
  p->eps_ = eps;
  p->mu_ = eps / 2;
  p->parent_ = std::move(parent);
  p->index_marks(marked_a, marked_b, doubled);
  return p;
}

void LazyPartition::index_marks(const std::vector<Point>& marked_a,
                                const std::vector<Point>& marked_b,
                                const std::vector<Point>& doubled) {
  auto note = [&](const Point& z, bool a_side) {
    if (z.y < 0) throw InputError("point below the base line: " + format_point(z));
    for (const QF3& v : {proj_minus(z), proj_plus(z)}) {
      auto& flags = value_sides_[v];
      (a_side ? flags.first : flags.second) = true;
    }
  };
  for (const auto& z : marked_a) note(z, true);
  for (const auto& z : marked_b) note(z, false);

  for (const auto& [v, flags] : value_sides_) {
    (void)flags;
    marked_values_.push_back(v);
  }
  std::sort(marked_values_.begin(), marked_values_.end(), qf3_less);

  // values sharing a slot get dyadic cuts between consecutive ones, so
  // each resulting piece holds exactly one marked value
  std::map<SlotKey, std::vector<QF3>> groups;
  for (const auto& v : marked_values_) groups[slot_of(v)].push_back(v);
  for (auto& [key, vs] : groups) {
    std::sort(vs.begin(), vs.end(), qf3_less);
    if (vs.size() < 2) continue;
    auto& cuts = splits_[key];
    for (std::size_t i = 0; i + 1 < vs.size(); ++i)
      cuts.push_back(dyadic_cut_between(vs[i], vs[i + 1]));
  }

  std::map<PieceAddr, int> value_count;
  for (const auto& [v, flags] : value_sides_) {
    SlotKey key = slot_of(v);
    PieceAddr ad{key, piece_of(key, v)};
    auto& marks = addr_marks_[ad];
    if (flags.first) marks.first += 1;
    if (flags.second) marks.second += 1;
    value_count[ad] += 1;
  }

  std::set<Point> seen;
  for (const auto& z : doubled) {
    if (!seen.insert(z).second) continue;
    if (z.on_base()) throw InputError("doubled point on the base line: " + format_point(z));
    QF3 lo = proj_minus(z), hi = proj_plus(z);
    if (!value_sides_.count(lo) || !value_sides_.count(hi))
      throw InputError("doubled point is not marked: " + format_point(z));
    SlotKey kl = slot_of(lo), kh = slot_of(hi);
    if (kl.parent_id != kh.parent_id)
      throw InputError("doubled point spans two parent cells: " + format_point(z));
    PieceAddr al{kl, piece_of(kl, lo)}, ah{kh, piece_of(kh, hi)};
    if (!(al < ah)) throw VerifyError("double pieces out of order: " + format_point(z));
    if (value_count[al] != 1 || value_count[ah] != 1)
      throw VerifyError("split failed to isolate a doubled value: " + format_point(z));
    if (!absorbed_.emplace(al, z).second || !absorbed_.emplace(ah, z).second)
      throw InputError("doubled points share a cell piece: " + format_point(z));
    double_addrs_.emplace(z, std::make_pair(al, ah));
    doubled_.push_back(z);
  }
  std::sort(doubled_.begin(), doubled_.end());
}

// ---- LazyPartition: addressing --------------------------------------

LazyPartition::SlotKey LazyPartition::slot_of(const QF3& v) const {
  if (!parent_) {
    QuadSum off(Rat(v.r0), Rat(-1), Rat(v.r1), Rat(0));  // v - sqrt2
    Int k = floor_quadsum(Rat(Rat(1) / mu_) * off);
    if (!k.fits_slong_p()) throw CapError("lattice index out of range");
    return SlotKey{"", 0, k.get_si()};
  }
  CellRec prec = parent_->rec_of(v);
  int part = -1;
  for (std::size_t i = 0; i < prec.cell.parts.size(); ++i)
    if (prec.cell.parts[i].contains(v)) {
      part = static_cast<int>(i);
      break;
    }
  if (part < 0) throw VerifyError("parent cell misses its value");
  const CutIv& iv = prec.cell.parts[static_cast<std::size_t>(part)];
  // v sits in ladder rung j iff (R + sqrt2 - v)/(R - L) lies in
  // (1/2^{j+1}, 1/2^j); the ratio is irrational, so never on a boundary
  QuadSum w(Rat(iv.hi - v.r0), Rat(1), Rat(-v.r1), Rat(0));
  w = Rat(Rat(1) / (iv.hi - iv.lo)) * w;
  QuadSum half(Rat(1, 2), Rat(0), Rat(0), Rat(0));
  long long j = 0;
  while (sign_quadsum(w - half) < 0) {
    w = Rat(2) * w;
    ++j;
    if (j > 1000000) throw CapError("ladder index out of range");
  }
  return SlotKey{prec.cell.id, part, j};
}

std::pair<Rat, Rat> LazyPartition::slot_bounds(const SlotKey& k) const {
  if (!parent_) {
    Rat lo = Rat(Int(static_cast<long>(k.j))) * mu_;
    return {lo, lo + mu_};
  }
  const CellRec& prec = parent_->rec_by_id(k.parent_id);
  const CutIv& iv = prec.cell.parts.at(static_cast<std::size_t>(k.part));
  Rat len = iv.hi - iv.lo;
  return {iv.hi - len * pow2(-k.j), iv.hi - len * pow2(-(k.j + 1))};
}

std::pair<Rat, Rat> LazyPartition::piece_bounds(const PieceAddr& a) const {
  auto [lo, hi] = slot_bounds(a.slot);
  auto it = splits_.find(a.slot);
  int cuts = it == splits_.end() ? 0 : static_cast<int>(it->second.size());
  if (a.piece < 0 || a.piece > cuts) throw VerifyError("piece index out of range");
  Rat l = a.piece == 0 ? lo : it->second[static_cast<std::size_t>(a.piece - 1)];
  Rat h = a.piece == cuts ? hi : it->second[static_cast<std::size_t>(a.piece)];
  return {l, h};
}

int LazyPartition::piece_of(const SlotKey& k, const QF3& v) const {
  auto it = splits_.find(k);
  if (it == splits_.end()) return 0;
  int i = 0;
  for (const Rat& c : it->second) {
    if (cut_compare_qf3(Cut(c), v) != Order::LT) break;
    ++i;
  }
  return i;
}

std::string LazyPartition::token_for(const PieceAddr& a) const {
  std::ostringstream os;
  if (!parent_)
    os << "L" << a.slot.j;
  else
    os << a.slot.parent_id << "/p" << a.slot.part << "j" << a.slot.j;
  if (splits_.count(a.slot)) os << "." << a.piece;
  return os.str();
}

LazyPartition::CellRec LazyPartition::rec_for_addr(const PieceAddr& a) const {
  CellRec rec;
  auto ab = absorbed_.find(a);
  if (ab != absorbed_.end()) {
    const auto& da = double_addrs_.at(ab->second);
    auto [l1, h1] = piece_bounds(da.first);
    auto [l2, h2] = piece_bounds(da.second);
    rec.cell.id = "D:" + format_point(ab->second);
    rec.cell.parts = {CutIv(l1, h1), CutIv(l2, h2)};
    rec.parent_id = da.first.slot.parent_id;
    rec.addrs = {da.first, da.second};
  } else {
    auto [l, h] = piece_bounds(a);
    rec.cell.id = token_for(a);
    rec.cell.parts = {CutIv(l, h)};
    rec.parent_id = a.slot.parent_id;
    rec.addrs = {a};
  }
  by_id_.emplace(rec.cell.id, rec);
  return rec;
}

LazyPartition::CellRec LazyPartition::rec_of(const QF3& v) const {
  auto mit = memo_.find(v);
  if (mit != memo_.end()) return mit->second;
  SlotKey key = slot_of(v);
  CellRec rec = rec_for_addr(PieceAddr{key, piece_of(key, v)});
  if (!rec.cell.contains(v)) throw VerifyError("cell lookup missed its value");
  memo_.emplace(v, rec);
  return rec;
}

const LazyPartition::CellRec& LazyPartition::rec_by_id(const std::string& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw VerifyError("unknown cell id: " + id);
  return it->second;
}

// ---- LazyPartition: queries ------------------------------------------

Cell LazyPartition::cell_of(const QF3& v) const { return rec_of(v).cell; }

DiamondCell LazyPartition::diamond_of(const Point& z) const {
  return DiamondCell(cell_of(proj_minus(z)), cell_of(proj_plus(z)));
}

Cell LazyPartition::parent_cell_of(const Cell& c) const {
  if (!parent_) throw VerifyError("root partition has no parent");
  return parent_->rec_by_id(rec_by_id(c.id).parent_id).cell;
}

template <class F>
void LazyPartition::walk_children(const Cell& parent_cell, F&& yield) const {
  if (!parent_) throw VerifyError("root cells are not enumerated as children");
  int nparts = static_cast<int>(parent_cell.parts.size());
  for (long long j = 0;; ++j) {
    for (int part = 0; part < nparts; ++part) {
      SlotKey key{parent_cell.id, part, j};
      auto it = splits_.find(key);
      int pieces = it == splits_.end() ? 1 : static_cast<int>(it->second.size()) + 1;
      for (int piece = 0; piece < pieces; ++piece) {
        PieceAddr ad{key, piece};
        auto ab = absorbed_.find(ad);
        if (ab != absorbed_.end() && !(ad == double_addrs_.at(ab->second).first))
          continue;  // a double shows up once, at its leftmost piece
        if (!yield(rec_for_addr(ad))) return;
      }
    }
  }
}

std::vector<Cell> LazyPartition::enumerate_children(const Cell& parent_cell,
                                                    std::size_t count) const {
  std::vector<Cell> out;
  if (count == 0) return out;
  walk_children(parent_cell, [&](const CellRec& r) {
    out.push_back(r.cell);
    return out.size() < count;
  });
  return out;
}

bool LazyPartition::side_marked(const Cell& c, Side side) const {
  const CellRec& rec = rec_by_id(c.id);
  for (const auto& ad : rec.addrs) {
    auto it = addr_marks_.find(ad);
    if (it == addr_marks_.end()) continue;
    if ((side == Side::A ? it->second.first : it->second.second) > 0) return true;
  }
  return false;
}

Cell LazyPartition::kth_free_child(const Cell& parent_cell, std::size_t k, Side side) const {
  Cell found;
  std::size_t seen = 0;
  walk_children(parent_cell, [&](const CellRec& r) {
    if (side_marked(r.cell, side)) return true;
    if (seen == k) {
      found = r.cell;
      return false;
    }
    ++seen;
    return true;
  });
  return found;
}

std::size_t LazyPartition::free_index_of(const Cell& child, Side side) const {
  if (side_marked(child, side))
    throw VerifyError("cell is marked on the requested side: " + child.id);
  Cell pc = parent_cell_of(child);
  std::size_t idx = 0;
  bool found = false;
  walk_children(pc, [&](const CellRec& r) {
    if (r.cell.id == child.id) {
      found = true;
      return false;
    }
    if (!side_marked(r.cell, side)) ++idx;
    return true;
  });
  if (!found) throw VerifyError("cell not found under its parent: " + child.id);
  return idx;
}

std::vector<Cell> LazyPartition::marked_cells() const {
  std::map<std::string, Cell> by_id;
  for (const auto& v : marked_values_) {
    Cell c = cell_of(v);
    by_id.emplace(c.id, std::move(c));
  }
  std::vector<Cell> out;
  out.reserve(by_id.size());
  for (auto& [id, c] : by_id) {
    (void)id;
    out.push_back(std::move(c));
  }
  return out;
}

// ---- admissibility oracle --------------------------------------------

AdmissibilityReport check_admissible(const LazyPartition& p, const std::vector<Point>& marked_a,
                                     const std::vector<Point>& marked_b,
                                     const std::vector<Point>& doubled, const Rat& eps,
                                     const LazyPartition* parent) {
  AdmissibilityReport rep;
  rep.disjoint = rep.doubles = rep.convex = rep.refines = rep.ladders = true;
  auto fail = [&](bool& flag, const std::string& msg) {
    flag = false;
    if (rep.counterexample.empty()) rep.counterexample = msg;
  };

  // the checker derives marked values from the raw point lists itself
  std::vector<QF3> values;
  for (const auto* pts : {&marked_a, &marked_b})
    for (const auto& z : *pts) {
      values.push_back(proj_minus(z));
      values.push_back(proj_plus(z));
    }
  std::sort(values.begin(), values.end(), qf3_less);
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::vector<QF3> probes = values;
  for (int i = -4; i <= 4; ++i) probes.push_back(QF3(Rat(i) / 2));

  std::map<std::string, Cell> cells;
  for (const auto& v : probes) {
    Cell c = p.cell_of(v);
    if (!c.contains(v)) fail(rep.disjoint, "cell misses its value: " + c.id);
    if (p.cell_of(v) != c) fail(rep.disjoint, "unstable lookup: " + c.id);
    auto [it, fresh] = cells.emplace(c.id, c);
    if (!fresh && it->second != c) fail(rep.disjoint, "two cells share id: " + c.id);
  }

  struct PartRef {
    Rat lo, hi;
    const std::string* id;
  };
  std::vector<PartRef> parts;
  for (const auto& [id, c] : cells)
    for (const auto& iv : c.parts) parts.push_back({iv.lo, iv.hi, &id});
  std::sort(parts.begin(), parts.end(), [](const PartRef& a, const PartRef& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.hi < b.hi;
  });
  const std::string* run_id = nullptr;
  Rat run_hi;
  for (const auto& pr : parts) {
    if (run_id && *run_id != *pr.id && pr.lo < run_hi)
      fail(rep.disjoint, "overlapping cells: " + *run_id + " and " + *pr.id);
    if (!run_id || pr.hi > run_hi) {
      run_hi = pr.hi;
      run_id = pr.id;
    }
  }

  std::set<std::string> double_ids;
  std::set<Point> dset(doubled.begin(), doubled.end());
  for (const auto& z : dset) {
    QF3 lo = proj_minus(z), hi = proj_plus(z);
    Cell cl = p.cell_of(lo);
    if (cl.id != p.cell_of(hi).id) {
      fail(rep.doubles, "projections split across cells: " + format_point(z));
      continue;
    }
    if (!cl.is_double()) {
      fail(rep.doubles, "no merged double cell at " + format_point(z));
      continue;
    }
    double_ids.insert(cl.id);
    if (!(cl.parts[0].contains(lo) && cl.parts[1].contains(hi)))
      fail(rep.doubles, "double parts misplaced at " + format_point(z));
    for (const auto& iv : cl.parts)
      if (!(iv.diameter() < eps)) fail(rep.doubles, "double part too wide: " + cl.id);
    for (const auto& v : values)
      if (v != lo && v != hi && cl.contains(v))
        fail(rep.doubles, "double cell captures a foreign value: " + cl.id);
  }

  for (const auto& [id, c] : cells) {
    if (double_ids.count(id)) continue;
    if (c.parts.size() != 1) {
      fail(rep.convex, "multi-part cell without a doubled owner: " + id);
      continue;
    }
    if (!(c.max_part_diameter() < eps)) fail(rep.convex, "cell at or above mesh: " + id);
    int nv = 0;
    for (const auto& v : values)
      if (c.contains(v)) ++nv;
    if (nv > 1) fail(rep.convex, "two marked values share a cell: " + id);
  }

  if (parent) {
    std::map<std::string, Cell> parents;
    for (const auto& [id, c] : cells) {
      Cell pc;
      try {
        pc = p.parent_cell_of(c);
      } catch (const VerifyError&) {
        fail(rep.refines, "no parent cell for: " + id);
        continue;
      }
      parents.emplace(pc.id, pc);
      for (const auto& iv : c.parts) {
        bool inside = false;
        for (const auto& pv : pc.parts)
          if (pv.contains_iv(iv)) inside = true;
        if (!inside) fail(rep.refines, "part escapes the parent cell: " + id);
      }
    }

    for (const auto& [pid, pc] : parents) {
      auto kids = p.enumerate_children(pc, 6);
      if (kids.size() != 6) {
        fail(rep.ladders, "child generator ran dry under: " + pid);
        continue;
      }
      for (std::size_t i = 0; i < kids.size(); ++i) {
        for (const auto& iv : kids[i].parts) {
          bool inside = false;
          for (const auto& pv : pc.parts)
            if (pv.contains_iv(iv)) inside = true;
          if (!inside) fail(rep.ladders, "child escapes its parent: " + kids[i].id);
        }
        for (std::size_t l = i + 1; l < kids.size(); ++l)
          for (const auto& iv : kids[i].parts)
            for (const auto& jv : kids[l].parts)
              if (!iv.disjoint(jv))
                fail(rep.ladders, "children overlap: " + kids[i].id + " and " + kids[l].id);
      }
    }
  }

  return rep;
}

}  // namespace bing
