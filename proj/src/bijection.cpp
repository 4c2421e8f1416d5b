#include "bing/bijection.hpp"

#include <algorithm>

#include "bing/errors.hpp"

namespace bing {

std::shared_ptr<CellBijection> CellBijection::make(
    std::shared_ptr<const LazyPartition> cover, std::shared_ptr<const CellBijection> prev,
    const std::vector<std::pair<Cell, Cell>>& overrides) {
  if (!cover) throw InputError("bijection needs a cover");
  if (prev && prev->cover_ptr() != cover->parent())
    throw VerifyError("previous bijection acts on the wrong cover");
  std::shared_ptr<CellBijection> b(new CellBijection());
  b->cover_ = std::move(cover);
  b->prev_ = std::move(prev);
  for (const auto& [u, w] : overrides) {
    if (b->cover_->rec_by_id(u.id).cell != u || b->cover_->rec_by_id(w.id).cell != w)
      throw VerifyError("override cell from a foreign cover: " + u.id);
    auto [fit, fnew] = b->fwd_.emplace(u.id, w);
    if (!fnew && fit->second.id != w.id)
      throw VerifyError("conflicting overrides for cell: " + u.id);
    auto [rit, rnew] = b->rev_.emplace(w.id, u);
    if (!rnew && rit->second.id != u.id)
      throw VerifyError("two cells mapped onto one: " + w.id);
  }
  if (b->fwd_.size() != b->rev_.size()) throw VerifyError("override table is not a bijection");
  return b;
}

Cell CellBijection::apply(const Cell& u) const {
  auto ov = fwd_.find(u.id);
  if (ov != fwd_.end()) return ov->second;
  auto mit = memo_fwd_.find(u.id);
  if (mit != memo_fwd_.end()) return mit->second;
  if (cover_->side_marked(u, Side::A))
    throw VerifyError("source cell lacks an override: " + u.id);
  Cell out;
  if (!prev_) {
    out = u;
  } else {
    Cell p = cover_->parent_cell_of(u);
    std::size_t k = cover_->free_index_of(u, Side::A);
    out = cover_->kth_free_child(prev_->apply(p), k, Side::B);
  }
  memo_fwd_.emplace(u.id, out);
  memo_rev_.emplace(out.id, u);
  return out;
}

Cell CellBijection::apply_inverse(const Cell& w) const {
  auto ov = rev_.find(w.id);
  if (ov != rev_.end()) return ov->second;
  auto mit = memo_rev_.find(w.id);
  if (mit != memo_rev_.end()) return mit->second;
  if (cover_->side_marked(w, Side::B))
    throw VerifyError("target cell lacks an override: " + w.id);
  Cell out;
  if (!prev_) {
    out = w;
  } else {
    Cell q = cover_->parent_cell_of(w);
    std::size_t k = cover_->free_index_of(w, Side::B);
    out = cover_->kth_free_child(prev_->apply_inverse(q), k, Side::A);
  }
  memo_rev_.emplace(w.id, out);
  memo_fwd_.emplace(out.id, w);
  return out;
}

DiamondCell CellBijection::apply_diamond(const DiamondCell& d) const {
  Cell au = apply(d.u);
  Cell av = d.v.id == d.u.id ? au : apply(d.v);
  return DiamondCell(std::move(au), std::move(av));
}

DiamondCell CellBijection::inverse_diamond(const DiamondCell& d) const {
  Cell au = apply_inverse(d.u);
  Cell av = d.v.id == d.u.id ? au : apply_inverse(d.v);
  return DiamondCell(std::move(au), std::move(av));
}

std::vector<std::pair<Cell, Cell>> forced_overrides(
    const LazyPartition& cover, const CellBijection* prev,
    const std::vector<std::pair<Point, Point>>& graph) {
  std::map<std::string, std::pair<Cell, Cell>> table;  // source id -> pair
  std::map<std::string, std::string> hit;              // target id -> source id
  auto put = [&](const Cell& u, const Cell& w) {
    auto [it, fresh] = table.emplace(u.id, std::make_pair(u, w));
    if (!fresh) {
      if (it->second.second.id != w.id)
        throw VerifyError("conflicting forced images for cell: " + u.id);
      return;
    }
    auto [ht, hnew] = hit.emplace(w.id, u.id);
    if (!hnew && ht->second != u.id)
      throw VerifyError("two cells forced onto one: " + w.id);
  };

  for (const auto& [x, y] : graph) {
    Cell xm = cover.cell_of(proj_minus(x)), xp = cover.cell_of(proj_plus(x));
    Cell ym = cover.cell_of(proj_minus(y)), yp = cover.cell_of(proj_plus(y));
    bool xone = xm.id == xp.id, yone = ym.id == yp.id;
    if (xone != yone)
      throw VerifyError("projection cell counts differ between " + format_point(x) + " and " +
                        format_point(y));
    if (xone) {
      put(xm, ym);
      continue;
    }
    Cell tm = ym, tp = yp;  // minus to minus unless the parents disagree
    if (prev) {
      Cell pm = cover.parent_cell_of(xm), pp = cover.parent_cell_of(xp);
      if (pm.id != pp.id) {
        std::string im = prev->apply(pm).id, ip = prev->apply(pp).id;
        std::string qm = cover.parent_cell_of(ym).id, qp = cover.parent_cell_of(yp).id;
        if (qm == im && qp == ip) {
          tm = ym;
          tp = yp;
        } else if (qp == im && qm == ip) {
          tm = yp;
          tp = ym;
        } else {
          throw VerifyError("image cells escape the mapped parents for " + format_point(x));
        }
      }
    }
    put(xm, tm);
    put(xp, tp);
  }

  std::vector<std::pair<Cell, Cell>> out;
  out.reserve(table.size());
  for (auto& [id, pr] : table) {
    (void)id;
    out.push_back(std::move(pr));
  }
  return out;
}

std::vector<std::pair<Cell, Cell>> stage_zero_closure(std::vector<std::pair<Cell, Cell>> forced) {
  std::map<std::string, Cell> srcs, tgts;
  for (const auto& [u, w] : forced) {
    srcs.emplace(u.id, u);
    tgts.emplace(w.id, w);
  }
  std::vector<Cell> loose_t, loose_s;
  for (const auto& [id, c] : tgts)
    if (!srcs.count(id)) loose_t.push_back(c);
  for (const auto& [id, c] : srcs)
    if (!tgts.count(id)) loose_s.push_back(c);
  if (loose_t.size() != loose_s.size()) throw VerifyError("unbalanced override patch");
  auto leftmost = [](const Cell& a, const Cell& b) {
    if (a.parts[0].lo != b.parts[0].lo) return a.parts[0].lo < b.parts[0].lo;
    return a.id < b.id;
  };
  std::sort(loose_t.begin(), loose_t.end(), leftmost);
  std::sort(loose_s.begin(), loose_s.end(), leftmost);
  for (std::size_t i = 0; i < loose_t.size(); ++i)
    forced.emplace_back(loose_t[i], loose_s[i]);
  return forced;
}

}  // namespace bing
