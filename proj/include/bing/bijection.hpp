#pragma once

// Permutations of a cover. A CellBijection is a finite table of forced
// pairs on marked cells plus a rule for everything else: identity at the
// root stage, and at later stages the k-th free child of a parent maps to
// the k-th free child of the parent's image. Freeness is side-sensitive:
// sources skip cells marked on the A side, targets skip the B side.

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bing/partition.hpp"

namespace bing {

class CellBijection {
 public:
  // prev is null exactly at the root stage
  static std::shared_ptr<CellBijection> make(std::shared_ptr<const LazyPartition> cover,
                                             std::shared_ptr<const CellBijection> prev,
                                             const std::vector<std::pair<Cell, Cell>>& overrides);

  Cell apply(const Cell& u) const;
  Cell apply_inverse(const Cell& w) const;
  DiamondCell apply_diamond(const DiamondCell& d) const;
  DiamondCell inverse_diamond(const DiamondCell& d) const;

  const LazyPartition& cover() const { return *cover_; }
  std::shared_ptr<const LazyPartition> cover_ptr() const { return cover_; }
  std::shared_ptr<const CellBijection> prev() const { return prev_; }
  const std::map<std::string, Cell>& overrides() const { return fwd_; }
  const std::map<std::string, Cell>& inverse_overrides() const { return rev_; }

 private:
  CellBijection() = default;

  std::shared_ptr<const LazyPartition> cover_;
  std::shared_ptr<const CellBijection> prev_;
  std::map<std::string, Cell> fwd_, rev_;
  mutable std::map<std::string, Cell> memo_fwd_, memo_rev_;
};

// Override pairs induced by a finite graph x -> y: the cells of the
// projections of x map onto the cells of the projections of y. A two-cell
// source is split by matching each image cell's parent against the image
// of the corresponding source parent; when both land in one parent, minus
// goes to minus.
std::vector<std::pair<Cell, Cell>> forced_overrides(
    const LazyPartition& cover, const CellBijection* prev,
    const std::vector<std::pair<Point, Point>>& graph);

// Root-stage completion: appends a patch matching unbalanced override
// targets back onto unhit sources, both ordered by leftmost endpoint, so
// that the table becomes a permutation of its own key set and the
// identity handles every untouched cell.
std::vector<std::pair<Cell, Cell>> stage_zero_closure(std::vector<std::pair<Cell, Cell>> forced);

}  // namespace bing
