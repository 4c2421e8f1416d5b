#pragma once

// Disjoint clopen covers of Q+sqrt3*Q by order-convex cells with cut
// endpoints q+sqrt2. A partition is a lazy rule (root lattice, or a
// per-parent geometric ladder accumulating at each parent part's right
// endpoint) plus a finite table of splits and merged double cells placed
// around the marked projection values. Cells materialize on demand.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bing/algebra.hpp"
#include "bing/interval.hpp"
#include "bing/point.hpp"

namespace bing {

// least dyadic level, then leftmost lattice value q at that level, with
// v < q+sqrt2 < w; the canonical separator cut for splits
Rat dyadic_cut_between(const QF3& v, const QF3& w);

enum class Side { A, B };

struct Cell {
  std::string id;
  std::vector<CutIv> parts;  // ascending; two parts only for merged doubles

  bool is_double() const { return parts.size() == 2; }
  bool contains(const QF3& v) const;
  Rat max_part_diameter() const;
};

bool operator==(const Cell& a, const Cell& b);
bool operator!=(const Cell& a, const Cell& b);

// unordered pair of cells; the induced cover piece of the half-plane
struct DiamondCell {
  Cell u, v;

  DiamondCell(Cell a, Cell b);
};

bool operator==(const DiamondCell& a, const DiamondCell& b);

// both projections of z inside u union v, and each of u, v met
bool diamond_contains(const DiamondCell& d, const Point& z);

struct QF3Lex {
  bool operator()(const QF3& a, const QF3& b) const {
    if (a.r0 != b.r0) return a.r0 < b.r0;
    return a.r1 < b.r1;
  }
};

class LazyPartition {
 public:
  struct SlotKey {
    std::string parent_id;  // empty at the root (lattice slots)
    int part = 0;
    long long j = 0;  // ladder index; lattice index at the root

    auto operator<=>(const SlotKey&) const = default;
  };

  struct PieceAddr {
    SlotKey slot;
    int piece = 0;

    auto operator<=>(const PieceAddr&) const = default;
  };

  struct CellRec {
    Cell cell;
    std::string parent_id;         // containing cell of the parent partition
    std::vector<PieceAddr> addrs;  // one per part, ascending
  };

  static std::shared_ptr<LazyPartition> make_root(const Rat& eps,
                                                  const std::vector<Point>& marked_a,
                                                  const std::vector<Point>& marked_b,
                                                  const std::vector<Point>& doubled);

  static std::shared_ptr<LazyPartition> make_refinement(
      std::shared_ptr<const LazyPartition> parent, const Rat& eps,
      const std::vector<Point>& marked_a, const std::vector<Point>& marked_b,
      const std::vector<Point>& doubled);

  Cell cell_of(const QF3& v) const;
  DiamondCell diamond_of(const Point& z) const;

  const Rat& mesh() const { return eps_; }
  std::shared_ptr<const LazyPartition> parent() const { return parent_; }
  const std::vector<Point>& doubled_points() const { return doubled_; }
  const std::vector<QF3>& marked_values() const { return marked_values_; }

  // containing cell in the parent partition; this partition must have one
  Cell parent_cell_of(const Cell& c) const;

  // canonical child enumeration inside one parent cell: ladder index, then
  // part, then split piece; a double appears once, at its leftmost piece
  std::vector<Cell> enumerate_children(const Cell& parent_cell, std::size_t count) const;

  // free = carrying no marked value of the given side
  bool side_marked(const Cell& c, Side side) const;
  Cell kth_free_child(const Cell& parent_cell, std::size_t k, Side side) const;
  std::size_t free_index_of(const Cell& child, Side side) const;

  // cells of every marked value, deduplicated, sorted by id
  std::vector<Cell> marked_cells() const;

  // materialized-cell lookup; throws VerifyError when the id is unknown
  const CellRec& rec_by_id(const std::string& id) const;
  CellRec rec_of(const QF3& v) const;

 private:
  LazyPartition() = default;

  void index_marks(const std::vector<Point>& marked_a, const std::vector<Point>& marked_b,
                   const std::vector<Point>& doubled);
  SlotKey slot_of(const QF3& v) const;
  std::pair<Rat, Rat> slot_bounds(const SlotKey& k) const;
  std::pair<Rat, Rat> piece_bounds(const PieceAddr& a) const;
  int piece_of(const SlotKey& k, const QF3& v) const;
  CellRec rec_for_addr(const PieceAddr& a) const;
  std::string token_for(const PieceAddr& a) const;

  // yield(rec) -> keep going?  walks children of parent_cell forever
  template <class F>
  void walk_children(const Cell& parent_cell, F&& yield) const;

  Rat eps_;
  Rat mu_;  // root lattice pitch, eps/2
  std::shared_ptr<const LazyPartition> parent_;
  std::vector<Point> doubled_;
  std::vector<QF3> marked_values_;  // sorted ascending, deduplicated
  std::map<QF3, std::pair<bool, bool>, QF3Lex> value_sides_;
  std::map<SlotKey, std::vector<Rat>> splits_;  // cut offsets, ascending
  std::map<PieceAddr, Point> absorbed_;         // piece -> owning doubled point
  std::map<Point, std::pair<PieceAddr, PieceAddr>> double_addrs_;
  std::map<PieceAddr, std::pair<int, int>> addr_marks_;  // (a count, b count)

  mutable std::map<QF3, CellRec, QF3Lex> memo_;
  mutable std::map<std::string, CellRec> by_id_;
};

struct AdmissibilityReport {
  bool disjoint = false;  // pairwise disjoint, cell_of total and stable
  bool doubles = false;   // each doubled point: one two-part cell, parts
                          // below mesh, isolating exactly its projections
  bool convex = false;    // every other cell: one interval, below mesh,
                          // at most one marked value
  bool refines = false;   // every materialized cell inside one parent cell
  bool ladders = false;   // child generators present, disjoint, nested
  std::string counterexample;

  bool pass() const { return disjoint && doubles && convex && refines && ladders; }
};

AdmissibilityReport check_admissible(const LazyPartition& p,
                                     const std::vector<Point>& marked_a,
                                     const std::vector<Point>& marked_b,
                                     const std::vector<Point>& doubled, const Rat& eps,
                                     const LazyPartition* parent);

}  // namespace bing
