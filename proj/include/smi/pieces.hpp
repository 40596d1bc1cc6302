#pragma once

#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "smi/interval_set.hpp"
#include "smi/theory.hpp"

namespace smi {

/// An interval of the root variable on which the marginal volume is one
/// polynomial of degree at most `degree`.
struct Piece {
  Rational lo;
  Rational hi;
  std::size_t degree = 0;
  friend bool operator==(const Piece&, const Piece&) = default;
};

/// Sorted by lo, pairwise disjoint interiors, every piece of positive length.
using PieceSet = std::vector<Piece>;

/// Feasible x-intervals at a fixed value of the parent y; endpoints are
/// tagged with the bound (linear in y) that produced them.
struct BoundConfig {
  std::vector<Interval> intervals;
  bool empty() const { return intervals.empty(); }
  /// The tag sequence, for comparing configurations at different y.
  std::vector<LinearBound> tags() const;
};

/// Theory over {y, x}: substitutes y := y_star, solves for x and intersects
/// with the union of the child pieces.
BoundConfig x_interval_set(const Theory& edge, VarId y, VarId x, const Rational& y_star, const PieceSet& child);

/// Candidate y values where the configuration may change: crossings of
/// bounds on x with distinct slopes (atom bounds and child endpoints) and
/// thresholds of unary y atoms, restricted to the hull of y's unary
/// feasible set (whose endpoints are included).
std::vector<Rational> critical_points(const Theory& edge, VarId y, VarId x, const PieceSet& child);

/// Pieces of y for a two-variable theory. Candidate intervals whose
/// midpoint has an empty configuration are dropped (and reported through
/// `rejected` when given). Degree is one more than the highest child piece
/// degree the configuration overlaps.
PieceSet pe_edge(const Theory& edge, VarId y, VarId x, const PieceSet& child,
                 std::vector<ClosedInterval>* rejected = nullptr);

/// Common refinement of per-child piece sets for one root, restricted to
/// the root's unary feasible set; degrees add across children.
PieceSet shatter(const std::vector<PieceSet>& per_child, const IntervalSet& root_feasible);

/// Thread-safe memo of piece sets keyed by canonical subtree theory.
class PieceMemo {
 public:
  bool find(const std::string& key, PieceSet& out) const;
  void store(const std::string& key, const PieceSet& value);
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::unordered_map<std::string, PieceSet> map_;
};

/// Pieces and degrees for one node of the primal tree, in the order the
/// recursion finished them.
using PieceTrace = std::vector<std::pair<VarId, PieceSet>>;

/// Pieces of `root` for a tree-shaped theory (only root's component is
/// considered). Throws InputError if the root's feasible set is unbounded.
PieceSet pe_node(const Theory& theory, VarId root, PieceMemo* memo = nullptr, PieceTrace* trace = nullptr);

/// "var [lo,hi]:deg [lo,hi]:deg ..."
std::string dump_line(const VarTable& vars, VarId v, const PieceSet& pieces);

}  // namespace smi
