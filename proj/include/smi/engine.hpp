#pragma once

#include <cstdint>
#include <functional>
#include <future>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "smi/graph.hpp"
#include "smi/pieces.hpp"
#include "smi/reductions.hpp"
#include "smi/unipoly.hpp"

namespace smi {

/// Placement of interpolation nodes inside a piece [l, u] with k nodes.
/// equispaced: l + (u-l)(i+1)/(k+1). midpoints: l + (u-l)(2i+1)/(2k).
enum class NodeRule { equispaced, midpoints };

struct SmiOptions {
  TreeStrategy pseudo_tree = TreeStrategy::rooted;
  WeightStrategy weights = WeightStrategy::expand;
  bool cache = true;
  unsigned threads = 1;
  std::size_t extra_nodes = 0;  // interpolate with degree + 1 + extra_nodes samples
  NodeRule node_rule = NodeRule::equispaced;
};

struct SearchStats {
  std::uint64_t nodes_expanded = 0;
  std::uint64_t instantiations = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_misses = 0;
  std::size_t n = 0;    // real variables
  std::size_t m = 0;    // distinct arithmetic literals
  std::size_t h_p = 0;  // primal tree height (rooted at a centre)
  std::size_t h_t = 0;  // pseudo tree height
  std::size_t l = 0;    // pseudo tree leaves
};

/// A function of one variable given piece by piece; zero outside pieces.
struct PiecewisePoly {
  struct Part {
    Rational lo;
    Rational hi;
    UniPoly poly;
  };
  std::vector<Part> parts;  // sorted
  Rational operator()(const Rational& x) const;
};

/// Shared memo for one solve: component volumes, marginal functions of a
/// subtree given its parent's value, and piece sets. Safe for concurrent
/// use. Each key is computed once; concurrent requests for a key that is
/// in flight wait for it.
class Cache {
 public:
  /// `hit` reports whether the value was already present or in flight.
  Rational value(const std::string& key, const std::function<Rational()>& compute, bool& hit);
  PiecewisePoly function(const std::string& key, const std::function<PiecewisePoly()>& compute, bool& hit);
  PieceMemo& pieces() { return pieces_; }

 private:
  template <class V>
  using Slots = std::unordered_map<std::string, std::shared_future<V>>;
  template <class V>
  V once(Slots<V>& slots, const std::string& key, const std::function<V()>& compute, bool& hit);

  std::mutex mutex_;
  Slots<Rational> values_;
  Slots<PiecewisePoly> functions_;
  PieceMemo pieces_;
};

/// Model integration (volume) of a real-only, unweighted theory whose
/// primal graph is a forest, following the given pseudo tree. `cache` may
/// be null. Counters in `stats` are incremented.
Rational smi(const Theory& theory, const PseudoTree& t, Cache* cache, SearchStats& stats, const SmiOptions& options);

struct Solution {
  Rational value;
  SearchStats stats;
};

/// Weighted model integration: reduce, check tree shape, build the pseudo
/// tree and sum coefficient * MI over the reduced summands. Throws
/// StructuralError when a reduced primal graph has a cycle.
Solution solve(const Problem& p, const SmiOptions& options = {});

/// WMI(p and query) / WMI(p). Throws InputError when WMI(p) is zero.
Rational probability(const Problem& p, const std::vector<Clause>& query, const SmiOptions& options = {});

/// C * l * (n^3 * m^h_p)^h_t, exactly.
mpz_class search_bound(const SearchStats& stats, unsigned long c = 64);
bool check_search_bound(const SearchStats& stats, unsigned long c = 64);

/// Debug listing of pieces: for every summand and every component, one
/// dump_line per primal-tree node.
std::vector<std::string> dump_pieces(const Problem& p, const SmiOptions& options = {});

/// Distinct arithmetic literals of a theory (a literal and its complement
/// count separately).
std::size_t literal_count(const Theory& theory);

}  // namespace smi
