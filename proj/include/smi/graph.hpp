#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "smi/theory.hpp"

namespace smi {

/// Co-occurrence graph of a theory: an edge joins two variables that share a
/// clause. Vertices are the theory's scope.
struct PrimalGraph {
  std::vector<VarId> vertices;  // sorted
  std::map<VarId, std::set<VarId>> adjacent;

  std::size_t edge_count() const;
  const std::set<VarId>& neighbours(VarId v) const { return adjacent.at(v); }
};

PrimalGraph primal_graph(const Theory& theory);

/// Connected components, each sorted; components ordered by smallest id.
std::vector<std::vector<VarId>> components(const PrimalGraph& g);

/// True iff every connected component is acyclic.
bool is_tree(const PrimalGraph& g);

/// A cycle as a vertex sequence (first vertex not repeated), if any.
std::optional<std::vector<VarId>> find_cycle(const PrimalGraph& g);

/// Throws StructuralError naming a cycle when the graph is not a forest.
void require_tree(const PrimalGraph& g, const VarTable& vars);

enum class TreeStrategy { rooted, balanced };

/// Rooted forest over the primal graph's vertices, one tree per component.
/// Every primal edge joins a vertex to one of its ancestors.
struct PseudoTree {
  std::vector<VarId> roots;
  std::map<VarId, std::optional<VarId>> parent;
  std::map<VarId, std::vector<VarId>> children;  // ordered by name
  std::map<VarId, std::size_t> depth;
  std::size_t height = 0;  // edges on the longest root-to-leaf path
  std::size_t leaves = 0;

  bool is_ancestor(VarId a, VarId v) const;  // a strictly above v
};

/// rooted: each primal tree hung from a vertex of minimum height.
/// balanced: centroid decomposition, height O(log n).
/// Name order breaks ties. Throws StructuralError on a cyclic graph.
PseudoTree build_pseudo_tree(const PrimalGraph& g, const VarTable& vars, TreeStrategy strategy);

bool satisfies_ancestor_condition(const PrimalGraph& g, const PseudoTree& t);

/// Height of the primal forest when every tree is rooted at a centre.
std::size_t primal_height(const PrimalGraph& g, const VarTable& vars);

/// Split of a tree-shaped theory around `root`. For child c of the root,
/// edge[i] holds the clauses over exactly {root, c} plus every unary root
/// clause (replicated), and subtree[i] the clauses over c's subtree.
struct Partition {
  std::vector<VarId> children;  // ordered by name
  std::vector<Theory> edge;
  std::vector<Theory> subtree;
};

/// Considers only the component of `root`. Throws std::logic_error if a
/// clause spans two children.
Partition partition(const Theory& theory, VarId root);

}  // namespace smi
