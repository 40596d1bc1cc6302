#include "smi/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <stdexcept>

#include "smi/errors.hpp"

namespace smi {

std::size_t PrimalGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& [v, ns] : adjacent) twice += ns.size();
  return twice / 2;
}

PrimalGraph primal_graph(const Theory& theory) {
  PrimalGraph g;
  g.vertices = theory.scope;
  for (VarId v : theory.scope) g.adjacent[v];
  for (const auto& clause : theory.clauses) {
    auto vs = clause_vars(clause);
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        g.adjacent[vs[i]].insert(vs[j]);
        g.adjacent[vs[j]].insert(vs[i]);
      }
  }
  return g;
}

namespace {

std::vector<VarId> reach(const PrimalGraph& g, VarId start, std::set<VarId>& seen) {
  std::vector<VarId> out;
  std::deque<VarId> queue{start};
  seen.insert(start);
  while (!queue.empty()) {
    VarId v = queue.front();
    queue.pop_front();
    out.push_back(v);
    for (VarId n : g.neighbours(v))
      if (seen.insert(n).second) queue.push_back(n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool name_less(const VarTable& vars, VarId a, VarId b) { return vars[a].name < vars[b].name; }

}  // namespace

std::vector<std::vector<VarId>> components(const PrimalGraph& g) {
  std::vector<std::vector<VarId>> out;
  std::set<VarId> seen;
  for (VarId v : g.vertices)
    if (!seen.count(v)) out.push_back(reach(g, v, seen));
  return out;
}

bool is_tree(const PrimalGraph& g) {
  std::size_t edges = g.edge_count();
  return edges + components(g).size() == g.vertices.size();
}

std::optional<std::vector<VarId>> find_cycle(const PrimalGraph& g) {
  std::map<VarId, VarId> parent;
  std::set<VarId> seen;
  for (VarId start : g.vertices) {
    if (seen.count(start)) continue;
    // Iterative DFS; a non-tree edge to a visited vertex closes a cycle.
    std::vector<std::pair<VarId, VarId>> stack{{start, start}};
    while (!stack.empty()) {
      auto [v, from] = stack.back();
      stack.pop_back();
      if (seen.count(v)) continue;
      seen.insert(v);
      parent[v] = from;
      for (VarId n : g.neighbours(v)) {
        if (n == from) continue;
        if (seen.count(n)) {
          // Walk both ends up to their common ancestor.
          std::vector<VarId> a{v}, b{n};
          std::set<VarId> on_a{v};
          while (parent[a.back()] != a.back()) {
            a.push_back(parent[a.back()]);
            on_a.insert(a.back());
          }
          while (!on_a.count(b.back())) b.push_back(parent[b.back()]);
          VarId meet = b.back();
          std::vector<VarId> cycle;
          for (VarId x : a) {
            cycle.push_back(x);
            if (x == meet) break;
          }
          for (std::size_t i = b.size() - 1; i-- > 0;) cycle.push_back(b[i]);
          return cycle;
        }
        stack.emplace_back(n, v);
      }
    }
  }
  return std::nullopt;
}

void require_tree(const PrimalGraph& g, const VarTable& vars) {
  auto cycle = find_cycle(g);
  if (!cycle) return;
  std::string names;
  for (VarId v : *cycle) names += vars[v].name + " - ";
  names += vars[cycle->front()].name;
  throw StructuralError("primal graph is not a tree; cycle: " + names);
}

bool PseudoTree::is_ancestor(VarId a, VarId v) const {
  auto p = parent.at(v);
  while (p) {
    if (*p == a) return true;
    p = parent.at(*p);
  }
  return false;
}

namespace {

// Centres of a tree by repeated leaf peeling; one or two vertices.
std::vector<VarId> centres(const PrimalGraph& g, const std::vector<VarId>& comp) {
  if (comp.size() <= 2) return comp;
  std::map<VarId, std::size_t> degree;
  std::vector<VarId> layer;
  for (VarId v : comp) {
    degree[v] = g.neighbours(v).size();
    if (degree[v] <= 1) layer.push_back(v);
  }
  std::size_t remaining = comp.size();
  while (remaining > 2) {
    remaining -= layer.size();
    std::vector<VarId> next;
    for (VarId v : layer)
      for (VarId n : g.neighbours(v))
        if (--degree[n] == 1) next.push_back(n);
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

VarId first_by_name(const VarTable& vars, std::vector<VarId> vs) {
  return *std::min_element(vs.begin(), vs.end(), [&](VarId a, VarId b) { return name_less(vars, a, b); });
}

void hang(const PrimalGraph& g, const VarTable& vars, VarId root, PseudoTree& t) {
  t.parent[root] = std::nullopt;
  t.depth[root] = 0;
  std::deque<VarId> queue{root};
  while (!queue.empty()) {
    VarId v = queue.front();
    queue.pop_front();
    auto& kids = t.children[v];
    for (VarId n : g.neighbours(v)) {
      if (t.parent.count(n)) continue;
      t.parent[n] = v;
      t.depth[n] = t.depth[v] + 1;
      kids.push_back(n);
      queue.push_back(n);
    }
    std::sort(kids.begin(), kids.end(), [&](VarId a, VarId b) { return name_less(vars, a, b); });
  }
}

// Centroid of the tree spanned by `alive` vertices reachable from start.
VarId centroid(const PrimalGraph& g, const VarTable& vars, const std::set<VarId>& part) {
  std::map<VarId, std::size_t> size;
  std::map<VarId, VarId> up;
  std::vector<VarId> order;
  VarId start = *part.begin();
  std::vector<VarId> stack{start};
  up[start] = start;
  while (!stack.empty()) {
    VarId v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (VarId n : g.neighbours(v))
      if (part.count(n) && n != up[v]) {
        up[n] = v;
        stack.push_back(n);
      }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    size[*it] += 1;
    if (*it != start) size[up[*it]] += size[*it];
  }
  std::size_t total = part.size();
  std::vector<VarId> best;
  std::size_t best_weight = total + 1;
  for (VarId v : order) {
    std::size_t heaviest = total - size[v];
    for (VarId n : g.neighbours(v))
      if (part.count(n) && n != up[v]) heaviest = std::max(heaviest, size[n]);
    if (heaviest < best_weight) {
      best_weight = heaviest;
      best = {v};
    } else if (heaviest == best_weight) {
      best.push_back(v);
    }
  }
  return first_by_name(vars, best);
}

void decompose(const PrimalGraph& g, const VarTable& vars, std::set<VarId> part, std::optional<VarId> above,
               PseudoTree& t) {
  VarId c = centroid(g, vars, part);
  t.parent[c] = above;
  t.depth[c] = above ? t.depth[*above] + 1 : 0;
  t.children[c];
  if (above) t.children[*above].push_back(c);
  part.erase(c);
  std::set<VarId> seen;
  std::vector<std::set<VarId>> pieces;
  for (VarId n : g.neighbours(c)) {
    if (!part.count(n) || seen.count(n)) continue;
    std::set<VarId> piece;
    std::vector<VarId> stack{n};
    seen.insert(n);
    while (!stack.empty()) {
      VarId v = stack.back();
      stack.pop_back();
      piece.insert(v);
      for (VarId m : g.neighbours(v))
        if (part.count(m) && seen.insert(m).second) stack.push_back(m);
    }
    pieces.push_back(std::move(piece));
  }
  for (auto& p : pieces) decompose(g, vars, std::move(p), c, t);
  auto& kids = t.children[c];
  std::sort(kids.begin(), kids.end(), [&](VarId a, VarId b) { return name_less(vars, a, b); });
}

}  // namespace

PseudoTree build_pseudo_tree(const PrimalGraph& g, const VarTable& vars, TreeStrategy strategy) {
  require_tree(g, vars);
  PseudoTree t;
  for (const auto& comp : components(g)) {
    VarId root;
    if (strategy == TreeStrategy::rooted) {
      root = first_by_name(vars, centres(g, comp));
      hang(g, vars, root, t);
    } else {
      std::set<VarId> part(comp.begin(), comp.end());
      root = centroid(g, vars, part);
      decompose(g, vars, std::move(part), std::nullopt, t);
    }
    t.roots.push_back(root);
  }
  std::sort(t.roots.begin(), t.roots.end(), [&](VarId a, VarId b) { return name_less(vars, a, b); });
  for (const auto& [v, d] : t.depth) t.height = std::max(t.height, d);
  for (const auto& [v, kids] : t.children)
    if (kids.empty()) ++t.leaves;
  return t;
}

bool satisfies_ancestor_condition(const PrimalGraph& g, const PseudoTree& t) {
  for (const auto& [v, ns] : g.adjacent)
    for (VarId n : ns)
      if (v < n && !t.is_ancestor(v, n) && !t.is_ancestor(n, v)) return false;
  return true;
}

std::size_t primal_height(const PrimalGraph& g, const VarTable& vars) {
  return build_pseudo_tree(g, vars, TreeStrategy::rooted).height;
}

Partition partition(const Theory& theory, VarId root) {
  PrimalGraph g = primal_graph(theory);
  Partition out;
  std::map<VarId, std::size_t> owner;  // vertex -> child index
  std::vector<VarId> kids(g.neighbours(root).begin(), g.neighbours(root).end());
  std::sort(kids.begin(), kids.end(), [&](VarId a, VarId b) { return name_less(*theory.vars, a, b); });
  out.children = kids;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    std::vector<VarId> stack{kids[i]};
    owner[kids[i]] = i;
    while (!stack.empty()) {
      VarId v = stack.back();
      stack.pop_back();
      for (VarId n : g.neighbours(v)) {
        if (n == root) continue;
        if (owner.count(n)) {
          if (owner[n] != i) throw std::logic_error("partition: primal graph is not a tree");
          continue;
        }
        owner[n] = i;
        stack.push_back(n);
      }
    }
  }
  std::vector<std::vector<VarId>> scopes(kids.size());
  for (const auto& [v, i] : owner) scopes[i].push_back(v);
  for (std::size_t i = 0; i < kids.size(); ++i) {
    std::sort(scopes[i].begin(), scopes[i].end());
    Theory e{theory.vars, {}, {}, false};
    e.scope = {std::min(root, kids[i]), std::max(root, kids[i])};
    out.edge.push_back(std::move(e));
    out.subtree.push_back(Theory{theory.vars, scopes[i], {}, false});
  }
  std::vector<Clause> unary_root;
  for (const auto& clause : theory.clauses) {
    auto vs = clause_vars(clause);
    if (vs.empty()) continue;
    if (vs.size() == 1 && vs[0] == root) {
      unary_root.push_back(clause);
      continue;
    }
    bool has_root = std::binary_search(vs.begin(), vs.end(), root);
    VarId other = vs[0] == root ? vs.back() : vs[0];
    auto it = owner.find(other);
    if (it == owner.end()) continue;  // another component
    std::size_t i = it->second;
    for (VarId v : vs)
      if (v != root && (!owner.count(v) || owner[v] != i)) throw std::logic_error("partition: clause spans two children");
    if (has_root) {
      if (vs.size() != 2) throw std::logic_error("partition: clause spans two children");
      out.edge[i].clauses.push_back(clause);
    } else {
      out.subtree[i].clauses.push_back(clause);
    }
  }
  for (auto& e : out.edge) e.clauses.insert(e.clauses.begin(), unary_root.begin(), unary_root.end());
  return out;
}

}  // namespace smi
