#include <doctest.h>

#include <random>

#include "smi/bench.hpp"
#include "smi/errors.hpp"
#include "smi/graph.hpp"
#include "smi/parser.hpp"

using namespace smi;

namespace {

VarId id(const Problem& p, const std::string& name) { return *p.theory.vars->find(name); }

std::string path_text(int n) { return generate({Family::path, static_cast<std::size_t>(n), 10}); }

// Random labelled tree over x0..x{n-1}, written as problem text.
std::string random_tree_text(std::mt19937_64& rng, int n) {
  std::string out;
  for (int i = 0; i < n; ++i) out += "(declare-real x" + std::to_string(i) + " 0 1)\n";
  for (int i = 1; i < n; ++i) {
    int p = std::uniform_int_distribution<int>(0, i - 1)(rng);
    out += "(assert (<= x" + std::to_string(p) + " x" + std::to_string(i) + "))\n";
  }
  return out;
}

}  // namespace

TEST_CASE("primal graph examples") {
  Problem p = parse_problem(
      "(declare-real y 0 1)(declare-real x1 0 1)(declare-real x2 0 1)"
      "(assert (or (<= y 1/2) (<= x1 1/2)))(assert (or (<= y 1/2) (<= x2 1/2)))");
  PrimalGraph g = primal_graph(p.theory);
  CHECK(g.edge_count() == 2);
  CHECK(g.neighbours(id(p, "y")) == std::set<VarId>{id(p, "x1"), id(p, "x2")});

  Problem star = parse_problem(generate({Family::star, 5, 10}));
  PrimalGraph gs = primal_graph(star.theory);
  CHECK(gs.neighbours(id(star, "x0")).size() == 4);
  CHECK(gs.edge_count() == 4);

  Problem one = parse_problem("(declare-real x 0 1)");
  PrimalGraph g1 = primal_graph(one.theory);
  CHECK(g1.vertices.size() == 1);
  CHECK(g1.edge_count() == 0);
}

TEST_CASE("tree detection") {
  CHECK(is_tree(primal_graph(parse_problem(generate({Family::star, 6, 10})).theory)));
  Problem tri = parse_problem("(declare-real a 0 1)(declare-real b 0 1)(declare-real c 0 1)(assert (<= (+ a b c) 1))");
  PrimalGraph gt = primal_graph(tri.theory);
  CHECK_FALSE(is_tree(gt));
  auto cycle = find_cycle(gt);
  REQUIRE(cycle);
  CHECK(cycle->size() == 3);
  CHECK_THROWS_AS(require_tree(gt, *tri.theory.vars), StructuralError);
  CHECK_THROWS_AS(build_pseudo_tree(gt, *tri.theory.vars, TreeStrategy::rooted), StructuralError);

  Problem forest = parse_problem(
      "(declare-real a 0 1)(declare-real b 0 1)(declare-real c 0 1)(declare-real d 0 1)"
      "(assert (<= a b))(assert (<= c d))");
  PrimalGraph gf = primal_graph(forest.theory);
  CHECK(is_tree(gf));
  CHECK(components(gf).size() == 2);
  CHECK_FALSE(find_cycle(gf));
}

TEST_CASE("cycle of four is reported in order") {
  Problem p = parse_problem(
      "(declare-real a 0 1)(declare-real b 0 1)(declare-real c 0 1)(declare-real d 0 1)"
      "(assert (<= a b))(assert (<= b c))(assert (<= c d))(assert (<= d a))");
  PrimalGraph g = primal_graph(p.theory);
  auto cycle = find_cycle(g);
  REQUIRE(cycle);
  REQUIRE(cycle->size() == 4);
  for (std::size_t i = 0; i < cycle->size(); ++i)
    CHECK(g.neighbours((*cycle)[i]).count((*cycle)[(i + 1) % cycle->size()]) == 1);
}

TEST_CASE("pseudo tree examples") {
  Problem star = parse_problem(generate({Family::star, 7, 10}));
  PrimalGraph gs = primal_graph(star.theory);
  for (auto s : {TreeStrategy::rooted, TreeStrategy::balanced}) {
    PseudoTree t = build_pseudo_tree(gs, *star.theory.vars, s);
    CHECK(t.height == 1);
    CHECK(t.roots == std::vector<VarId>{id(star, "x0")});
    CHECK(t.leaves == 6);
  }

  Problem path = parse_problem(path_text(5));
  PrimalGraph gp = primal_graph(path.theory);
  PseudoTree bal = build_pseudo_tree(gp, *path.theory.vars, TreeStrategy::balanced);
  CHECK(bal.height == 2);
  CHECK(bal.roots == std::vector<VarId>{id(path, "x2")});
  CHECK(satisfies_ancestor_condition(gp, bal));
  PseudoTree rooted = build_pseudo_tree(gp, *path.theory.vars, TreeStrategy::rooted);
  CHECK(rooted.height == 2);
  CHECK(rooted.leaves == 2);

  Problem one = parse_problem("(declare-real x 0 1)");
  PseudoTree t1 = build_pseudo_tree(primal_graph(one.theory), *one.theory.vars, TreeStrategy::balanced);
  CHECK(t1.height == 0);
  CHECK(t1.leaves == 1);
}

TEST_CASE("balanced pseudo tree of a long path is logarithmic") {
  Problem p = parse_problem(path_text(31));
  PrimalGraph g = primal_graph(p.theory);
  PseudoTree t = build_pseudo_tree(g, *p.theory.vars, TreeStrategy::balanced);
  CHECK(t.height == 4);
  CHECK(satisfies_ancestor_condition(g, t));
  CHECK(build_pseudo_tree(g, *p.theory.vars, TreeStrategy::rooted).height == 15);
}

TEST_CASE("pseudo trees always satisfy the ancestor condition") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + trial % 25;
    Problem p = parse_problem(random_tree_text(rng, n));
    PrimalGraph g = primal_graph(p.theory);
    for (auto s : {TreeStrategy::rooted, TreeStrategy::balanced}) {
      PseudoTree t = build_pseudo_tree(g, *p.theory.vars, s);
      CHECK(satisfies_ancestor_condition(g, t));
      CHECK(t.parent.size() == static_cast<std::size_t>(n));
      if (s == TreeStrategy::balanced) CHECK((std::size_t{1} << t.height) <= static_cast<std::size_t>(n));
    }
  }
}

TEST_CASE("partition") {
  Problem p = parse_problem(
      "(declare-real y -1 1)(declare-real x1 -1/2 1/2)(declare-real x2 -1/2 1/2)\n"
      "(assert (or (<= (+ x1 1) y) (<= y (- x1 1))))\n(assert (or (<= (+ x2 1) y) (<= y (- x2 1))))");
  VarId y = id(p, "y");
  Partition parts = partition(p.theory, y);
  REQUIRE(parts.children.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    // the edge clause plus the two replicated root bounds
    CHECK(parts.edge[i].clauses.size() == 3);
    CHECK(parts.subtree[i].clauses.size() == 2);
    CHECK(parts.subtree[i].scope == std::vector<VarId>{parts.children[i]});
  }

  Problem leaf = parse_problem("(declare-real a 0 1)");
  CHECK(partition(leaf.theory, 0).children.empty());

  Problem abc = parse_problem("(declare-real a 0 1)(declare-real b 0 1)(declare-real c 0 1)(assert (<= a b))(assert (<= b c))");
  Partition pa = partition(abc.theory, id(abc, "a"));
  REQUIRE(pa.children == std::vector<VarId>{id(abc, "b")});
  bool has_bc = false;
  for (const auto& cl : pa.subtree[0].clauses) has_bc = has_bc || clause_vars(cl).size() == 2;
  CHECK(has_bc);
}

TEST_CASE("partition covers every clause once") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    Problem p = parse_problem(random_tree_text(rng, 2 + trial % 8));
    VarId root = 0;
    Partition parts = partition(p.theory, root);
    std::size_t unary_root = unary_clauses_on(p.theory, root).size();
    std::size_t total = unary_root;
    for (std::size_t i = 0; i < parts.children.size(); ++i)
      total += parts.edge[i].clauses.size() - unary_root + parts.subtree[i].clauses.size();
    CHECK(total == p.theory.clauses.size());
  }
}

TEST_CASE("substitution never adds primal edges") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    Problem p = parse_problem(random_tree_text(rng, 2 + trial % 8));
    PrimalGraph before = primal_graph(p.theory);
    VarId v = static_cast<VarId>(trial % p.theory.scope.size());
    PrimalGraph after = primal_graph(substitute(p.theory, v, make_rational(1, 3)));
    CHECK(after.adjacent.count(v) == 0);
    for (const auto& [a, ns] : after.adjacent)
      for (VarId b : ns) CHECK(before.neighbours(a).count(b) == 1);
  }
}
