#include "smi/pieces.hpp"

#include <algorithm>

#include "smi/errors.hpp"
#include "smi/graph.hpp"

namespace smi {

namespace {

struct XBound {
  LinearBound bound;
  bool upper;  // x <= bound
};

// For an atom mentioning x: the bound it places on x as a function of y.
XBound bound_on(const LinearAtom& a, VarId y, VarId x) {
  Rational cx = a.coefficient(x);
  Rational cy = a.coefficient(y);
  return {{-cy / cx, -a.constant() / cx}, sgn(cx) > 0};
}

IntervalSet child_union(const PieceSet& child) {
  IntervalSet out;
  for (const auto& p : child) out = out.unite(IntervalSet::between(p.lo, p.hi));
  return out;
}

IntervalSet unary_set_on(const Theory& theory, VarId v) {
  Theory t{theory.vars, {v}, unary_clauses_on(theory, v), false};
  return univariate_feasible_set(t);
}

BoundConfig config_at(const Theory& edge, VarId y, VarId x, const Rational& y_star, const IntervalSet& child) {
  IntervalSet acc = IntervalSet::everything();
  for (const auto& clause : edge.clauses) {
    IntervalSet set;
    bool satisfied = false;
    for (const auto& lit : clause) {
      const auto& a = std::get<LinearAtom>(lit);
      if (!a.mentions(x)) {
        // Over y alone (or ground): decided by y_star.
        Rational lhs = a.constant();
        for (const auto& t : a.terms()) lhs += t.coef * y_star;
        if (sgn(lhs) <= 0) satisfied = true;
        continue;
      }
      XBound b = bound_on(a, y, x);
      Endpoint e = Endpoint::at(b.bound.at(y_star), b.bound);
      set = set.unite(b.upper ? IntervalSet::below(e) : IntervalSet::above(e));
    }
    if (satisfied) continue;
    acc = acc.intersect(set);
    if (acc.empty()) return {};
  }
  acc = acc.intersect(child);
  return {acc.parts()};
}

}  // namespace

std::vector<LinearBound> BoundConfig::tags() const {
  std::vector<LinearBound> out;
  for (const auto& iv : intervals) {
    out.push_back(iv.lo.tag);
    out.push_back(iv.hi.tag);
  }
  return out;
}

BoundConfig x_interval_set(const Theory& edge, VarId y, VarId x, const Rational& y_star, const PieceSet& child) {
  return config_at(edge, y, x, y_star, child_union(child));
}

std::vector<Rational> critical_points(const Theory& edge, VarId y, VarId x, const PieceSet& child) {
  IntervalSet y_set = unary_set_on(edge, y);
  if (y_set.empty()) return {};
  if (!y_set.bounded()) throw InputError("variable '" + edge.var(y).name + "' has an unbounded feasible set");
  Rational lo = *y_set.parts().front().lo.value;
  Rational hi = *y_set.parts().back().hi.value;

  std::vector<LinearBound> linear, constant;
  std::vector<Rational> out{lo, hi};
  for (const auto& clause : edge.clauses)
    for (const auto& lit : clause) {
      const auto& a = std::get<LinearAtom>(lit);
      if (a.mentions(x)) {
        LinearBound b = bound_on(a, y, x).bound;
        (b.is_constant() ? constant : linear).push_back(b);
      } else if (a.mentions(y)) {
        out.push_back(-a.constant() / a.coefficient(y));
      }
    }
  for (const auto& p : child) {
    constant.push_back(LinearBound::constant(p.lo));
    constant.push_back(LinearBound::constant(p.hi));
  }
  auto dedup = [](std::vector<LinearBound>& bs) {
    std::sort(bs.begin(), bs.end(), [](const LinearBound& a, const LinearBound& b) {
      return a.slope != b.slope ? a.slope < b.slope : a.intercept < b.intercept;
    });
    bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
  };
  dedup(linear);
  dedup(constant);
  for (std::size_t i = 0; i < linear.size(); ++i) {
    for (std::size_t j = i + 1; j < linear.size(); ++j)
      if (linear[i].slope != linear[j].slope)
        out.push_back((linear[j].intercept - linear[i].intercept) / (linear[i].slope - linear[j].slope));
    for (const auto& c : constant) out.push_back((c.intercept - linear[i].intercept) / linear[i].slope);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  out.erase(std::remove_if(out.begin(), out.end(), [&](const Rational& v) { return v < lo || v > hi; }), out.end());
  return out;
}

PieceSet pe_edge(const Theory& edge, VarId y, VarId x, const PieceSet& child, std::vector<ClosedInterval>* rejected) {
  PieceSet out;
  if (edge.unsat || child.empty()) return out;
  auto points = critical_points(edge, y, x, child);
  IntervalSet child_set = child_union(child);
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const Rational& l = points[i];
    const Rational& u = points[i + 1];
    Rational mid = (l + u) / 2;
    BoundConfig config = config_at(edge, y, x, mid, child_set);
    if (config.empty()) {
      if (rejected) rejected->push_back({l, u});
      continue;
    }
    std::size_t degree = 0;
    for (const auto& iv : config.intervals) {
      const Rational& a = *iv.lo.value;
      const Rational& b = *iv.hi.value;
      for (const auto& p : child)
        if (p.lo < b && a < p.hi) degree = std::max(degree, p.degree);
    }
    out.push_back({l, u, degree + 1});
  }
  return out;
}

PieceSet shatter(const std::vector<PieceSet>& per_child, const IntervalSet& root_feasible) {
  std::vector<Rational> points;
  for (const auto& set : per_child)
    for (const auto& p : set) {
      points.push_back(p.lo);
      points.push_back(p.hi);
    }
  for (const auto& part : root_feasible.parts()) {
    if (part.lo.value) points.push_back(*part.lo.value);
    if (part.hi.value) points.push_back(*part.hi.value);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  PieceSet out;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    Rational mid = (points[i] + points[i + 1]) / 2;
    if (!root_feasible.contains(mid)) continue;
    std::size_t degree = 0;
    bool covered = true;
    for (const auto& set : per_child) {
      auto it = std::upper_bound(set.begin(), set.end(), mid, [](const Rational& v, const Piece& p) { return v < p.lo; });
      if (it == set.begin() || std::prev(it)->hi < mid) {
        covered = false;
        break;
      }
      degree += std::prev(it)->degree;
    }
    if (covered) out.push_back({points[i], points[i + 1], degree});
  }
  return out;
}

bool PieceMemo::find(const std::string& key, PieceSet& out) const {
  std::lock_guard lock(mutex_);
  auto it = map_.find(key);
  if (it == map_.end()) return false;
  out = it->second;
  return true;
}

void PieceMemo::store(const std::string& key, const PieceSet& value) {
  std::lock_guard lock(mutex_);
  map_.emplace(key, value);
}

std::size_t PieceMemo::size() const {
  std::lock_guard lock(mutex_);
  return map_.size();
}

PieceSet pe_node(const Theory& theory, VarId root, PieceMemo* memo, PieceTrace* trace) {
  if (theory.unsat) return {};
  std::string key;
  if (memo && !trace) {
    key = canonical_key(theory, root);
    PieceSet hit;
    if (memo->find(key, hit)) return hit;
  }
  IntervalSet root_set = unary_set_on(theory, root);
  if (!root_set.bounded()) throw InputError("variable '" + theory.var(root).name + "' has an unbounded feasible set");

  PieceSet out;
  Partition parts = partition(theory, root);
  if (parts.children.empty()) {
    for (const auto& iv : root_set.closed_parts()) out.push_back({iv.lo, iv.hi, 0});
  } else {
    std::vector<PieceSet> per_child;
    for (std::size_t i = 0; i < parts.children.size(); ++i) {
      PieceSet below = pe_node(parts.subtree[i], parts.children[i], memo, trace);
      per_child.push_back(pe_edge(parts.edge[i], root, parts.children[i], below));
      if (per_child.back().empty()) break;  // the whole theory is empty
    }
    if (!per_child.back().empty()) out = shatter(per_child, root_set);
  }
  if (trace) trace->emplace_back(root, out);
  if (memo && !trace) memo->store(key, out);
  return out;
}

std::string dump_line(const VarTable& vars, VarId v, const PieceSet& pieces) {
  std::string out = vars[v].name;
  for (const auto& p : pieces)
    out += " [" + p.lo.get_str() + "," + p.hi.get_str() + "]:" + std::to_string(p.degree);
  return out;
}

}  // namespace smi
