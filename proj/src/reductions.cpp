#include "smi/reductions.hpp"

#include <algorithm>
#include <set>

#include "smi/errors.hpp"

namespace smi {

namespace {

LinearAtom atom(std::vector<Term> terms, Rational constant) { return LinearAtom(std::move(terms), std::move(constant)); }

// v <= bound
Literal at_most(VarId v, const Rational& bound) { return atom({{v, 1}}, -bound); }
// bound <= v
Literal at_least(VarId v, const Rational& bound) { return atom({{v, -1}}, bound); }

Literal replace_bool(const Literal& lit) {
  if (const auto* b = std::get_if<BoolLit>(&lit)) return b->positive ? at_least(b->var, 0) : at_most(b->var, 0);
  return lit;
}

std::set<VarId> guard_vars(const std::vector<Literal>& guard) {
  std::set<VarId> out;
  for (const auto& l : guard)
    for (VarId v : literal_vars(l)) out.insert(v);
  return out;
}

// (not g1 or ... or not gk or lit)
Clause when(const std::vector<Literal>& guard, const Literal& lit) {
  Clause c;
  for (const auto& g : guard) c.push_back(negate(g));
  c.push_back(lit);
  return c;
}

// not(g1 and ... and gk) => lit, one clause per guard literal
std::vector<Clause> unless(const std::vector<Literal>& guard, const Literal& lit) {
  std::vector<Clause> out;
  for (const auto& g : guard) out.push_back(Clause{g, lit});
  return out;
}

VarId add_aux(VarTable& vars, std::vector<VarId>& scope, std::vector<Clause>& clauses, const std::string& name,
              const Rational& hi, const std::string& source, ReductionTrace& trace) {
  VarId id = vars.add(Var{name, VarKind::real, 0, hi});
  scope.push_back(id);
  auto dc = domain_clauses(vars, id);
  clauses.insert(clauses.end(), dc.begin(), dc.end());
  if (std::none_of(trace.introduced.begin(), trace.introduced.end(), [&](const auto& i) { return i.name == name; }))
    trace.introduced.push_back({name, source});
  return id;
}

void check_factors(const VarTable& vars, const Monomial& m, const std::vector<Literal>& guard) {
  if (sgn(m.coef) <= 0) throw InputError("weight coefficients must be positive, got " + to_string(m.coef));
  auto gv = guard_vars(guard);
  if (gv.size() != 1) throw InputError("weight guard must mention exactly one variable");
  VarId g = *gv.begin();
  bool has_factor = false;
  for (const auto& [v, k] : m.powers) {
    if (v != g) throw InputError("weight factor '" + vars[v].name + "' is not the variable of its guard");
    if (vars[v].kind != VarKind::real) throw InputError("weight factor '" + vars[v].name + "' is not real");
    has_factor = has_factor || k > 0;
  }
  if (!has_factor) return;
  Theory region{nullptr, {g}, domain_clauses(vars, g), false};
  for (const auto& l : guard) region.clauses.push_back(Clause{l});
  IntervalSet where = univariate_feasible_set(region);
  if (!where.empty() && sgn(*where.parts().front().lo.value) < 0)
    throw InputError("weight factor '" + vars[g].name + "' can be negative where its guard holds");
}

// Aux variables for one monomial under an arbitrary conjunctive guard.
std::vector<Clause> encode_monomial(VarTable& vars, std::vector<VarId>& scope, const Monomial& m,
                                    const std::vector<Literal>& guard, const std::string& tag, ReductionTrace& trace) {
  std::vector<Clause> out;
  std::size_t j = 0;
  for (const auto& [x, k] : m.powers)
    for (unsigned r = 0; r < k; ++r) {
      ++j;
      Rational hi = std::max(Rational(1), vars[x].hi);
      VarId z = add_aux(vars, scope, out, "__z_" + tag + "_" + std::to_string(j), hi,
                        "weight " + tag + " factor " + std::to_string(j) + " of " + vars[x].name, trace);
      out.push_back(when(guard, atom({{z, 1}, {x, -1}}, 0)));
      auto neg = unless(guard, at_most(z, 1));
      out.insert(out.end(), neg.begin(), neg.end());
    }
  if (m.coef != 1) {
    Rational hi = std::max(Rational(1), m.coef);
    VarId v = add_aux(vars, scope, out, "__v_" + tag, hi, "weight " + tag + " coefficient", trace);
    if (m.coef != hi) out.push_back(when(guard, at_most(v, m.coef)));
    if (hi != 1) {
      auto neg = unless(guard, at_most(v, 1));
      out.insert(out.end(), neg.begin(), neg.end());
    }
  }
  return out;
}

}  // namespace

Problem eliminate_booleans(const Problem& p, ReductionTrace& trace) {
  const VarTable& old = *p.theory.vars;
  bool any = std::any_of(old.all().begin(), old.all().end(), [](const Var& v) { return v.kind == VarKind::boolean; });
  if (!any) return p;
  auto vars = std::make_shared<VarTable>();
  for (const Var& v : old.all()) {
    if (v.kind == VarKind::real) {
      vars->add(v);
    } else {
      vars->add(Var{"__lam_" + v.name, VarKind::real, -1, 1});
      trace.introduced.push_back({"__lam_" + v.name, "bool " + v.name});
      trace.literal_map.emplace_back(v.name, "(<= 0 __lam_" + v.name + ")");
      trace.literal_map.emplace_back("(not " + v.name + ")", "(<= __lam_" + v.name + " 0)");
    }
  }
  Problem out;
  out.theory.vars = vars;
  out.theory.scope = p.theory.scope;
  out.theory.unsat = p.theory.unsat;
  for (const auto& clause : p.theory.clauses) {
    Clause c;
    for (const auto& l : clause) c.push_back(replace_bool(l));
    out.theory.clauses.push_back(std::move(c));
  }
  for (VarId v : p.theory.scope)
    if (old[v].kind == VarKind::boolean) {
      auto dc = domain_clauses(*vars, v);
      out.theory.clauses.insert(out.theory.clauses.end(), dc.begin(), dc.end());
    }
  for (const auto& w : p.weights) {
    WeightEntry e;
    for (const auto& l : w.guard) e.guard.push_back(replace_bool(l));
    for (const auto& m : w.weight)
      for (const auto& [v, k] : m.powers)
        if (old[v].kind == VarKind::boolean && k > 0)
          throw InputError("weight polynomial mentions Boolean '" + old[v].name + "'");
    e.weight = w.weight;
    out.weights.push_back(std::move(e));
  }
  return out;
}

std::vector<Clause> monomial_theory(VarTable& vars, std::vector<VarId>& scope, const Monomial& m,
                                    const std::vector<Literal>& guard, const std::string& tag,
                                    ReductionTrace& trace) {
  check_factors(vars, m, guard);
  return encode_monomial(vars, scope, m, guard, tag, trace);
}

WeightedSum reduce_weights(const Problem& p, WeightStrategy strategy, ReductionTrace& trace) {
  const VarTable& base = *p.theory.vars;
  for (VarId v : p.theory.scope)
    if (base[v].kind == VarKind::boolean) throw InputError("reduce_weights: eliminate Booleans first");
  for (const auto& w : p.weights) {
    if (w.weight.empty()) throw InputError("empty weight polynomial");
    for (const auto& m : w.weight) check_factors(base, m, w.guard);
  }

  WeightedSum out;
  if (strategy == WeightStrategy::selector) {
    auto vars = std::make_shared<VarTable>(base);
    Problem q{p.theory, {}};
    for (std::size_t i = 0; i < p.weights.size(); ++i) {
      const auto& w = p.weights[i];
      std::string tag = std::to_string(i);
      std::vector<Clause> cs;
      if (w.weight.size() == 1) {
        cs = encode_monomial(*vars, q.theory.scope, w.weight.front(), w.guard, tag, trace);
      } else {
        Rational k(static_cast<long>(w.weight.size()));
        VarId lam = add_aux(*vars, q.theory.scope, cs, "__sel_" + tag, k, "weight " + tag + " term selector", trace);
        // Outside the guard only the first unit of the selector range counts.
        auto off = unless(w.guard, at_most(lam, 1));
        cs.insert(cs.end(), off.begin(), off.end());
        for (std::size_t t = 0; t < w.weight.size(); ++t) {
          std::vector<Literal> g = w.guard;
          g.push_back(at_least(lam, Rational(static_cast<long>(t))));
          g.push_back(at_most(lam, Rational(static_cast<long>(t + 1))));
          auto more = encode_monomial(*vars, q.theory.scope, w.weight[t], g, tag + "_" + std::to_string(t), trace);
          cs.insert(cs.end(), more.begin(), more.end());
        }
      }
      q.theory.clauses.insert(q.theory.clauses.end(), cs.begin(), cs.end());
    }
    std::sort(q.theory.scope.begin(), q.theory.scope.end());
    q.theory.vars = vars;
    out.summands.emplace_back(Rational(1), std::move(q));
    return out;
  }

  std::size_t total = 1;
  for (const auto& w : p.weights) {
    total *= w.weight.size();
    if (total > 1000000) throw InputError("weight expansion exceeds one million summands");
  }
  std::vector<std::size_t> pick(p.weights.size(), 0);
  for (std::size_t s = 0; s < total; ++s) {
    auto vars = std::make_shared<VarTable>(base);
    Problem q{p.theory, {}};
    Rational coef(1);
    for (std::size_t i = 0; i < p.weights.size(); ++i) {
      const auto& w = p.weights[i];
      // (g ? sum_t m_t : 1) = sum_t (1/T) (g ? T m_t : 1)
      Rational terms(static_cast<long>(w.weight.size()));
      Monomial m = w.weight[pick[i]];
      m.coef *= terms;
      coef /= terms;
      auto cs = encode_monomial(*vars, q.theory.scope, m, w.guard, std::to_string(i), trace);
      q.theory.clauses.insert(q.theory.clauses.end(), cs.begin(), cs.end());
    }
    std::sort(q.theory.scope.begin(), q.theory.scope.end());
    q.theory.vars = vars;
    out.summands.emplace_back(coef, std::move(q));
    for (std::size_t i = 0; i < pick.size(); ++i) {
      if (++pick[i] < p.weights[i].weight.size()) break;
      pick[i] = 0;
    }
  }
  return out;
}

WeightedSum full_reduce(const Problem& p, ReductionTrace& trace, WeightStrategy strategy) {
  return reduce_weights(eliminate_booleans(p, trace), strategy, trace);
}

}  // namespace smi
