#include "smi/theory.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "smi/errors.hpp"

namespace smi {

VarId VarTable::add(Var v) {
  if (index_.count(v.name)) throw InputError("duplicate declaration of '" + v.name + "'");
  if (v.kind == VarKind::real && !(v.lo < v.hi))
    throw InputError("empty domain for real variable '" + v.name + "'");
  auto id = static_cast<VarId>(vars_.size());
  index_.emplace(v.name, id);
  vars_.push_back(std::move(v));
  return id;
}

std::optional<VarId> VarTable::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

// Sorts by variable, merges duplicates, drops zeros. Returns false if
// nothing is left.
bool tidy_terms(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().var == t.var) out.back().coef += t.coef;
    else out.push_back(std::move(t));
  }
  std::erase_if(out, [](const Term& t) { return sgn(t.coef) == 0; });
  terms = std::move(out);
  return !terms.empty();
}

}  // namespace

LinearAtom::LinearAtom(std::vector<Term> terms, Rational constant) : terms_(std::move(terms)), constant_(std::move(constant)) {
  if (!tidy_terms(terms_)) throw std::invalid_argument("linear atom without variables");
  Rational scale = abs(terms_.front().coef);
  if (scale != 1) {
    for (auto& t : terms_) t.coef /= scale;
    constant_ /= scale;
  }
}

std::variant<bool, LinearAtom> LinearAtom::make(std::vector<Term> terms, Rational constant) {
  if (!tidy_terms(terms)) return sgn(constant) <= 0;
  return LinearAtom(std::move(terms), std::move(constant));
}

Rational LinearAtom::coefficient(VarId v) const {
  for (const auto& t : terms_)
    if (t.var == v) return t.coef;
  return Rational(0);
}

bool LinearAtom::mentions(VarId v) const {
  return std::any_of(terms_.begin(), terms_.end(), [v](const Term& t) { return t.var == v; });
}

LinearAtom LinearAtom::negated() const {
  LinearAtom out;
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.coef = -t.coef;
  out.constant_ = -constant_;
  return out;
}

std::variant<bool, LinearAtom> LinearAtom::substitute(VarId v, const Rational& value) const {
  if (!mentions(v)) return *this;
  std::vector<Term> rest;
  Rational constant = constant_;
  for (const auto& t : terms_) {
    if (t.var == v) constant += t.coef * value;
    else rest.push_back(t);
  }
  return make(std::move(rest), std::move(constant));
}

Literal negate(const Literal& lit) {
  if (const auto* atom = std::get_if<LinearAtom>(&lit)) return atom->negated();
  auto b = std::get<BoolLit>(lit);
  b.positive = !b.positive;
  return b;
}

std::vector<VarId> literal_vars(const Literal& lit) {
  if (const auto* atom = std::get_if<LinearAtom>(&lit)) {
    std::vector<VarId> out;
    for (const auto& t : atom->terms()) out.push_back(t.var);
    return out;
  }
  return {std::get<BoolLit>(lit).var};
}

std::vector<VarId> clause_vars(const Clause& clause) {
  std::vector<VarId> out;
  for (const auto& lit : clause) {
    auto vs = literal_vars(lit);
    out.insert(out.end(), vs.begin(), vs.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Theory::in_scope(VarId id) const { return std::binary_search(scope.begin(), scope.end(), id); }

std::vector<Clause> domain_clauses(const VarTable& vars, VarId v) {
  const Var& var = vars[v];
  return {Clause{LinearAtom({{v, Rational(-1)}}, var.lo)}, Clause{LinearAtom({{v, Rational(1)}}, -var.hi)}};
}

Theory substitute(const Theory& theory, VarId v, const Rational& value) {
  Theory out;
  out.vars = theory.vars;
  out.scope = theory.scope;
  std::erase(out.scope, v);
  out.unsat = theory.unsat;
  out.clauses.reserve(theory.clauses.size());
  for (const auto& clause : theory.clauses) {
    Clause reduced;
    bool satisfied = false;
    for (const auto& lit : clause) {
      const auto* atom = std::get_if<LinearAtom>(&lit);
      if (!atom || !atom->mentions(v)) {
        reduced.push_back(lit);
        continue;
      }
      auto r = atom->substitute(v, value);
      if (const bool* truth = std::get_if<bool>(&r)) {
        if (*truth) {
          satisfied = true;
          break;
        }
      } else {
        reduced.push_back(std::get<LinearAtom>(std::move(r)));
      }
    }
    if (satisfied) continue;
    if (reduced.empty()) out.unsat = true;
    out.clauses.push_back(std::move(reduced));
  }
  return out;
}

Theory restrict_to(const Theory& theory, const std::vector<VarId>& keep) {
  std::vector<VarId> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  Theory out;
  out.vars = theory.vars;
  out.unsat = theory.unsat;
  std::set_intersection(theory.scope.begin(), theory.scope.end(), sorted.begin(), sorted.end(),
                        std::back_inserter(out.scope));
  for (const auto& clause : theory.clauses) {
    auto vs = clause_vars(clause);
    if (vs.empty()) continue;
    if (std::includes(sorted.begin(), sorted.end(), vs.begin(), vs.end())) out.clauses.push_back(clause);
  }
  return out;
}

IntervalSet unary_clause_set(const Clause& clause, VarId x) {
  IntervalSet set;
  for (const auto& lit : clause) {
    const auto* atom = std::get_if<LinearAtom>(&lit);
    if (!atom || atom->terms().size() != 1 || atom->terms().front().var != x)
      throw std::invalid_argument("unary_clause_set: literal is not an atom over the variable");
    const Rational& a = atom->terms().front().coef;
    Rational bound = -atom->constant() / a;
    set = set.unite(sgn(a) > 0 ? IntervalSet::below(Endpoint::at(bound)) : IntervalSet::above(Endpoint::at(bound)));
  }
  return set;
}

IntervalSet univariate_feasible_set(const Theory& theory) {
  if (theory.unsat) return {};
  std::optional<VarId> x;
  IntervalSet result = IntervalSet::everything();
  for (const auto& clause : theory.clauses) {
    auto vs = clause_vars(clause);
    if (vs.size() != 1 || (x && *x != vs.front()))
      throw std::invalid_argument("univariate_feasible_set: theory is not univariate");
    x = vs.front();
    result = result.intersect(unary_clause_set(clause, *x));
    if (result.empty()) break;
  }
  return result;
}

std::vector<Clause> unary_clauses_on(const Theory& theory, VarId v) {
  std::vector<Clause> out;
  for (const auto& clause : theory.clauses) {
    auto vs = clause_vars(clause);
    if (vs.size() == 1 && vs.front() == v) out.push_back(clause);
  }
  return out;
}

namespace {

std::string literal_key(const Literal& lit, const std::vector<std::uint32_t>& local) {
  if (const auto* b = std::get_if<BoolLit>(&lit))
    return "b" + std::to_string(local[b->var]) + (b->positive ? "+" : "-");
  const auto& atom = std::get<LinearAtom>(lit);
  std::vector<std::pair<std::uint32_t, Rational>> terms;
  for (const auto& t : atom.terms()) terms.emplace_back(local[t.var], t.coef);
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Rational scale = abs(terms.front().second);
  std::string out = "a";
  for (const auto& [id, coef] : terms) out += std::to_string(id) + ":" + Rational(coef / scale).get_str() + ",";
  out += Rational(atom.constant() / scale).get_str();
  return out;
}

}  // namespace

std::string canonical_key(const Theory& theory, VarId root) {
  if (theory.unsat) return "UNSAT";
  const VarTable& vars = *theory.vars;
  std::unordered_map<VarId, std::vector<VarId>> adjacency;
  std::vector<std::vector<VarId>> clause_var_lists;
  clause_var_lists.reserve(theory.clauses.size());
  for (const auto& clause : theory.clauses) {
    clause_var_lists.push_back(clause_vars(clause));
    const auto& vs = clause_var_lists.back();
    for (VarId a : vs)
      for (VarId b : vs)
        if (a != b) adjacency[a].push_back(b);
  }
  auto by_name = [&](VarId a, VarId b) { return vars[a].name < vars[b].name; };

  constexpr std::uint32_t unset = ~std::uint32_t{0};
  std::vector<std::uint32_t> local(vars.size(), unset);
  std::vector<VarId> order;
  std::deque<VarId> queue;
  auto visit = [&](VarId v) {
    if (local[v] != unset) return;
    local[v] = static_cast<std::uint32_t>(order.size());
    order.push_back(v);
    queue.push_back(v);
  };
  auto drain = [&] {
    while (!queue.empty()) {
      VarId v = queue.front();
      queue.pop_front();
      auto& next = adjacency[v];
      std::sort(next.begin(), next.end(), by_name);
      for (VarId w : next) visit(w);
    }
  };
  visit(root);
  drain();
  std::vector<VarId> rest = theory.scope;
  std::sort(rest.begin(), rest.end(), by_name);
  for (VarId v : rest) {
    visit(v);
    drain();
  }

  std::vector<std::string> clause_keys;
  clause_keys.reserve(theory.clauses.size());
  for (const auto& clause : theory.clauses) {
    std::vector<std::string> lits;
    for (const auto& lit : clause) lits.push_back(literal_key(lit, local));
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    std::string k;
    for (const auto& l : lits) k += l + "|";
    clause_keys.push_back(std::move(k));
  }
  std::sort(clause_keys.begin(), clause_keys.end());
  clause_keys.erase(std::unique(clause_keys.begin(), clause_keys.end()), clause_keys.end());

  std::string key;
  for (VarId v : order) {
    const Var& var = vars[v];
    key += var.kind == VarKind::real ? "r" + var.lo.get_str() + "," + var.hi.get_str() + ";" : "b;";
  }
  key += "#";
  for (const auto& k : clause_keys) key += k + "&";
  return key;
}

std::string literal_to_string(const VarTable& vars, const Literal& lit) {
  if (const auto* b = std::get_if<BoolLit>(&lit))
    return b->positive ? vars[b->var].name : "(not " + vars[b->var].name + ")";
  const auto& atom = std::get<LinearAtom>(lit);
  std::ostringstream out;
  out << "(<= (+";
  for (const auto& t : atom.terms()) out << " (* " << t.coef.get_str() << " " << vars[t.var].name << ")";
  out << " " << atom.constant().get_str() << ") 0)";
  return out.str();
}

std::string clause_to_string(const VarTable& vars, const Clause& clause) {
  if (clause.size() == 1) return literal_to_string(vars, clause.front());
  std::string out = "(or";
  for (const auto& lit : clause) out += " " + literal_to_string(vars, lit);
  return out + ")";
}

}  // namespace smi
