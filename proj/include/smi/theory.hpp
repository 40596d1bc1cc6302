#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "smi/interval_set.hpp"
#include "smi/rational.hpp"

namespace smi {

using VarId = std::uint32_t;

enum class VarKind { real, boolean };

struct Var {
  std::string name;
  VarKind kind = VarKind::real;
  Rational lo;  // real variables only
  Rational hi;
};

/// Variable declarations shared (immutably) by every theory derived from
/// one problem.
class VarTable {
 public:
  /// Throws InputError on a duplicate name or an empty real domain.
  VarId add(Var v);
  const Var& operator[](VarId id) const { return vars_.at(id); }
  std::optional<VarId> find(std::string_view name) const;
  std::size_t size() const { return vars_.size(); }
  const std::vector<Var>& all() const { return vars_; }

 private:
  std::vector<Var> vars_;
  std::unordered_map<std::string, VarId> index_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

struct Term {
  VarId var;
  Rational coef;
  friend bool operator==(const Term&, const Term&) = default;
};

/// sum(coef * var) + constant <= 0, normalised so that terms are sorted by
/// variable id and the first coefficient is +1 or -1. Strict inequalities
/// are represented by their closure.
class LinearAtom {
 public:
  /// Throws std::invalid_argument if every coefficient is zero.
  LinearAtom(std::vector<Term> terms, Rational constant);

  /// A ground expression folds to its truth value.
  static std::variant<bool, LinearAtom> make(std::vector<Term> terms, Rational constant);

  const std::vector<Term>& terms() const { return terms_; }
  const Rational& constant() const { return constant_; }
  Rational coefficient(VarId v) const;
  bool mentions(VarId v) const;

  /// The complement, closed: not(e <= 0) becomes -e <= 0.
  LinearAtom negated() const;
  std::variant<bool, LinearAtom> substitute(VarId v, const Rational& value) const;

  friend bool operator==(const LinearAtom&, const LinearAtom&) = default;

 private:
  LinearAtom() = default;
  std::vector<Term> terms_;
  Rational constant_;
};

struct BoolLit {
  VarId var;
  bool positive = true;
  friend bool operator==(const BoolLit&, const BoolLit&) = default;
};

using Literal = std::variant<LinearAtom, BoolLit>;
using Clause = std::vector<Literal>;

Literal negate(const Literal& lit);
/// Sorted, duplicate-free variables of a literal / clause.
std::vector<VarId> literal_vars(const Literal& lit);
std::vector<VarId> clause_vars(const Clause& clause);

/// CNF over a scope of variables. Real domains are present as unary
/// clauses; `unsat` records that simplification produced an empty clause.
struct Theory {
  VarTablePtr vars;
  std::vector<VarId> scope;  // sorted
  std::vector<Clause> clauses;
  bool unsat = false;

  const Var& var(VarId id) const { return (*vars)[id]; }
  bool in_scope(VarId id) const;
};

/// The two unary clauses lo <= v and v <= hi for a real variable.
std::vector<Clause> domain_clauses(const VarTable& vars, VarId v);

/// Eliminates v by folding value into every atom. Ground literals are
/// evaluated: a true literal deletes its clause, a false one is dropped from
/// it, and an emptied clause marks the result unsat.
Theory substitute(const Theory& theory, VarId v, const Rational& value);

/// Clauses whose variables all lie in `keep`; scope becomes scope ∩ keep.
Theory restrict_to(const Theory& theory, const std::vector<VarId>& keep);

/// Feasible set of a clause over the single real variable x, as a union of
/// rays (every literal must be an atom over x alone).
IntervalSet unary_clause_set(const Clause& clause, VarId x);

/// Exact feasible set of a theory mentioning at most one real variable:
/// per-clause unions of rays intersected across clauses. With no clauses
/// the result is the whole line.
IntervalSet univariate_feasible_set(const Theory& theory);

/// Clauses mentioning exactly the variable v.
std::vector<Clause> unary_clauses_on(const Theory& theory, VarId v);

/// Canonical serialisation of a theory, with variables renamed to local
/// indices in breadth-first order from `root` (neighbours by name).
/// Isomorphic theories reached the same way get the same key. Declared
/// domains of every scoped variable are part of the key.
std::string canonical_key(const Theory& theory, VarId root);

/// One monomial coef * prod(var^power); powers sorted by variable.
struct Monomial {
  Rational coef;
  std::vector<std::pair<VarId, unsigned>> powers;
};
using Polynomial = std::vector<Monomial>;

/// A per-literal weight: when every guard literal holds, the world's weight
/// is multiplied by `weight`. A guard is one literal or an interval over a
/// single variable (two literals).
struct WeightEntry {
  std::vector<Literal> guard;
  Polynomial weight;
};

struct Problem {
  Theory theory;
  std::vector<WeightEntry> weights;
};

std::string literal_to_string(const VarTable& vars, const Literal& lit);
std::string clause_to_string(const VarTable& vars, const Clause& clause);

}  // namespace smi
