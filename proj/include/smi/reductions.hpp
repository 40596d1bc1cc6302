#pragma once

#include <string>
#include <utility>
#include <vector>

#include "smi/theory.hpp"

namespace smi {

/// Names of variables introduced by the reductions and what they encode.
struct ReductionTrace {
  struct Introduced {
    std::string name;
    std::string source;  // e.g. "bool b", "weight 2 factor 1 of x", "weight 0 coefficient"
  };
  std::vector<Introduced> introduced;
  /// Original literal text -> replacement literal text (Boolean elimination).
  std::vector<std::pair<std::string, std::string>> literal_map;
};

/// Replaces each Boolean b by a real "__lam_<b>" on [-1, 1]; b becomes
/// 0 <= lam and (not b) becomes lam <= 0. Variable ids are preserved, so
/// the primal graph is unchanged up to renaming. Weights follow their
/// literals.
Problem eliminate_booleans(const Problem& p, ReductionTrace& trace);

/// Clauses and auxiliary variables whose volume is coef * prod(x^k) where
/// the guard holds and 1 elsewhere. Aux variables are added to
/// `vars` and `scope`; `tag` names them ("__z_<tag>_<j>", "__v_<tag>").
/// Throws InputError for a non-positive coefficient, a guard over more than
/// one variable, a factor other than the guard variable, or a guard that
/// admits negative values of that variable.
std::vector<Clause> monomial_theory(VarTable& vars, std::vector<VarId>& scope, const Monomial& m,
                                    const std::vector<Literal>& guard, const std::string& tag, ReductionTrace& trace);

enum class WeightStrategy { expand, selector };

struct WeightedSum {
  std::vector<std::pair<Rational, Problem>> summands;  // value = sum coef * MI
};

/// Removes every weight entry. expand: one summand per choice of a term in
/// every multi-term entry, each a tree-preserving unweighted problem.
/// selector: a single summand using a selector variable per multi-term
/// entry (usually not tree shaped). Requires a Boolean-free problem.
WeightedSum reduce_weights(const Problem& p, WeightStrategy strategy, ReductionTrace& trace);

/// eliminate_booleans followed by reduce_weights.
WeightedSum full_reduce(const Problem& p, ReductionTrace& trace, WeightStrategy strategy = WeightStrategy::expand);

}  // namespace smi
