#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "smi/theory.hpp"

namespace smi {

/// Reads a problem file:
///
///   (declare-real <name> <lo> <hi>)     ; bounds become unary clauses
///   (declare-bool <name>)
///   (assert <formula>)                  ; clauses, implications, chains
///   (weight <guard> <poly>)
///
/// Formulas may use not/or/and/=> over literals; they are converted to CNF
/// by distribution. Inequalities (<, <=, >, >=) may be chained. Strictness
/// is dropped. Equalities, unknown names, unbounded reals and names with
/// the reserved "__" prefix are errors. Throws ParseError (a subtype of
/// InputError) with line and column.
Problem parse_problem(std::string_view text);

/// Parses a file holding only (assert ...) forms against the variables of
/// an existing problem.
std::vector<Clause> parse_query(std::string_view text, const Problem& problem);

/// Serialises a problem in the same grammar. Domain clauses are implied by
/// the declarations and not repeated.
std::string write_problem(const Problem& problem);

}  // namespace smi
