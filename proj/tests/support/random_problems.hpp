#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "smi/theory.hpp"

namespace smi::testing {

struct RandomShape {
  int max_reals = 4;
  int max_bools = 2;
  int max_weights = 2;  // monomial entries
  int max_degree = 2;
};

/// Problem text with a tree-shaped primal graph: a random tree over the
/// reals, one or two random clauses per edge, Booleans hanging off a real
/// or isolated, monomial weights guarded by a nonnegative interval of a
/// real or by a Boolean literal.
std::string random_problem_text(std::mt19937_64& rng, const RandomShape& shape = {});

}  // namespace smi::testing
