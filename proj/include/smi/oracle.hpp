#pragma once

#include <cstdint>
#include <variant>

#include "smi/engine.hpp"

namespace smi {

/// Monte-Carlo estimate of a (weighted) model integral.
struct Estimate {
  double mean = 0;
  double std_error = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Uniform rejection sampling over the domain box (Booleans drawn
/// uniformly), evaluating clauses and weights in double precision.
/// Samples are drawn in fixed-size chunks, each from its own seeded
/// stream, so the result depends only on (samples, seed) and not on
/// `threads`. Throws std::invalid_argument for zero samples.
Estimate mc_wmi(const Problem& p, std::uint64_t samples, std::uint64_t seed, unsigned threads = 1);

enum class Inner { exact, mc };

/// Sums the real-only problems obtained by fixing every Boolean, solving
/// each exactly (smi) or by mc_wmi. Weights guarded by Boolean literals
/// become constant factors. Throws InputError beyond 20 Booleans.
std::variant<Rational, Estimate> enumerate_booleans_wmi(const Problem& p, Inner inner, std::uint64_t samples = 0,
                                                       std::uint64_t seed = 0, const SmiOptions& options = {});

/// The problem with Booleans fixed (bit i of `assignment` for the i-th
/// Boolean in scope order). `factor` receives the product of the constant
/// weights whose Boolean guards hold.
Problem condition_booleans(const Problem& p, std::uint64_t assignment, Rational& factor);

}  // namespace smi
