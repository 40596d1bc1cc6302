#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "smi/engine.hpp"

namespace smi {

enum class Family { star, kary3, path, house, independent };

/// Throws InputError for an unknown name.
Family parse_family(const std::string& name);
std::string family_name(Family f);

struct BenchSpec {
  Family family = Family::star;
  std::size_t n = 1;
  Rational offset = 10;  // house only
};

/// Problem file text. star/kary3/path: x0..x{n-1} on [-1, 1] with the
/// clause (x_i + 1 <= x_j) or (x_j <= x_i - 1) per edge; star edges leave
/// x0, kary3 joins x_i to x_{3i+1..3i+3}, path joins x_i to x_{i+1}.
/// independent: n copies of the price/sqft model. house: the same houses
/// chained by sqft_i <= sqft_{i+1} + offset, an urban Boolean b weighted
/// 1.5 and price_i^2 on (0 < price_i < 3000). Throws InputError for n = 0
/// or a non-positive offset.
std::string generate(const BenchSpec& spec);

struct BenchRow {
  std::string family;
  std::size_t n = 0;
  double wallclock_ms = 0;  // best of the timed repeats
  std::uint64_t nodes_expanded = 0;
  Rational value;
};

/// Solves each generated instance once untimed, then `repeats` timed runs.
std::vector<BenchRow> run_bench(Family family, const std::vector<std::size_t>& n_list, std::size_t repeats,
                                const SmiOptions& options = {});

/// "family,n,wallclock_ms,nodes_expanded,value" header plus one line per row;
/// value is exact p/q.
void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace smi
