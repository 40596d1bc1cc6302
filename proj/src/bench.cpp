#include "smi/bench.hpp"

#include <chrono>
#include <sstream>

#include "smi/errors.hpp"
#include "smi/parser.hpp"

namespace smi {

Family parse_family(const std::string& name) {
  if (name == "star") return Family::star;
  if (name == "kary3") return Family::kary3;
  if (name == "path") return Family::path;
  if (name == "house") return Family::house;
  if (name == "independent") return Family::independent;
  throw InputError("unknown family '" + name + "' (star, kary3, path, house, independent)");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::star: return "star";
    case Family::kary3: return "kary3";
    case Family::path: return "path";
    case Family::house: return "house";
    case Family::independent: return "independent";
  }
  return "";
}

namespace {

void separation(std::ostream& out, std::size_t i, std::size_t j) {
  out << "(assert (or (<= (+ x" << i << " 1) x" << j << ") (<= x" << j << " (- x" << i << " 1))))\n";
}

void house(std::ostream& out, std::size_t i) {
  std::string p = "price_" + std::to_string(i), s = "sqft_" + std::to_string(i);
  out << "(declare-real " << p << " 0 3000)\n(declare-real " << s << " 0 200)\n";
  out << "(assert (or (< " << p << " (+ (* 10 " << s << ") 1000)) (< " << p << " (+ (* 20 " << s << ") 100))))\n";
  out << "(assert (< 0 " << p << " 3000))\n(assert (< 0 " << s << " 200))\n";
}

}  // namespace

std::string generate(const BenchSpec& spec) {
  if (spec.n == 0) throw InputError("benchmark size must be at least 1");
  std::ostringstream out;
  std::size_t n = spec.n;
  switch (spec.family) {
    case Family::star:
    case Family::kary3:
    case Family::path:
      for (std::size_t i = 0; i < n; ++i) out << "(declare-real x" << i << " -1 1)\n";
      for (std::size_t j = 1; j < n; ++j) {
        std::size_t i = spec.family == Family::star ? 0 : spec.family == Family::path ? j - 1 : (j - 1) / 3;
        separation(out, i, j);
      }
      break;
    case Family::independent:
      for (std::size_t i = 1; i <= n; ++i) house(out, i);
      break;
    case Family::house:
      if (sgn(spec.offset) <= 0) throw InputError("house offset must be positive");
      out << "(declare-bool b)\n(assert (or b (not b)))\n";
      for (std::size_t i = 1; i <= n; ++i) house(out, i);
      for (std::size_t i = 1; i < n; ++i)
        out << "(assert (<= sqft_" << i << " (+ sqft_" << i + 1 << " " << spec.offset.get_str() << ")))\n";
      out << "(weight b 1.5)\n";
      for (std::size_t i = 1; i <= n; ++i)
        out << "(weight (< 0 price_" << i << " 3000) (* 1 (^ price_" << i << " 2)))\n";
      break;
  }
  return out.str();
}

std::vector<BenchRow> run_bench(Family family, const std::vector<std::size_t>& n_list, std::size_t repeats,
                                const SmiOptions& options) {
  std::vector<BenchRow> rows;
  for (std::size_t n : n_list) {
    Problem p = parse_problem(generate({family, n, 10}));
    Solution first = solve(p, options);  // warm-up, not timed
    BenchRow row{family_name(family), n, 0, first.stats.nodes_expanded, first.value};
    for (std::size_t r = 0; r < std::max<std::size_t>(repeats, 1); ++r) {
      auto start = std::chrono::steady_clock::now();
      Solution s = solve(p, options);
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      if (r == 0 || ms < row.wallclock_ms) row.wallclock_ms = ms;
      if (s.value != first.value) throw std::logic_error("non-deterministic benchmark value");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "family,n,wallclock_ms,nodes_expanded,value\n";
  for (const auto& r : rows)
    out << r.family << "," << r.n << "," << r.wallclock_ms << "," << r.nodes_expanded << "," << to_string(r.value) << "\n";
}

}  // namespace smi
