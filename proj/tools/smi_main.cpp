// Command-line front end: solve, prob, gen, oracle, bench.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "smi/bench.hpp"
#include "smi/errors.hpp"
#include "smi/oracle.hpp"
#include "smi/parser.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw smi::InputError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct EngineFlags {
  std::string pseudo_tree = "rooted";
  std::string cache = "on";
  std::string weights = "expand";
  unsigned threads = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--pseudo-tree", pseudo_tree, "rooted or balanced")->check(CLI::IsMember({"rooted", "balanced"}));
    cmd->add_option("--cache", cache, "on or off")->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--weights", weights, "expand or selector")->check(CLI::IsMember({"expand", "selector"}));
    cmd->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  }
  smi::SmiOptions options() const {
    smi::SmiOptions o;
    o.pseudo_tree = pseudo_tree == "balanced" ? smi::TreeStrategy::balanced : smi::TreeStrategy::rooted;
    o.cache = cache == "on";
    o.weights = weights == "selector" ? smi::WeightStrategy::selector : smi::WeightStrategy::expand;
    o.threads = threads;
    return o;
  }
};

void print_value(const smi::Rational& v) {
  std::cout << "exact: " << smi::to_string(v) << "\napprox: " << smi::to_decimal(v, 12) << "\n";
}

void print_stats(const smi::SearchStats& s) {
  std::cout << "nodes_expanded: " << s.nodes_expanded << "\ninstantiations: " << s.instantiations
            << "\ncache_hits: " << s.cache_hits << "\ncache_misses: " << s.cache_misses << "\nn: " << s.n
            << "\nm: " << s.m << "\nh_p: " << s.h_p << "\nh_t: " << s.h_t << "\nl: " << s.l
            << "\nsearch_bound_holds: " << (smi::check_search_bound(s) ? "yes" : "no") << "\n";
}

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      long v = std::stol(item, &used);
      if (used != item.size() || v <= 0) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw smi::InputError("bad size '" + item + "' in --n-list");
    }
  }
  if (out.empty()) throw smi::InputError("--n-list is empty");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact model integration for SMT(LRA) theories with tree-shaped primal graphs"};
  app.require_subcommand(1);

  std::string file, query_file, family, out_file, offset_text = "10", n_list, csv_file;
  std::size_t n = 0, repeats = 3;
  std::uint64_t samples = 0, seed = 0;
  bool stats = false, dump = false;
  EngineFlags solve_flags, prob_flags, bench_flags;
  unsigned oracle_threads = 1;

  auto* solve_cmd = app.add_subcommand("solve", "weighted model integral of a problem file");
  solve_cmd->add_option("file", file, "problem file")->required();
  solve_flags.attach(solve_cmd);
  solve_cmd->add_flag("--stats", stats, "print search statistics");
  solve_cmd->add_flag("--dump-pieces", dump, "print the pieces of every node");

  auto* prob_cmd = app.add_subcommand("prob", "probability of a query");
  prob_cmd->add_option("file", file, "problem file")->required();
  prob_cmd->add_option("--query", query_file, "file of (assert ...) forms")->required();
  prob_flags.attach(prob_cmd);

  auto* gen_cmd = app.add_subcommand("gen", "write a benchmark problem");
  gen_cmd->add_option("family", family, "star, kary3, path, house or independent")->required();
  gen_cmd->add_option("--n", n, "size")->required();
  gen_cmd->add_option("--offset", offset_text, "house sqft offset");
  gen_cmd->add_option("-o", out_file, "output file")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "Monte-Carlo estimate of the weighted model integral");
  oracle_cmd->add_option("file", file, "problem file")->required();
  oracle_cmd->add_option("--samples", samples, "sample count")->required()->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--seed", seed, "random seed")->required();
  oracle_cmd->add_option("--threads", oracle_threads, "worker threads")->check(CLI::PositiveNumber);

  auto* bench_cmd = app.add_subcommand("bench", "time a benchmark family");
  bench_cmd->add_option("family", family, "star, kary3, path, house or independent")->required();
  bench_cmd->add_option("--n-list", n_list, "comma separated sizes")->required();
  bench_cmd->add_option("--csv", csv_file, "output CSV")->required();
  bench_cmd->add_option("--repeats", repeats, "timed runs per size");
  bench_flags.attach(bench_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*solve_cmd) {
      smi::Problem p = smi::parse_problem(read_file(file));
      smi::SmiOptions o = solve_flags.options();
      if (dump)
        for (const auto& line : smi::dump_pieces(p, o)) std::cout << line << "\n";
      smi::Solution s = smi::solve(p, o);
      print_value(s.value);
      if (stats) print_stats(s.stats);
    } else if (*prob_cmd) {
      smi::Problem p = smi::parse_problem(read_file(file));
      auto query = smi::parse_query(read_file(query_file), p);
      print_value(smi::probability(p, query, prob_flags.options()));
    } else if (*gen_cmd) {
      smi::BenchSpec spec{smi::parse_family(family), n, smi::parse_rational(offset_text)};
      std::string text = smi::generate(spec);
      std::ofstream out(out_file);
      if (!out) throw smi::InputError("cannot write '" + out_file + "'");
      out << text;
    } else if (*oracle_cmd) {
      smi::Problem p = smi::parse_problem(read_file(file));
      smi::Estimate e = smi::mc_wmi(p, samples, seed, oracle_threads);
      std::cout.precision(12);
      std::cout << "mean: " << e.mean << "\nstd_error: " << e.std_error << "\nsamples: " << e.samples
                << "\nseed: " << e.seed << "\n";
    } else if (*bench_cmd) {
      auto rows = smi::run_bench(smi::parse_family(family), parse_list(n_list), repeats, bench_flags.options());
      std::ofstream out(csv_file);
      if (!out) throw smi::InputError("cannot write '" + csv_file + "'");
      smi::write_csv(out, rows);
      smi::write_csv(std::cout, rows);
    }
  } catch (const smi::StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const smi::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
