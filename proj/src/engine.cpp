#include "smi/engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <set>
#include <thread>

#include "smi/errors.hpp"

namespace smi {

Rational PiecewisePoly::operator()(const Rational& x) const {
  auto it = std::upper_bound(parts.begin(), parts.end(), x, [](const Rational& v, const Part& p) { return v < p.lo; });
  if (it == parts.begin()) return 0;
  --it;
  return x <= it->hi ? it->poly(x) : Rational(0);
}

template <class V>
V Cache::once(Slots<V>& slots, const std::string& key, const std::function<V()>& compute, bool& hit) {
  std::promise<V> promise;
  std::shared_future<V> future;
  {
    std::lock_guard lock(mutex_);
    auto it = slots.find(key);
    hit = it != slots.end();
    if (hit) {
      future = it->second;
    } else {
      slots.emplace(key, promise.get_future().share());
    }
  }
  if (hit) return future.get();
  try {
    V v = compute();
    promise.set_value(v);
    return v;
  } catch (...) {
    promise.set_exception(std::current_exception());
    throw;
  }
}

Rational Cache::value(const std::string& key, const std::function<Rational()>& compute, bool& hit) {
  return once(values_, key, compute, hit);
}

PiecewisePoly Cache::function(const std::string& key, const std::function<PiecewisePoly()>& compute, bool& hit) {
  return once(functions_, key, compute, hit);
}

namespace {

template <class F>
void parallel_for(std::size_t n, unsigned threads, F body) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < std::min<std::size_t>(threads, n); ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<Rational> nodes_for(const Piece& p, std::size_t count, NodeRule rule) {
  std::vector<Rational> out;
  Rational width = p.hi - p.lo;
  for (std::size_t i = 0; i < count; ++i) {
    Rational frac = rule == NodeRule::equispaced
                        ? Rational(static_cast<long>(i + 1), static_cast<long>(count + 1))
                        : Rational(static_cast<long>(2 * i + 1), static_cast<long>(2 * count));
    frac.canonicalize();
    out.push_back(p.lo + width * frac);
  }
  return out;
}

class Search {
 public:
  Search(const PseudoTree& t, Cache* cache, const SmiOptions& options) : tree_(t), cache_(cache), options_(options) {}

  // Product of component volumes.
  Rational forest(const Theory& theory, int depth) {
    if (theory.unsat) return 0;
    Rational out(1);
    for (const auto& comp : components(primal_graph(theory))) {
      Theory k = restrict_to(theory, comp);
      VarId root = *std::min_element(comp.begin(), comp.end(), [&](VarId a, VarId b) {
        auto da = tree_.depth.at(a), db = tree_.depth.at(b);
        return da != db ? da < db : theory.var(a).name < theory.var(b).name;
      });
      out *= component(k, root, depth);
      if (sgn(out) == 0) break;
    }
    return out;
  }

  void export_stats(SearchStats& s) const {
    s.nodes_expanded += nodes_;
    s.instantiations += instantiations_;
    s.cache_hits += hits_;
    s.cache_misses += misses_;
  }

 private:
  // Volume of one connected theory, integrating the root's marginal.
  Rational component(const Theory& k, VarId root, int depth) {
    auto compute = [&] {
      ++nodes_;
      PiecewisePoly f = integrate_pieces(k, root, depth, [&](const Rational& alpha) { return at(k, root, alpha); });
      Rational total(0);
      for (const auto& part : f.parts) total += definite_integral(part.poly, part.lo, part.hi);
      return total;
    };
    if (!cache_) return compute();
    bool hit = false;
    Rational v = cache_->value("V" + canonical_key(k, root), compute, hit);
    ++(hit ? hits_ : misses_);
    return v;
  }

  // Marginal of the root over its pieces, recovered by interpolation.
  template <class Eval>
  PiecewisePoly integrate_pieces(const Theory& k, VarId root, int depth, Eval eval) {
    PieceSet pieces = pe_node(k, root, cache_ ? &cache_->pieces() : nullptr);
    struct Job {
      std::size_t piece;
      Rational x;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < pieces.size(); ++i)
      for (auto& x : nodes_for(pieces[i], pieces[i].degree + 1 + options_.extra_nodes, options_.node_rule))
        jobs.push_back({i, std::move(x)});
    std::vector<Rational> values(jobs.size());
    unsigned threads = depth == 0 ? options_.threads : 1;
    parallel_for(jobs.size(), threads, [&](std::size_t j) {
      ++instantiations_;
      values[j] = eval(jobs[j].x);
    });
    PiecewisePoly out;
    std::size_t j = 0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      std::vector<Sample> samples;
      for (; j < jobs.size() && jobs[j].piece == i; ++j) samples.push_back({jobs[j].x, values[j]});
      out.parts.push_back({pieces[i].lo, pieces[i].hi, interpolate(samples)});
    }
    return out;
  }

  // Volume of the residual theory with root := alpha.
  Rational at(const Theory& k, VarId root, const Rational& alpha) {
    Theory residual = substitute(k, root, alpha);
    if (residual.unsat) return 0;
    if (!cache_) return forest(residual, 1);
    // Every residual component is a fixed subtree below the root, so its
    // volume is a function of alpha alone that can be cached whole.
    Rational out(1);
    for (const auto& comp : components(primal_graph(residual))) {
      out *= marginal(k, root, comp)(alpha);
      if (sgn(out) == 0) break;
    }
    return out;
  }

  // Volume of the subtree `below` as a function of the root's value.
  PiecewisePoly marginal(const Theory& k, VarId root, const std::vector<VarId>& below) {
    std::vector<VarId> scope = below;
    scope.push_back(root);
    std::sort(scope.begin(), scope.end());
    Theory core{k.vars, scope, domain_clauses(*k.vars, root), false};
    for (const auto& clause : k.clauses) {
      auto vs = clause_vars(clause);
      bool inside = std::all_of(vs.begin(), vs.end(), [&](VarId v) { return std::binary_search(scope.begin(), scope.end(), v); });
      if (inside && !(vs.size() == 1 && vs[0] == root)) core.clauses.push_back(clause);
    }
    bool hit = false;
    PiecewisePoly f = cache_->function("F" + canonical_key(core, root), [&] {
      ++nodes_;
      return integrate_pieces(core, root, 1, [&](const Rational& beta) {
        Theory residual = substitute(core, root, beta);
        return residual.unsat ? Rational(0) : forest(residual, 1);
      });
    }, hit);
    ++(hit ? hits_ : misses_);
    return f;
  }

  const PseudoTree& tree_;
  Cache* cache_;
  const SmiOptions& options_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<std::uint64_t> instantiations_{0};
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> misses_{0};
};

std::size_t real_count(const Theory& theory) {
  return std::count_if(theory.scope.begin(), theory.scope.end(),
                       [&](VarId v) { return theory.var(v).kind == VarKind::real; });
}

}  // namespace

Rational smi(const Theory& theory, const PseudoTree& t, Cache* cache, SearchStats& stats, const SmiOptions& options) {
  Search search(t, cache, options);
  Rational value = search.forest(theory, 0);
  search.export_stats(stats);
  return value;
}

std::size_t literal_count(const Theory& theory) {
  std::set<std::string> seen;
  for (const auto& clause : theory.clauses)
    for (const auto& lit : clause)
      if (std::holds_alternative<LinearAtom>(lit)) seen.insert(literal_to_string(*theory.vars, lit));
  return seen.size();
}

Solution solve(const Problem& p, const SmiOptions& options) {
  ReductionTrace trace;
  WeightedSum sum = full_reduce(p, trace, options.weights);
  Solution out;
  out.value = 0;
  Cache cache;
  for (const auto& [coef, q] : sum.summands) {
    const Theory& theory = q.theory;
    PrimalGraph g = primal_graph(theory);
    try {
      require_tree(g, *theory.vars);
    } catch (const StructuralError& e) {
      if (options.weights == WeightStrategy::selector)
        throw StructuralError(std::string(e.what()) + " (the selector weight encoding is rarely tree shaped; use expand)");
      throw;
    }
    PseudoTree t = build_pseudo_tree(g, *theory.vars, options.pseudo_tree);
    SearchStats& s = out.stats;
    s.n = std::max(s.n, real_count(theory));
    s.m = std::max(s.m, literal_count(theory));
    s.h_p = std::max(s.h_p, primal_height(g, *theory.vars));
    s.h_t = std::max(s.h_t, t.height);
    s.l = std::max(s.l, t.leaves);
    if (theory.unsat) continue;
    out.value += coef * smi(theory, t, options.cache ? &cache : nullptr, s, options);
  }
  return out;
}

Rational probability(const Problem& p, const std::vector<Clause>& query, const SmiOptions& options) {
  Rational denominator = solve(p, options).value;
  if (sgn(denominator) == 0) throw InputError("the model has zero weight; probability is undefined");
  Problem joint = p;
  joint.theory.clauses.insert(joint.theory.clauses.end(), query.begin(), query.end());
  return solve(joint, options).value / denominator;
}

mpz_class search_bound(const SearchStats& s, unsigned long c) {
  mpz_class inner, m_pow, result;
  mpz_ui_pow_ui(m_pow.get_mpz_t(), std::max<std::size_t>(s.m, 1), s.h_p);
  inner = mpz_class(static_cast<unsigned long>(s.n)) * s.n * s.n * m_pow;
  mpz_pow_ui(result.get_mpz_t(), inner.get_mpz_t(), s.h_t);
  return result * c * static_cast<unsigned long>(std::max<std::size_t>(s.l, 1));
}

bool check_search_bound(const SearchStats& s, unsigned long c) {
  return mpz_class(static_cast<unsigned long>(s.nodes_expanded)) <= search_bound(s, c);
}

std::vector<std::string> dump_pieces(const Problem& p, const SmiOptions& options) {
  ReductionTrace trace;
  WeightedSum sum = full_reduce(p, trace, options.weights);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < sum.summands.size(); ++i) {
    const Theory& theory = sum.summands[i].second.theory;
    if (sum.summands.size() > 1) out.push_back("; summand " + std::to_string(i) + " coefficient " + to_string(sum.summands[i].first));
    PrimalGraph g = primal_graph(theory);
    PseudoTree t = build_pseudo_tree(g, *theory.vars, options.pseudo_tree);
    for (const auto& comp : components(g)) {
      VarId root = *std::min_element(comp.begin(), comp.end(), [&](VarId a, VarId b) { return t.depth.at(a) < t.depth.at(b); });
      PieceTrace nodes;
      pe_node(restrict_to(theory, comp), root, nullptr, &nodes);
      for (const auto& [v, pieces] : nodes) out.push_back(dump_line(*theory.vars, v, pieces));
    }
  }
  return out;
}

}  // namespace smi
