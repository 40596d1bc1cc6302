#include "smi/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "smi/errors.hpp"

namespace smi {

namespace {

constexpr std::uint64_t chunk_size = 1 << 16;

struct DAtom {
  std::vector<std::pair<VarId, double>> terms;
  double constant;
};

// A literal evaluated in double precision: an atom or a Boolean.
struct DLit {
  bool is_bool = false;
  VarId var = 0;
  bool positive = true;
  DAtom atom;
};

DLit lower(const Literal& lit) {
  DLit d;
  if (const auto* b = std::get_if<BoolLit>(&lit)) {
    d.is_bool = true;
    d.var = b->var;
    d.positive = b->positive;
    return d;
  }
  const auto& a = std::get<LinearAtom>(lit);
  for (const auto& t : a.terms()) d.atom.terms.emplace_back(t.var, to_double(t.coef));
  d.atom.constant = to_double(a.constant());
  return d;
}

bool holds(const DLit& l, const std::vector<double>& x) {
  if (l.is_bool) return (x[l.var] > 0.5) == l.positive;
  double s = l.atom.constant;
  for (const auto& [v, c] : l.atom.terms) s += c * x[v];
  return s <= 0;
}

struct Compiled {
  std::vector<std::vector<DLit>> clauses;
  struct Weight {
    std::vector<DLit> guard;
    std::vector<std::pair<double, std::vector<std::pair<VarId, unsigned>>>> poly;
  };
  std::vector<Weight> weights;
  std::vector<std::pair<VarId, std::pair<double, double>>> reals;
  std::vector<VarId> bools;
  std::size_t width = 0;
};

Compiled compile(const Problem& p) {
  Compiled c;
  c.width = p.theory.vars->size();
  for (const auto& clause : p.theory.clauses) {
    std::vector<DLit> ls;
    for (const auto& l : clause) ls.push_back(lower(l));
    c.clauses.push_back(std::move(ls));
  }
  for (const auto& w : p.weights) {
    Compiled::Weight cw;
    for (const auto& l : w.guard) cw.guard.push_back(lower(l));
    for (const auto& m : w.weight) cw.poly.emplace_back(to_double(m.coef), m.powers);
    c.weights.push_back(std::move(cw));
  }
  for (VarId v : p.theory.scope) {
    const Var& var = p.theory.var(v);
    if (var.kind == VarKind::real)
      c.reals.push_back({v, {to_double(var.lo), to_double(var.hi)}});
    else
      c.bools.push_back(v);
  }
  return c;
}

// Sum and sum of squares of the sample weights, Kahan-compensated.
struct Moments {
  double sum = 0, sum_c = 0;
  double sq = 0, sq_c = 0;

  static void add(double& s, double& comp, double v) {
    double y = v - comp;
    double t = s + y;
    comp = (t - s) - y;
    s = t;
  }
  void push(double w) {
    add(sum, sum_c, w);
    add(sq, sq_c, w * w);
  }
  void merge(const Moments& o) {
    add(sum, sum_c, o.sum);
    add(sq, sq_c, o.sq);
  }
};

Moments run_chunk(const Compiled& c, std::uint64_t seed, std::uint64_t chunk, std::uint64_t count) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> x(c.width, 0.0);
  Moments m;
  for (std::uint64_t s = 0; s < count; ++s) {
    for (const auto& [v, box] : c.reals) x[v] = box.first + (box.second - box.first) * unit(rng);
    for (VarId b : c.bools) x[b] = (rng() & 1) ? 1.0 : 0.0;
    bool sat = std::all_of(c.clauses.begin(), c.clauses.end(), [&](const auto& clause) {
      return std::any_of(clause.begin(), clause.end(), [&](const DLit& l) { return holds(l, x); });
    });
    double w = 0;
    if (sat) {
      w = 1;
      for (const auto& cw : c.weights) {
        if (!std::all_of(cw.guard.begin(), cw.guard.end(), [&](const DLit& l) { return holds(l, x); })) continue;
        double poly = 0;
        for (const auto& [coef, powers] : cw.poly) {
          double term = coef;
          for (const auto& [v, k] : powers) term *= std::pow(x[v], static_cast<int>(k));
          poly += term;
        }
        w *= poly;
      }
    }
    m.push(w);
  }
  return m;
}

}  // namespace

Estimate mc_wmi(const Problem& p, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  if (samples == 0) throw std::invalid_argument("mc_wmi: zero samples");
  Estimate est;
  est.samples = samples;
  est.seed = seed;
  if (p.theory.unsat) return est;
  Compiled c = compile(p);
  double scale = std::ldexp(1.0, static_cast<int>(c.bools.size()));
  for (const auto& [v, box] : c.reals) scale *= box.second - box.first;

  std::uint64_t chunks = (samples + chunk_size - 1) / chunk_size;
  std::vector<Moments> parts(chunks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t i; (i = next++) < chunks;) {
      std::uint64_t count = std::min(chunk_size, samples - i * chunk_size);
      parts[i] = run_chunk(c, seed, i, count);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, threads); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Moments total;
  for (const auto& m : parts) total.merge(m);
  double n = static_cast<double>(samples);
  double mean = total.sum / n;
  double var = samples > 1 ? std::max(0.0, (total.sq - n * mean * mean) / (n - 1)) : 0.0;
  est.mean = scale * mean;
  est.std_error = scale * std::sqrt(var / n);
  return est;
}

Problem condition_booleans(const Problem& p, std::uint64_t assignment, Rational& factor) {
  std::vector<VarId> bools;
  for (VarId v : p.theory.scope)
    if (p.theory.var(v).kind == VarKind::boolean) bools.push_back(v);
  auto value_of = [&](VarId v) {
    auto i = std::find(bools.begin(), bools.end(), v) - bools.begin();
    return ((assignment >> i) & 1) != 0;
  };
  Problem out;
  out.theory.vars = p.theory.vars;
  out.theory.unsat = p.theory.unsat;
  for (VarId v : p.theory.scope)
    if (p.theory.var(v).kind == VarKind::real) out.theory.scope.push_back(v);
  for (const auto& clause : p.theory.clauses) {
    Clause c;
    bool satisfied = false;
    for (const auto& l : clause) {
      if (const auto* b = std::get_if<BoolLit>(&l)) {
        if (value_of(b->var) == b->positive) satisfied = true;
      } else {
        c.push_back(l);
      }
    }
    if (satisfied) continue;
    if (c.empty()) out.theory.unsat = true;
    out.theory.clauses.push_back(std::move(c));
  }
  factor = 1;
  for (const auto& w : p.weights) {
    bool boolean_guard = std::any_of(w.guard.begin(), w.guard.end(), [](const Literal& l) { return std::holds_alternative<BoolLit>(l); });
    if (!boolean_guard) {
      out.weights.push_back(w);
      continue;
    }
    bool on = std::all_of(w.guard.begin(), w.guard.end(), [&](const Literal& l) {
      const auto& b = std::get<BoolLit>(l);
      return value_of(b.var) == b.positive;
    });
    if (!on) continue;
    Rational constant(0);
    for (const auto& m : w.weight) {
      for (const auto& [v, k] : m.powers)
        if (k > 0) throw InputError("weight on a Boolean literal must be constant");
      constant += m.coef;
    }
    factor *= constant;
  }
  return out;
}

std::variant<Rational, Estimate> enumerate_booleans_wmi(const Problem& p, Inner inner, std::uint64_t samples,
                                                       std::uint64_t seed, const SmiOptions& options) {
  std::size_t count = std::count_if(p.theory.scope.begin(), p.theory.scope.end(),
                                    [&](VarId v) { return p.theory.var(v).kind == VarKind::boolean; });
  if (count > 20) throw InputError("too many Booleans to enumerate (" + std::to_string(count) + " > 20)");
  Rational exact(0);
  Estimate est;
  est.samples = samples;
  est.seed = seed;
  double variance = 0;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << count); ++a) {
    Rational factor;
    Problem q = condition_booleans(p, a, factor);
    if (inner == Inner::exact) {
      if (!q.theory.unsat) exact += factor * solve(q, options).value;
    } else {
      Estimate e = mc_wmi(q, samples, seed + a);
      double f = to_double(factor);
      est.mean += f * e.mean;
      variance += f * f * e.std_error * e.std_error;
    }
  }
  if (inner == Inner::exact) return exact;
  est.std_error = std::sqrt(variance);
  return est;
}

}  // namespace smi
