#include "random_problems.hpp"

#include <sstream>
#include <vector>

namespace smi::testing {

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::string real_name(int i) { return "x" + std::to_string(i); }

// a*u + b*v + c <= 0 with small integer coefficients, in problem syntax.
std::string atom2(std::mt19937_64& rng, const std::string& u, const std::string& v) {
  int a = pick(rng, -2, 2), b = pick(rng, -2, 2);
  if (a == 0 && b == 0) a = 1;
  int c = pick(rng, -3, 3);
  std::ostringstream s;
  s << "(<= (+ (* " << a << " " << u << ") (* " << b << " " << v << ") " << c << ") 0)";
  return s.str();
}

std::string atom1(std::mt19937_64& rng, const std::string& u) {
  std::ostringstream s;
  int num = pick(rng, -6, 6);
  if (pick(rng, 0, 1))
    s << "(<= " << u << " " << num << "/2)";
  else
    s << "(>= " << u << " " << num << "/2)";
  return s.str();
}

}  // namespace

std::string random_problem_text(std::mt19937_64& rng, const RandomShape& shape) {
  std::ostringstream out;
  int reals = pick(rng, 1, shape.max_reals);
  int bools = pick(rng, 0, shape.max_bools);
  std::vector<int> lo(reals), hi(reals);
  for (int i = 0; i < reals; ++i) {
    lo[i] = pick(rng, -2, 1);
    hi[i] = lo[i] + pick(rng, 1, 3);
    out << "(declare-real " << real_name(i) << " " << lo[i] << " " << hi[i] << ")\n";
  }
  for (int b = 0; b < bools; ++b) out << "(declare-bool b" << b << ")\n";
  for (int i = 1; i < reals; ++i) {
    std::string p = real_name(pick(rng, 0, i - 1)), c = real_name(i);
    int clauses = pick(rng, 1, 2);
    for (int k = 0; k < clauses; ++k) {
      switch (pick(rng, 0, 2)) {
        case 0: out << "(assert " << atom2(rng, p, c) << ")\n"; break;
        case 1: out << "(assert (or " << atom2(rng, p, c) << " " << atom2(rng, p, c) << "))\n"; break;
        default: out << "(assert (or " << atom2(rng, p, c) << " " << atom1(rng, c) << "))\n"; break;
      }
    }
  }
  for (int i = 0; i < reals; ++i)
    if (pick(rng, 0, 3) == 0) out << "(assert (or " << atom1(rng, real_name(i)) << " " << atom1(rng, real_name(i)) << "))\n";
  for (int b = 0; b < bools; ++b) {
    std::string name = "b" + std::to_string(b);
    if (pick(rng, 0, 1))
      out << "(assert (or " << name << " (not " << name << ")))\n";
    else
      out << "(assert (or " << (pick(rng, 0, 1) ? name : "(not " + name + ")") << " "
          << atom1(rng, real_name(pick(rng, 0, reals - 1))) << "))\n";
  }
  int weights = pick(rng, 0, shape.max_weights);
  static const char* coefs[] = {"1/2", "1", "3/2", "2"};
  for (int w = 0; w < weights; ++w) {
    const char* coef = coefs[pick(rng, 0, 3)];
    if (bools > 0 && pick(rng, 0, 2) == 0) {
      int b = pick(rng, 0, bools - 1);
      std::string lit = pick(rng, 0, 1) ? "b" + std::to_string(b) : "(not b" + std::to_string(b) + ")";
      out << "(weight " << lit << " " << coef << ")\n";
      continue;
    }
    int i = pick(rng, 0, reals - 1);
    int degree = pick(rng, 0, shape.max_degree);
    // A nonnegative guard interval keeps the monomial encodable.
    int a = std::max(lo[i], 0);
    if (a >= hi[i]) degree = 0;
    std::string x = real_name(i);
    std::ostringstream guard;
    if (a < hi[i])
      guard << "(<= " << a << " " << x << " " << hi[i] << ")";
    else
      guard << "(<= " << x << " " << hi[i] << ")";
    out << "(weight " << guard.str() << " (* " << coef;
    if (degree > 0) out << " (^ " << x << " " << degree << ")";
    out << "))\n";
  }
  return out.str();
}

}  // namespace smi::testing
