#pragma once

#include <string>

namespace smi::testing {

// One house: price against square footage.
inline const char* house_text = R"(
(declare-real price 0 3000)
(declare-real sqft 0 200)
(assert (or (< price (+ (* 10 sqft) 1000)) (< price (+ (* 20 sqft) 100))))
(assert (< 0 price 3000))
(assert (< 0 sqft 200))
)";

// y on [-1, 1] and n leaves x_i on [-1/2, 1/2], each at distance >= 1 from y.
// Volume (1/2)^n / (n + 1).
inline std::string separated_star_text(int n) {
  std::string out = "(declare-real y -1 1)\n";
  for (int i = 1; i <= n; ++i) {
    std::string x = "x" + std::to_string(i);
    out += "(declare-real " + x + " -1/2 1/2)\n";
    out += "(assert (or (<= (+ " + x + " 1) y) (<= y (- " + x + " 1))))\n";
  }
  return out;
}

}  // namespace smi::testing

#include "smi/rational.hpp"

namespace smi::testing {

// Weighted one-house model: the Boolean contributes 1.5 + 1 and the weight
// price^2 integrates to U(s)^3 / 3 under the upper price bound U(s), which
// is 10s + 1000 up to s = 90, then 20s + 100 up to s = 145, then 3000.
// The integral of (a s + b)^3 / 3 is (a s + b)^4 / (12 a).
inline Rational weighted_house_value() {
  auto p4 = [](long v) -> Rational { return Rational(v) * v * v * v; };
  Rational low = (p4(1900) - p4(1000)) / 120;
  Rational mid = (p4(3000) - p4(1900)) / 240;
  Rational high = Rational(55) * 3000 * 3000 * 3000 / 3;
  return Rational(5, 2) * (low + mid + high);
}

}  // namespace smi::testing
