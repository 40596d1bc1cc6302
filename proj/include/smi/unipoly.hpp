#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smi/rational.hpp"

namespace smi {

/// Univariate polynomial with exact rational coefficients; coefficient i
/// multiplies y^i. The coefficient list never ends in a zero, so the zero
/// polynomial is the empty list.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coefficients);

  static UniPoly constant(const Rational& c);
  static UniPoly monomial(const Rational& c, std::size_t power);

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// nullopt for the zero polynomial.
  std::optional<std::size_t> degree() const;

  /// Horner evaluation.
  Rational operator()(const Rational& x) const;

  UniPoly antiderivative() const;  // constant term 0
  UniPoly derivative() const;

  friend UniPoly operator+(const UniPoly& p, const UniPoly& q);
  friend UniPoly operator-(const UniPoly& p, const UniPoly& q);
  friend UniPoly operator*(const UniPoly& p, const UniPoly& q);
  friend UniPoly operator*(const UniPoly& p, const Rational& c);
  friend bool operator==(const UniPoly& p, const UniPoly& q) { return p.coeffs_ == q.coeffs_; }

  std::string to_string(const std::string& var = "y") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

inline Rational poly_eval(const UniPoly& p, const Rational& x) { return p(x); }
inline UniPoly poly_add(const UniPoly& p, const UniPoly& q) { return p + q; }
inline UniPoly poly_mul(const UniPoly& p, const UniPoly& q) { return p * q; }
inline UniPoly poly_scale(const UniPoly& p, const Rational& c) { return p * c; }

struct Sample {
  Rational x;
  Rational y;
};

/// The unique polynomial of degree <= points.size()-1 through all points
/// (Newton divided differences). Throws std::invalid_argument on an empty
/// list or repeated abscissae.
UniPoly interpolate(std::span<const Sample> points);

/// Exact integral over [lo, hi]; throws std::invalid_argument if lo > hi.
Rational definite_integral(const UniPoly& p, const Rational& lo, const Rational& hi);

}  // namespace smi
