#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smi/rational.hpp"

namespace smi {

/// A bound on one variable expressed as a linear function of another
/// (slope * y + intercept). Constant bounds have slope 0.
struct LinearBound {
  Rational slope;
  Rational intercept;

  Rational at(const Rational& y) const { return slope * y + intercept; }
  bool is_constant() const { return sgn(slope) == 0; }
  friend bool operator==(const LinearBound&, const LinearBound&) = default;

  static LinearBound constant(const Rational& value) { return {Rational(0), value}; }
};

/// Interval endpoint; an empty value means infinite in the direction of
/// the side it sits on. The tag records which bound produced it.
struct Endpoint {
  std::optional<Rational> value;
  LinearBound tag;

  static Endpoint infinite() { return {}; }
  static Endpoint at(const Rational& v) { return {v, LinearBound::constant(v)}; }
  static Endpoint at(const Rational& v, LinearBound tag) { return {v, std::move(tag)}; }
};

struct Interval {
  Endpoint lo;
  Endpoint hi;
};

struct ClosedInterval {
  Rational lo;
  Rational hi;
  friend bool operator==(const ClosedInterval&, const ClosedInterval&) = default;
};

/// Finite union of closed intervals of positive length, sorted and pairwise
/// disjoint. Pieces of zero length are dropped on construction: every set
/// operation here works modulo measure zero.
class IntervalSet {
 public:
  IntervalSet() = default;  // empty

  static IntervalSet everything();
  static IntervalSet below(Endpoint hi);  // (-inf, hi]
  static IntervalSet above(Endpoint lo);  // [lo, +inf)
  static IntervalSet between(Endpoint lo, Endpoint hi);
  static IntervalSet between(const Rational& lo, const Rational& hi);

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  bool bounded() const;
  /// Throws std::logic_error when unbounded.
  std::vector<ClosedInterval> closed_parts() const;
  bool contains(const Rational& x) const;  // closed membership

  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet intersect(const IntervalSet& other) const;

  std::string to_string() const;

 private:
  static IntervalSet from_sorted(std::vector<Interval> parts);
  std::vector<Interval> parts_;
};

}  // namespace smi
