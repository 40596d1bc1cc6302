#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace smi {

/// Exact rational scalar. GMP keeps every arithmetic result canonical
/// (positive denominator, reduced); values built from raw parts must go
/// through make_rational.
using Rational = mpq_class;

Rational make_rational(long numerator, long denominator = 1);

/// Parses "-3", "5/4", "+7/2" or an exact decimal such as "1.25" (= 5/4).
/// Throws InputError on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" text; the denominator is always printed ("430250/1").
std::string to_string(const Rational& value);

/// Decimal rendering with the given number of significant digits.
std::string to_decimal(const Rational& value, int significant_digits = 12);

double to_double(const Rational& value);

}  // namespace smi
