#include "smi/unipoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace smi {

UniPoly::UniPoly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

UniPoly UniPoly::constant(const Rational& c) { return UniPoly({c}); }

UniPoly UniPoly::monomial(const Rational& c, std::size_t power) {
  std::vector<Rational> v(power + 1);
  v[power] = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

std::optional<std::size_t> UniPoly::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.size() - 1;
}

Rational UniPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UniPoly UniPoly::antiderivative() const {
  if (coeffs_.empty()) return {};
  std::vector<Rational> v(coeffs_.size() + 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i + 1] = coeffs_[i] / Rational(static_cast<long>(i + 1));
  return UniPoly(std::move(v));
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> v(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
  return UniPoly(std::move(v));
}

UniPoly operator+(const UniPoly& p, const UniPoly& q) {
  std::vector<Rational> v(std::max(p.coeffs_.size(), q.coeffs_.size()));
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i) v[i] += p.coeffs_[i];
  for (std::size_t i = 0; i < q.coeffs_.size(); ++i) v[i] += q.coeffs_[i];
  return UniPoly(std::move(v));
}

UniPoly operator-(const UniPoly& p, const UniPoly& q) { return p + q * Rational(-1); }

UniPoly operator*(const UniPoly& p, const UniPoly& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<Rational> v(p.coeffs_.size() + q.coeffs_.size() - 1);
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < q.coeffs_.size(); ++j) v[i + j] += p.coeffs_[i] * q.coeffs_[j];
  return UniPoly(std::move(v));
}

UniPoly operator*(const UniPoly& p, const Rational& c) {
  std::vector<Rational> v = p.coeffs_;
  for (auto& x : v) x *= c;
  return UniPoly(std::move(v));
}

std::string UniPoly::to_string(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (sgn(coeffs_[i]) == 0) continue;
    if (!first) out << " + ";
    first = false;
    out << "(" << coeffs_[i].get_str() << ")";
    if (i > 0) out << "*" << var;
    if (i > 1) out << "^" << i;
  }
  return out.str();
}

UniPoly interpolate(std::span<const Sample> points) {
  if (points.empty()) throw std::invalid_argument("interpolate: no points");
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (points[i].x == points[j].x)
        throw std::invalid_argument("interpolate: duplicate abscissa " + points[i].x.get_str());

  // Divided differences in place: table[i] ends as f[x_0..x_i].
  std::vector<Rational> table(n);
  for (std::size_t i = 0; i < n; ++i) table[i] = points[i].y;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i)
      table[i] = (table[i] - table[i - 1]) / (points[i].x - points[i - level].x);

  // Expand the Newton form from the innermost term outwards.
  UniPoly result = UniPoly::constant(table[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) {
    UniPoly shift({-points[i].x, Rational(1)});
    result = result * shift + UniPoly::constant(table[i]);
  }
  return result;
}

Rational definite_integral(const UniPoly& p, const Rational& lo, const Rational& hi) {
  if (lo > hi) throw std::invalid_argument("definite_integral: lower bound exceeds upper bound");
  UniPoly anti = p.antiderivative();
  return anti(hi) - anti(lo);
}

}  // namespace smi
