#include "smi/interval_set.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace smi {

namespace {

// Lower endpoints: -inf is smallest. Upper endpoints: +inf is largest.
bool lo_less(const Endpoint& a, const Endpoint& b) {
  if (!a.value) return b.value.has_value();
  if (!b.value) return false;
  return *a.value < *b.value;
}

bool hi_less(const Endpoint& a, const Endpoint& b) {
  if (!b.value) return a.value.has_value();
  if (!a.value) return false;
  return *a.value < *b.value;
}

// Positive length test for [lo, hi].
bool has_length(const Interval& iv) {
  if (!iv.lo.value || !iv.hi.value) return true;
  return *iv.lo.value < *iv.hi.value;
}

// Whether a closed interval ending at hi touches or overlaps one starting at lo.
bool reaches(const Endpoint& hi, const Endpoint& lo) {
  if (!hi.value || !lo.value) return true;
  return *lo.value <= *hi.value;
}

}  // namespace

IntervalSet IntervalSet::everything() { return from_sorted({Interval{Endpoint::infinite(), Endpoint::infinite()}}); }

IntervalSet IntervalSet::below(Endpoint hi) { return from_sorted({Interval{Endpoint::infinite(), std::move(hi)}}); }

IntervalSet IntervalSet::above(Endpoint lo) { return from_sorted({Interval{std::move(lo), Endpoint::infinite()}}); }

IntervalSet IntervalSet::between(Endpoint lo, Endpoint hi) { return from_sorted({Interval{std::move(lo), std::move(hi)}}); }

IntervalSet IntervalSet::between(const Rational& lo, const Rational& hi) {
  return between(Endpoint::at(lo), Endpoint::at(hi));
}

IntervalSet IntervalSet::from_sorted(std::vector<Interval> parts) {
  IntervalSet s;
  for (auto& iv : parts)
    if (has_length(iv)) s.parts_.push_back(std::move(iv));
  return s;
}

bool IntervalSet::bounded() const {
  return parts_.empty() || (parts_.front().lo.value && parts_.back().hi.value);
}

std::vector<ClosedInterval> IntervalSet::closed_parts() const {
  if (!bounded()) throw std::logic_error("interval set is unbounded");
  std::vector<ClosedInterval> out;
  out.reserve(parts_.size());
  for (const auto& iv : parts_) out.push_back({*iv.lo.value, *iv.hi.value});
  return out;
}

bool IntervalSet::contains(const Rational& x) const {
  for (const auto& iv : parts_) {
    bool above_lo = !iv.lo.value || *iv.lo.value <= x;
    bool below_hi = !iv.hi.value || x <= *iv.hi.value;
    if (above_lo && below_hi) return true;
  }
  return false;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> all;
  all.reserve(parts_.size() + other.parts_.size());
  all.insert(all.end(), parts_.begin(), parts_.end());
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  std::stable_sort(all.begin(), all.end(), [](const Interval& a, const Interval& b) { return lo_less(a.lo, b.lo); });
  std::vector<Interval> merged;
  for (auto& iv : all) {
    if (!merged.empty() && reaches(merged.back().hi, iv.lo)) {
      if (hi_less(merged.back().hi, iv.hi)) merged.back().hi = iv.hi;
    } else {
      merged.push_back(iv);
    }
  }
  return from_sorted(std::move(merged));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < parts_.size() && j < other.parts_.size()) {
    const Interval& a = parts_[i];
    const Interval& b = other.parts_[j];
    Interval cut{lo_less(a.lo, b.lo) ? b.lo : a.lo, hi_less(a.hi, b.hi) ? a.hi : b.hi};
    if (has_length(cut)) out.push_back(std::move(cut));
    if (hi_less(a.hi, b.hi)) ++i;
    else ++j;
  }
  return from_sorted(std::move(out));
}

std::string IntervalSet::to_string() const {
  std::ostringstream out;
  out << "{";
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (k) out << ", ";
    out << "[" << (parts_[k].lo.value ? parts_[k].lo.value->get_str() : "-inf") << ","
        << (parts_[k].hi.value ? parts_[k].hi.value->get_str() : "+inf") << "]";
  }
  out << "}";
  return out.str();
}

}  // namespace smi
