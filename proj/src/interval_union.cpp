#include "flowtime/interval_union.hpp"

#include <algorithm>

#include "flowtime/errors.hpp"

namespace flowtime {

IntervalUnion IntervalUnion::single(const Rational& lo, const Rational& hi) {
  IntervalUnion u;
  u.add(lo, hi);
  return u;
}

void IntervalUnion::add(const Rational& lo, const Rational& hi) {
  if (hi < lo) throw internal_error("interval with hi < lo");
  Interval iv{lo, hi};
  // Find insertion window of intervals that touch [lo, hi] and merge them.
  std::vector<Interval> merged;
  merged.reserve(intervals_.size() + 1);
  size_t i = 0;
  while (i < intervals_.size() && intervals_[i].hi < iv.lo) merged.push_back(intervals_[i++]);
  while (i < intervals_.size() && intervals_[i].lo <= iv.hi) {
    iv.lo = flowtime::min(iv.lo, intervals_[i].lo);
    iv.hi = flowtime::max(iv.hi, intervals_[i].hi);
    ++i;
  }
  merged.push_back(iv);
  while (i < intervals_.size()) merged.push_back(intervals_[i++]);
  intervals_ = std::move(merged);
}

Rational IntervalUnion::measure() const {
  Rational total = 0;
  for (const auto& iv : intervals_) total += iv.hi - iv.lo;
  return total;
}

bool IntervalUnion::contains(const Rational& x) const {
  auto it = std::upper_bound(
      intervals_.begin(), intervals_.end(), x,
      [](const Rational& v, const Interval& iv) { return v < iv.lo; });
  if (it == intervals_.begin()) return false;
  --it;
  return x <= it->hi;
}

IntervalUnion IntervalUnion::shifted(const Rational& c) const {
  IntervalUnion out;
  out.intervals_.reserve(intervals_.size());
  for (const auto& iv : intervals_) out.intervals_.push_back({iv.lo + c, iv.hi + c});
  return out;
}

IntervalUnion IntervalUnion::united(const IntervalUnion& other) const {
  IntervalUnion out = *this;
  for (const auto& iv : other.intervals_) out.add(iv.lo, iv.hi);
  return out;
}

bool IntervalUnion::subset_of(const IntervalUnion& other) const {
  for (const auto& iv : intervals_) {
    bool covered = false;
    for (const auto& big : other.intervals_) {
      if (big.lo <= iv.lo && iv.hi <= big.hi) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

Rational IntervalUnion::min() const {
  if (empty()) throw internal_error("min() of empty interval union");
  return intervals_.front().lo;
}

Rational IntervalUnion::max() const {
  if (empty()) throw internal_error("max() of empty interval union");
  return intervals_.back().hi;
}

}  // namespace flowtime
