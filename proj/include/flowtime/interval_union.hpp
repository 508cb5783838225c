#ifndef FLOWTIME_INTERVAL_UNION_HPP
#define FLOWTIME_INTERVAL_UNION_HPP

#include <utility>
#include <vector>

#include "flowtime/rational.hpp"

namespace flowtime {

// Finite union of closed intervals [l, r] (possibly degenerate points),
// kept sorted with touching or overlapping intervals merged.
class IntervalUnion {
 public:
  struct Interval {
    Rational lo, hi;  // lo <= hi
  };

  IntervalUnion() = default;
  static IntervalUnion single(const Rational& lo, const Rational& hi);

  void add(const Rational& lo, const Rational& hi);  // merges as needed

  bool empty() const { return intervals_.empty(); }
  const std::vector<Interval>& intervals() const { return intervals_; }
  Rational measure() const;
  bool contains(const Rational& x) const;
  IntervalUnion shifted(const Rational& c) const;
  IntervalUnion united(const IntervalUnion& other) const;
  bool subset_of(const IntervalUnion& other) const;

  Rational min() const;  // throws on empty
  Rational max() const;

  friend bool operator==(const IntervalUnion& a, const IntervalUnion& b) {
    if (a.intervals_.size() != b.intervals_.size()) return false;
    for (size_t i = 0; i < a.intervals_.size(); ++i) {
      if (a.intervals_[i].lo != b.intervals_[i].lo) return false;
      if (a.intervals_[i].hi != b.intervals_[i].hi) return false;
    }
    return true;
  }
  friend bool operator!=(const IntervalUnion& a, const IntervalUnion& b) {
    return !(a == b);
  }

 private:
  std::vector<Interval> intervals_;
};

}  // namespace flowtime

#endif  // FLOWTIME_INTERVAL_UNION_HPP
