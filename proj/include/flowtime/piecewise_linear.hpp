#ifndef FLOWTIME_PIECEWISE_LINEAR_HPP
#define FLOWTIME_PIECEWISE_LINEAR_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flowtime/extended_rational.hpp"
#include "flowtime/interval_union.hpp"
#include "flowtime/rational.hpp"

namespace flowtime {

// One piece of a piecewise-linear function, valid on an open interval.
struct Segment {
  enum class Kind { Linear, PlusInf, MinusInf };
  Kind kind = Kind::Linear;
  Rational slope;
  Rational intercept;

  static Segment line(Rational slope, Rational intercept) {
    return Segment{Kind::Linear, std::move(slope), std::move(intercept)};
  }
  static Segment plus_inf() { return Segment{Kind::PlusInf, 0, 0}; }
  static Segment minus_inf() { return Segment{Kind::MinusInf, 0, 0}; }

  bool is_linear() const { return kind == Kind::Linear; }
  bool is_zero() const { return is_linear() && slope.is_zero() && intercept.is_zero(); }
  ExtendedRational at(const Rational& x) const;

  friend bool operator==(const Segment& a, const Segment& b);
};

// Exact piecewise-linear function on the whole real line. Pieces live on the
// open cells between knots; every knot carries an explicit point value, so
// discontinuities and isolated values are represented exactly. Pieces may be
// identically +inf or -inf (used for scheduling costs with forbidden regions).
class PiecewiseLinear {
 public:
  PiecewiseLinear();  // identically zero
  static PiecewiseLinear constant(const ExtendedRational& v);
  static PiecewiseLinear line(const Rational& slope, const Rational& intercept);
  static PiecewiseLinear make(std::vector<Rational> knots, std::vector<Segment> segments,
                              std::vector<ExtendedRational> knot_values);

  size_t knot_count() const { return knots_.size(); }
  const std::vector<Rational>& knots() const { return knots_; }
  const std::vector<Segment>& segments() const { return segments_; }
  const std::vector<ExtendedRational>& knot_values() const { return knot_values_; }

  ExtendedRational value(const Rational& x) const;
  ExtendedRational left_limit(const Rational& x) const;
  ExtendedRational right_limit(const Rational& x) const;

  PiecewiseLinear shifted_arg(const Rational& c) const;  // x -> f(x + c)
  PiecewiseLinear operator-() const;
  PiecewiseLinear scaled(const Rational& factor) const;
  PiecewiseLinear plus(const ExtendedRational& c) const;

  friend PiecewiseLinear operator+(const PiecewiseLinear& a, const PiecewiseLinear& b);
  friend PiecewiseLinear operator-(const PiecewiseLinear& a, const PiecewiseLinear& b);

  static PiecewiseLinear pointwise_max(const PiecewiseLinear& a, const PiecewiseLinear& b);
  static PiecewiseLinear pointwise_min(const PiecewiseLinear& a, const PiecewiseLinear& b);
  PiecewiseLinear positive_part() const;

  // M(x) = inf over [x, infinity) of f; throws if that infimum is -inf.
  PiecewiseLinear running_min_from_right() const;

  // Exact integral over [a, b]; throws internal_error if an infinite piece
  // has positive measure inside.
  Rational integral(const Rational& a, const Rational& b) const;
  // Integral of f*g over [a, b]; a cell where either factor is identically
  // zero contributes zero even if the other is infinite there.
  Rational integral_product(const PiecewiseLinear& g, const Rational& a,
                            const Rational& b) const;

  bool is_identically_zero() const;
  bool is_finite_everywhere() const;
  // Smallest closed interval outside which f is identically zero, or nullopt
  // for the zero function; throws internal_error if a tail is nonzero.
  std::optional<std::pair<Rational, Rational>> support_bounds() const;

  // Global minimum (infimum) and, when attained at a representable point,
  // one such point. Minus infinity signals an unbounded-below function.
  struct MinInfo {
    ExtendedRational value;
    std::optional<Rational> argmin;
  };
  MinInfo global_min() const;

  // {x : f(x) <= z} (strict=false) or closure of {x : f(x) < z} (strict=true),
  // as a finite union of closed intervals. Throws input_error on unbounded sets.
  IntervalUnion sublevel_set(const Rational& z, bool strict_closure = false) const;
  // Maximal intervals (possibly degenerate) where f == z.
  std::vector<IntervalUnion::Interval> level_components(const Rational& z) const;

  friend bool operator==(const PiecewiseLinear& a, const PiecewiseLinear& b);
  friend bool operator!=(const PiecewiseLinear& a, const PiecewiseLinear& b) {
    return !(a == b);
  }

  std::string str() const;  // debugging aid

  // Incremental left-to-right construction: seg, knot, seg, knot, ..., seg.
  class Builder {
   public:
    Builder& segment(const Segment& s);
    Builder& knot(const Rational& x, const ExtendedRational& value);
    PiecewiseLinear finish();

   private:
    std::vector<Rational> knots_;
    std::vector<Segment> segments_;
    std::vector<ExtendedRational> values_;
    bool expecting_segment_ = true;
  };

 private:
  void canonicalize();
  // index of the segment covering open cell containing x (x not a knot),
  // or of the cell directly right of knot index when at_knot.
  size_t cell_index(const Rational& x) const;

  std::vector<Rational> knots_;
  std::vector<Segment> segments_;             // knots_.size() + 1
  std::vector<ExtendedRational> knot_values_;  // knots_.size()
};

}  // namespace flowtime

#endif  // FLOWTIME_PIECEWISE_LINEAR_HPP
