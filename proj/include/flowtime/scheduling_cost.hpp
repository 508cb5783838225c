#ifndef FLOWTIME_SCHEDULING_COST_HPP
#define FLOWTIME_SCHEDULING_COST_HPP

#include <vector>

#include "flowtime/interval_union.hpp"
#include "flowtime/piecewise_linear.hpp"
#include "flowtime/rational.hpp"

namespace flowtime {

// rho_hat(t) = min over x >= t of rho(x) + alpha*(x - t); the smallest
// relaxation of rho under which waiting at the sink never pays off.
PiecewiseLinear growth_normalize(const PiecewiseLinear& rho, const Rational& alpha);

// Scheduling cost: piecewise-linear, lower-semicontinuous penalty for
// arriving at the sink at a given time, together with the value of time.
// Construction normalizes the input: point values are lowered to the min of
// the adjacent piece limits, the growth bound (slope >= -alpha) is enforced
// by growth_normalize, and the function is shifted so its minimum is 0 and
// attained at time 0. Both branches must grow without bound (or be +inf),
// so every sublevel set is a finite union of compact intervals.
class SchedulingCost {
 public:
  SchedulingCost(const PiecewiseLinear& rho, const Rational& alpha);

  // rho(t) = -beta*t for t <= 0 and gamma*t for t > 0 (gamma may be +inf).
  static SchedulingCost standard(const Rational& alpha, const Rational& beta,
                                 const ExtendedRational& gamma);
  // beta = alpha, gamma = +inf: finite cost forces arrival by time 0.
  static SchedulingCost earliest_arrival(const Rational& alpha);

  const Rational& alpha() const { return alpha_; }
  const PiecewiseLinear& rho() const { return rho_; }

  ExtendedRational value(const Rational& theta) const { return rho_.value(theta); }

  // {theta : rho(theta) <= z}; single interval for strongly unimodal costs.
  IntervalUnion sublevel(const Rational& z) const;
  // Closure of {theta : rho(theta) < z}: the minimal departure set at level z.
  IntervalUnion strict_sublevel_closure(const Rational& z) const;
  // Interpolates between the two previous sets: each maximal piece with
  // rho == z enters proportionally to delta, growing away from the side(s)
  // already touching the strict sublevel set.
  IntervalUnion interpolated_sublevel(const Rational& z, const Rational& delta) const;

  // Lebesgue measure of sublevel(z) as an exact piecewise-linear function of
  // z (right-continuous; jumps exactly at levels of flat pieces).
  const PiecewiseLinear& sublevel_measure() const { return sublevel_measure_; }

  bool unimodal() const { return unimodal_; }
  bool strongly_unimodal() const { return strongly_unimodal_; }

  // Normalization report: rho_input(theta) = rho(theta - time_shift) + value_shift
  // held before growth normalization was applied.
  const Rational& time_shift() const { return time_shift_; }
  const Rational& value_shift() const { return value_shift_; }
  bool growth_bound_adjusted() const { return growth_adjusted_; }

 private:
  void classify();
  void build_sublevel_measure();

  PiecewiseLinear rho_;
  Rational alpha_;
  PiecewiseLinear sublevel_measure_;
  bool unimodal_ = false;
  bool strongly_unimodal_ = false;
  Rational time_shift_;
  Rational value_shift_;
  bool growth_adjusted_ = false;
};

}  // namespace flowtime

#endif  // FLOWTIME_SCHEDULING_COST_HPP
