#include "flowtime/scheduling_cost.hpp"

#include "flowtime/errors.hpp"

namespace flowtime {

PiecewiseLinear growth_normalize(const PiecewiseLinear& rho, const Rational& alpha) {
  PiecewiseLinear shifted_cost = rho + PiecewiseLinear::line(alpha, 0);
  PiecewiseLinear suffix_min = shifted_cost.running_min_from_right();
  return suffix_min - PiecewiseLinear::line(alpha, 0);
}

namespace {

// Point values become the min of the adjacent piece limits.
PiecewiseLinear enforce_lower_semicontinuity(const PiecewiseLinear& f) {
  std::vector<ExtendedRational> values;
  values.reserve(f.knot_count());
  for (size_t i = 0; i < f.knot_count(); ++i) {
    const Rational& k = f.knots()[i];
    values.push_back(min(f.left_limit(k), f.right_limit(k)));
  }
  return PiecewiseLinear::make(f.knots(), f.segments(), std::move(values));
}

}  // namespace

SchedulingCost::SchedulingCost(const PiecewiseLinear& rho_input, const Rational& alpha)
    : alpha_(alpha) {
  if (alpha.sign() <= 0) throw input_error("value of time alpha must be positive");
  PiecewiseLinear rho = enforce_lower_semicontinuity(rho_input);

  auto pre_min = rho.global_min();
  if (pre_min.value.is_minus_inf() || pre_min.value.is_plus_inf())
    throw input_error("scheduling cost must be finite somewhere and bounded below");
  if (pre_min.value < ExtendedRational(0))
    throw input_error("scheduling cost must be nonnegative");

  PiecewiseLinear normalized = growth_normalize(rho, alpha);
  growth_adjusted_ = !(normalized == rho);
  rho = normalized;

  // Shift so the minimum is 0 and attained at time 0.
  auto info = rho.global_min();
  if (!info.value.is_finite())
    throw input_error("scheduling cost has no finite minimum");
  value_shift_ = info.value.finite();
  if (!value_shift_.is_zero()) rho = rho.plus(ExtendedRational(-value_shift_));

  if (rho.value(0) != ExtendedRational(0)) {
    auto argmin_components = rho.level_components(0);
    if (argmin_components.empty())
      throw input_error("scheduling cost minimum is not attained");
    Rational best = argmin_components[0].lo;
    for (const auto& comp : argmin_components) {
      Rational candidate = comp.lo.sign() > 0 ? comp.lo : (comp.hi.sign() < 0 ? comp.hi : 0);
      if (abs(candidate) < abs(best) || (abs(candidate) == abs(best) && candidate < best))
        best = candidate;
    }
    time_shift_ = -best;
    rho = rho.shifted_arg(best);
  }
  if (rho.value(0) != ExtendedRational(0))
    throw internal_error("cost normalization failed to anchor the minimum at 0");

  // Both tails must grow without bound (or be infinite) so that sublevel
  // sets are finite unions of compact intervals.
  const Segment& left = rho.segments().front();
  const Segment& right = rho.segments().back();
  bool left_ok = left.kind == Segment::Kind::PlusInf ||
                 (left.is_linear() && left.slope.sign() < 0);
  bool right_ok = right.kind == Segment::Kind::PlusInf ||
                  (right.is_linear() && right.slope.sign() > 0);
  if (!left_ok || !right_ok)
    throw input_error("scheduling cost must increase without bound in both directions");
  for (const Segment& s : rho.segments()) {
    if (s.kind == Segment::Kind::MinusInf)
      throw input_error("scheduling cost cannot be -inf");
    if (s.is_linear() && s.slope < -alpha_)
      throw internal_error("growth bound violated after normalization");
  }

  rho_ = std::move(rho);
  classify();
  build_sublevel_measure();
}

SchedulingCost SchedulingCost::standard(const Rational& alpha, const Rational& beta,
                                        const ExtendedRational& gamma) {
  if (beta.sign() <= 0) throw input_error("beta must be positive");
  if (gamma <= ExtendedRational(0)) throw input_error("gamma must be positive");
  Segment right = gamma.is_finite() ? Segment::line(gamma.finite(), 0) : Segment::plus_inf();
  PiecewiseLinear rho = PiecewiseLinear::make(
      {Rational(0)}, {Segment::line(-beta, 0), right}, {ExtendedRational(0)});
  return SchedulingCost(rho, alpha);
}

SchedulingCost SchedulingCost::earliest_arrival(const Rational& alpha) {
  return standard(alpha, alpha, ExtendedRational::infinity());
}

IntervalUnion SchedulingCost::sublevel(const Rational& z) const {
  if (z.sign() < 0) throw input_error("sublevel threshold must be nonnegative");
  return rho_.sublevel_set(z, false);
}

IntervalUnion SchedulingCost::strict_sublevel_closure(const Rational& z) const {
  if (z.sign() < 0) throw input_error("sublevel threshold must be nonnegative");
  return rho_.sublevel_set(z, true);
}

IntervalUnion SchedulingCost::interpolated_sublevel(const Rational& z,
                                                    const Rational& delta) const {
  if (delta.sign() < 0 || Rational(1) < delta)
    throw input_error("interpolation parameter must lie in [0,1]");
  IntervalUnion minimal = strict_sublevel_closure(z);
  if (delta.is_zero()) return minimal;
  IntervalUnion out = minimal;
  for (const auto& comp : rho_.level_components(z)) {
    if (IntervalUnion::single(comp.lo, comp.hi).subset_of(minimal)) continue;
    bool left_attached = minimal.contains(comp.lo);
    bool right_attached = minimal.contains(comp.hi);
    Rational len = comp.hi - comp.lo;
    if (left_attached && right_attached) {
      Rational half = delta * len / 2;
      out.add(comp.lo, comp.lo + half);
      out.add(comp.hi - half, comp.hi);
    } else if (left_attached) {
      out.add(comp.lo, comp.lo + delta * len);
    } else if (right_attached) {
      out.add(comp.hi - delta * len, comp.hi);
    } else {
      Rational mid = (comp.lo + comp.hi) / 2;
      Rational half = delta * len / 2;
      out.add(mid - half, mid + half);
    }
  }
  return out;
}

void SchedulingCost::classify() {
  auto argmin_components = rho_.level_components(0);
  unimodal_ = false;
  strongly_unimodal_ = false;
  if (argmin_components.size() != 1) return;
  const auto& bottom = argmin_components[0];

  // Nonincreasing up to the bottom, nondecreasing after it; strict versions
  // additionally forbid flat pieces.
  bool nonincreasing_ok = true, nondecreasing_ok = true, has_flat = false;
  size_t n = rho_.knot_count();
  for (size_t i = 0; i <= n; ++i) {
    const Segment& s = rho_.segments()[i];
    if (!s.is_linear()) continue;
    Rational lo = i == 0 ? bottom.lo - 1 : rho_.knots()[i - 1];
    Rational hi = i == n ? bottom.hi + 1 : rho_.knots()[i];
    if (s.slope.is_zero() && !(s.intercept.is_zero())) has_flat = true;
    if (hi <= bottom.lo && s.slope.sign() > 0) nonincreasing_ok = false;
    if (bottom.hi <= lo && s.slope.sign() < 0) nondecreasing_ok = false;
  }
  for (size_t i = 0; i < n; ++i) {
    const Rational& k = rho_.knots()[i];
    ExtendedRational v = rho_.knot_values()[i];
    if (k < bottom.lo && !(v >= rho_.right_limit(k))) nonincreasing_ok = false;
    if (k <= bottom.lo && !(rho_.left_limit(k) >= v)) nonincreasing_ok = false;
    if (k > bottom.hi && !(rho_.left_limit(k) <= v)) nondecreasing_ok = false;
    if (k >= bottom.hi && !(v <= rho_.right_limit(k))) nondecreasing_ok = false;
  }
  unimodal_ = nonincreasing_ok && nondecreasing_ok;
  strongly_unimodal_ = unimodal_ && !has_flat && bottom.lo == bottom.hi;
}

void SchedulingCost::build_sublevel_measure() {
  PiecewiseLinear total;  // zero
  size_t n = rho_.knot_count();
  for (size_t i = 0; i <= n; ++i) {
    const Segment& s = rho_.segments()[i];
    if (!s.is_linear()) continue;
    bool has_lo = i > 0, has_hi = i < n;
    Rational lo = has_lo ? rho_.knots()[i - 1] : Rational(0);
    Rational hi = has_hi ? rho_.knots()[i] : Rational(0);
    PiecewiseLinear contribution;
    if (s.slope.is_zero()) {
      // flat piece: a jump of the full length exactly at its level
      if (!has_lo || !has_hi) throw internal_error("flat tail escaped validation");
      Rational len = hi - lo;
      contribution = PiecewiseLinear::make(
          {s.intercept}, {Segment::line(0, 0), Segment::line(0, len)},
          {ExtendedRational(len)});
    } else if (s.slope.sign() > 0) {
      if (!has_lo) throw internal_error("rising left tail escaped validation");
      Rational y_lo = s.slope * lo + s.intercept;
      Rational y_hi = has_hi ? s.slope * hi + s.intercept : Rational(0);
      Rational inv = Rational(1) / s.slope;
      // measure of {theta in piece : rho <= z} = (z - b)/slope - lo
      Segment rising = Segment::line(inv, -s.intercept * inv - lo);
      if (has_hi) {
        contribution = PiecewiseLinear::make(
            {y_lo, y_hi}, {Segment::line(0, 0), rising, Segment::line(0, hi - lo)},
            {ExtendedRational(0), ExtendedRational(hi - lo)});
      } else {
        contribution = PiecewiseLinear::make({y_lo}, {Segment::line(0, 0), rising},
                                             {ExtendedRational(0)});
      }
    } else {
      if (!has_hi) throw internal_error("falling right tail escaped validation");
      Rational y_hi = s.slope * hi + s.intercept;
      Rational inv = Rational(-1) / s.slope;
      // measure of {theta in piece : rho <= z} = hi - (z - b)/slope
      Segment rising = Segment::line(inv, hi + s.intercept / s.slope);
      if (has_lo) {
        Rational y_lo = s.slope * lo + s.intercept;
        contribution = PiecewiseLinear::make(
            {y_hi, y_lo}, {Segment::line(0, 0), rising, Segment::line(0, hi - lo)},
            {ExtendedRational(0), ExtendedRational(hi - lo)});
      } else {
        contribution = PiecewiseLinear::make({y_hi}, {Segment::line(0, 0), rising},
                                             {ExtendedRational(0)});
      }
    }
    total = total + contribution;
  }
  sublevel_measure_ = std::move(total);
}

}  // namespace flowtime
