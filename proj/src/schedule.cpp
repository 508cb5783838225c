#include "flowtime/schedule.hpp"

#include <algorithm>

#include "flowtime/errors.hpp"

namespace flowtime {

PathSchedule::PathSchedule(std::vector<PathWindow> windows, Rational horizon, Rational delta)
    : windows_(std::move(windows)), horizon_(std::move(horizon)), delta_(std::move(delta)) {}

Rational PathSchedule::value() const {
  Rational q = 0;
  for (const PathWindow& w : windows_) q += w.rate * w.departures.measure();
  return q;
}

namespace {

PathSchedule build_schedule(const SspDecomposition& decomp, const SchedulingCost& cost,
                            const Rational& horizon, const Rational& delta) {
  if (horizon.sign() < 0) throw input_error("cost horizon must be nonnegative");
  std::vector<PathWindow> windows;
  windows.reserve(decomp.path_count());
  for (const DecompositionPath& path : decomp.paths()) {
    PathWindow w;
    w.stage_delay = path.delay;
    w.rate = path.amount;
    w.threshold = horizon - cost.alpha() * path.delay;
    if (w.threshold.sign() >= 0) {
      IntervalUnion arrivals = delta == Rational(1)
                                   ? cost.sublevel(w.threshold)
                                   : cost.interpolated_sublevel(w.threshold, delta);
      w.departures = arrivals.shifted(-path.delay);
    }
    windows.push_back(std::move(w));
  }
  return PathSchedule(std::move(windows), horizon, delta);
}

}  // namespace

PathSchedule path_schedule(const SspDecomposition& decomp, const SchedulingCost& cost,
                           const Rational& horizon) {
  return build_schedule(decomp, cost, horizon, Rational(1));
}

Rational value_of_horizon(const SspDecomposition& decomp, const SchedulingCost& cost,
                          const Rational& horizon) {
  return path_schedule(decomp, cost, horizon).value();
}

ParametricCurve::ParametricCurve(const SspDecomposition& decomp, const SchedulingCost& cost) {
  PiecewiseLinear total;  // zero
  const PiecewiseLinear& width = cost.sublevel_measure();
  for (const DecompositionPath& path : decomp.paths()) {
    // Q contribution of this path: rate * width(C - alpha * delay).
    PiecewiseLinear shifted = width.shifted_arg(-(cost.alpha() * path.delay));
    total = total + shifted.scaled(path.amount);
  }
  for (const Segment& s : total.segments())
    if (!s.is_linear() || s.slope.sign() < 0)
      throw internal_error("parametric curve is not nondecreasing");
  curve_ = std::move(total);
}

Rational ParametricCurve::value(const Rational& horizon) const {
  if (horizon.sign() < 0) throw input_error("cost horizon must be nonnegative");
  ExtendedRational v = curve_.value(horizon);
  return v.finite();
}

ParametricCurve::Inversion ParametricCurve::invert(const Rational& demand) const {
  if (demand.sign() < 0) throw input_error("demand must be nonnegative");
  Rational prev_c = 0;
  Rational prev_v = value(prev_c);
  if (demand <= prev_v) {
    if (demand == prev_v) return {prev_c, false, prev_v, prev_v};
    return {prev_c, true, Rational(0), prev_v};
  }
  auto solve_on_segment = [&](const Segment& s, const Rational& q) {
    if (!s.is_linear() || s.slope.sign() <= 0)
      throw internal_error("curve inversion hit a non-increasing segment");
    return (q - s.intercept) / s.slope;
  };
  const auto& knots = curve_.knots();
  size_t i = std::upper_bound(knots.begin(), knots.end(), Rational(0)) - knots.begin();
  for (; i < knots.size(); ++i) {
    const Rational& c = knots[i];
    Rational left = curve_.left_limit(c).finite();
    if (demand <= left && prev_v < demand)
      return {solve_on_segment(curve_.segments()[i], demand), false, demand, demand};
    Rational at = curve_.value(c).finite();
    if (demand <= at) {
      if (demand == at) return {c, false, left, at};
      return {c, true, left, at};
    }
    prev_c = c;
    prev_v = at;
  }
  const Segment& tail = curve_.segments().back();
  if (!tail.is_linear()) throw internal_error("parametric curve tail is not finite");
  if (tail.slope.sign() == 0)
    throw demand_infeasible_error("demand " + demand.str() +
                                  " exceeds the largest reachable flow value " +
                                  prev_v.str());
  return {solve_on_segment(tail, demand), false, demand, demand};
}

Rational horizon_for_demand(const SspDecomposition& decomp, const SchedulingCost& cost,
                            const Rational& demand) {
  ParametricCurve curve(decomp, cost);
  auto inv = curve.invert(demand);
  if (inv.on_jump)
    throw input_error("the demand falls inside a discontinuity of the parametric curve; "
                      "use the interpolating schedule");
  return inv.horizon;
}

std::pair<Rational, Rational> horizon_for_demand_bisection(const SspDecomposition& decomp,
                                                           const SchedulingCost& cost,
                                                           const Rational& demand,
                                                           const Rational& tolerance) {
  if (tolerance.sign() <= 0) throw input_error("tolerance must be positive");
  Rational lo = 0;
  if (demand <= value_of_horizon(decomp, cost, lo)) return {lo, lo};
  Rational hi = 1;
  int growth_guard = 0;
  while (value_of_horizon(decomp, cost, hi) < demand) {
    hi = hi * 2;
    if (++growth_guard > 200)
      throw demand_infeasible_error("bisection could not bracket the demand");
  }
  while (tolerance < hi - lo) {
    Rational mid = (lo + hi) / 2;
    if (value_of_horizon(decomp, cost, mid) < demand)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

PathSchedule schedule_for_demand(const SspDecomposition& decomp, const SchedulingCost& cost,
                                 const Rational& demand) {
  ParametricCurve curve(decomp, cost);
  auto inv = curve.invert(demand);
  if (!inv.on_jump) {
    PathSchedule schedule = path_schedule(decomp, cost, inv.horizon);
    if (schedule.value() != demand)
      throw internal_error("maximal schedule missed the demand after curve inversion");
    return schedule;
  }
  Rational gap = inv.value_at - inv.value_below;
  if (gap.sign() <= 0) throw internal_error("jump inversion without a jump");
  Rational delta = (demand - inv.value_below) / gap;
  PathSchedule schedule = build_schedule(decomp, cost, inv.horizon, delta);
  if (schedule.value() != demand)
    throw internal_error("interpolated schedule missed the demand");
  return schedule;
}

StageIndexFunction::StageIndexFunction(const SspDecomposition& decomp,
                                       const SchedulingCost& cost, const Rational& horizon,
                                       NodeId node)
    : node_(node) {
  int m = decomp.path_count();
  sets_.reserve(m);
  for (int j = 1; j <= m; ++j) {
    const Rational& stage_delay = decomp.paths()[j - 1].delay;
    Rational threshold = horizon - cost.alpha() * stage_delay;
    const ExtendedRational& to_sink = decomp.dist_to_sink(j - 1, node);
    IntervalUnion set;
    if (threshold.sign() >= 0 && to_sink.is_finite())
      set = cost.sublevel(threshold).shifted(-to_sink.finite());
    if (j > 1 && !set.subset_of(sets_.back()))
      throw internal_error("stage sets are not nested");
    sets_.push_back(std::move(set));
  }
}

int StageIndexFunction::value_at(const Rational& theta) const {
  for (int j = static_cast<int>(sets_.size()); j >= 1; --j)
    if (sets_[j - 1].contains(theta)) return j;
  return 0;
}

std::vector<Rational> StageIndexFunction::boundaries() const {
  std::vector<Rational> out;
  for (const IntervalUnion& set : sets_)
    for (const auto& iv : set.intervals()) {
      out.push_back(iv.lo);
      out.push_back(iv.hi);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace flowtime
