#ifndef FLOWTIME_SCHEDULE_HPP
#define FLOWTIME_SCHEDULE_HPP

#include <vector>

#include "flowtime/interval_union.hpp"
#include "flowtime/piecewise_linear.hpp"
#include "flowtime/scheduling_cost.hpp"
#include "flowtime/ssp.hpp"

namespace flowtime {

struct PathWindow {
  IntervalUnion departures;  // departure times from the source
  Rational stage_delay;      // path delay at its stage
  Rational rate;             // flow rate while departing
  Rational threshold;        // horizon minus commute cost; negative = inactive
};

// Departure windows per decomposition path for a fixed cost horizon (or, via
// the demand entry point, an interpolated variant hitting a demand exactly).
class PathSchedule {
 public:
  PathSchedule(std::vector<PathWindow> windows, Rational horizon, Rational delta);

  const std::vector<PathWindow>& windows() const { return windows_; }
  const Rational& horizon() const { return horizon_; }
  // 1 = maximal windows; in (0,1) when flat cost pieces are partially used
  const Rational& delta() const { return delta_; }
  Rational value() const;  // total flow sent

 private:
  std::vector<PathWindow> windows_;
  Rational horizon_;
  Rational delta_;
};

// Maximal departure windows for cost horizon C >= 0.
PathSchedule path_schedule(const SspDecomposition& decomp, const SchedulingCost& cost,
                           const Rational& horizon);

// Q(C) = value of the maximal schedule at horizon C.
Rational value_of_horizon(const SspDecomposition& decomp, const SchedulingCost& cost,
                          const Rational& horizon);

// The exact piecewise-linear map C -> Q(C), and its inversion.
class ParametricCurve {
 public:
  ParametricCurve(const SspDecomposition& decomp, const SchedulingCost& cost);

  const PiecewiseLinear& value_by_horizon() const { return curve_; }
  Rational value(const Rational& horizon) const;

  struct Inversion {
    Rational horizon;      // minimal C with Q(C) >= demand
    bool on_jump;          // demand falls inside a discontinuity at C
    Rational value_below;  // left limit of Q at C (on_jump only)
    Rational value_at;     // Q(C)
  };
  // throws demand_infeasible_error when the demand exceeds sup Q
  Inversion invert(const Rational& demand) const;

 private:
  PiecewiseLinear curve_;
};

// Minimal C with Q(C) = demand; demand_infeasible_error when unreachable,
// input_error when Q jumps over the demand (use schedule_for_demand then).
Rational horizon_for_demand(const SspDecomposition& decomp, const SchedulingCost& cost,
                            const Rational& demand);

// Diagnostic cross-check of the curve inversion by rational bisection;
// returns a bracketing interval of width at most tolerance.
std::pair<Rational, Rational> horizon_for_demand_bisection(const SspDecomposition& decomp,
                                                           const SchedulingCost& cost,
                                                           const Rational& demand,
                                                           const Rational& tolerance);

// Schedule meeting the demand exactly. Falls back to interpolated windows
// when the demand sits inside a jump of Q (flat cost pieces).
PathSchedule schedule_for_demand(const SspDecomposition& decomp, const SchedulingCost& cost,
                                 const Rational& demand);

// J(v, .): the largest stage whose travel cost through v still fits under
// the horizon, as a step function given by nested stage sets.
class StageIndexFunction {
 public:
  StageIndexFunction(const SspDecomposition& decomp, const SchedulingCost& cost,
                     const Rational& horizon, NodeId node);

  int value_at(const Rational& theta) const;  // 0 when no stage fits
  // stage_sets()[j-1] = {theta : stage j fits}; nested decreasing
  const std::vector<IntervalUnion>& stage_sets() const { return sets_; }
  NodeId node() const { return node_; }
  // all endpoints of all stage sets, sorted and unique
  std::vector<Rational> boundaries() const;

 private:
  std::vector<IntervalUnion> sets_;
  NodeId node_;
};

}  // namespace flowtime

#endif  // FLOWTIME_SCHEDULE_HPP
