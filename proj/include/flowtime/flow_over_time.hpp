#ifndef FLOWTIME_FLOW_OVER_TIME_HPP
#define FLOWTIME_FLOW_OVER_TIME_HPP

#include <optional>
#include <vector>

#include "flowtime/network.hpp"
#include "flowtime/piecewise_linear.hpp"
#include "flowtime/schedule.hpp"

namespace flowtime {

// A flow over time with piecewise-constant arc inflow rates. Satisfies
// capacity bounds and exact flow conservation (no waiting) at intermediate
// nodes; both are enforced on construction.
class FlowOverTime {
 public:
  FlowOverTime(const Network& net, std::vector<PiecewiseLinear> rates, Rational value,
               Rational horizon);

  const Network& network() const { return net_; }
  const PiecewiseLinear& rate(ArcId a) const { return rates_[a]; }
  const std::vector<PiecewiseLinear>& rates() const { return rates_; }
  const Rational& value() const { return value_; }
  const Rational& horizon() const { return horizon_; }

  // Net inflow rate at v as a function of time.
  PiecewiseLinear net_inflow(NodeId v) const;
  // Amount arrived at the sink up to the given time.
  Rational arrived_by(const Rational& deadline) const;

 private:
  Network net_;
  std::vector<PiecewiseLinear> rates_;
  Rational value_;
  Rational horizon_;
};

// Superpose the schedule's path windows onto the arcs. The result mirrors
// the cumulative static flows: at any tail time the rate on an arc equals
// the arc's flow in the largest stage still active there.
FlowOverTime assemble(const SspDecomposition& decomp, const PathSchedule& schedule);

// Exact objective value, computed along two independent routes (per-arc
// commute plus arrival-cost integral, and per-path closed form) which must
// agree; disagreement raises internal_error.
Rational primal_cost(const FlowOverTime& flow, const SchedulingCost& cost,
                     const PathSchedule* schedule = nullptr);

// Largest stage index whose travel cost through the arc tail fits under the
// horizon, evaluated directly from the stage distance tables (kept separate
// from StageIndexFunction so the two sides stay independent).
int direct_stage_index(const SspDecomposition& decomp, const SchedulingCost& cost,
                       const Rational& horizon, NodeId node, const Rational& theta);

// f_vw(theta) == f^(J(tail, theta))_vw pointwise; returns a violating
// (arc, theta) witness if any, checking all rate breakpoints plus samples.
struct Theorem1Witness {
  ArcId arc;
  Rational theta;
};
std::optional<Theorem1Witness> check_stage_characterization(
    const SspDecomposition& decomp, const SchedulingCost& cost, const FlowOverTime& flow,
    const std::vector<Rational>& sample_times);

}  // namespace flowtime

#endif  // FLOWTIME_FLOW_OVER_TIME_HPP
