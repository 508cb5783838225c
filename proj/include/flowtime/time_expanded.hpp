#ifndef FLOWTIME_TIME_EXPANDED_HPP
#define FLOWTIME_TIME_EXPANDED_HPP

#include <optional>
#include <vector>

#include "flowtime/flow_over_time.hpp"
#include "flowtime/network.hpp"
#include "flowtime/scheduling_cost.hpp"

namespace flowtime {

// Static expansion of a network over a time grid. Layer i sits at time
// i*step; entering an arc at layer i means entering during [i*step,
// (i+1)*step). Arc "delays" of the expanded network carry costs: commute
// cost on movement arcs, waiting cost on hold arcs, and the exact average
// scheduling cost over the step on the supersink arcs, so that any discrete
// flow maps to a continuous flow of identical cost.
class TimeExpandedGraph {
 public:
  TimeExpandedGraph(const Network& net, const SchedulingCost& cost, const Rational& step,
                    const Rational& window_lo, const Rational& window_hi);

  const Network& graph() const { return graph_; }
  const Rational& step() const { return step_; }
  const Rational& window_lo() const { return window_lo_; }
  const Rational& window_hi() const { return window_hi_; }
  long layer_count() const { return layer_count_; }

 private:
  Network graph_;
  Rational step_;
  Rational window_lo_, window_hi_;
  long layer_count_;
};

struct DiscreteSolveResult {
  Rational cost;
  Rational routed;  // equals the demand when feasible
};

// Exact minimum-cost routing of the demand through the expanded graph;
// throws demand_infeasible_error when the window cannot carry it.
DiscreteSolveResult discrete_solve(const TimeExpandedGraph& teg, const Rational& demand);

// Maximum flow through the expanded graph (used by the deadline checks).
Rational discrete_max_flow(const TimeExpandedGraph& teg);

struct OracleLevel {
  Rational step;
  Rational discrete_cost;
  Rational gap;  // discrete minus continuous
};

struct OracleReport {
  Rational continuous_cost;
  Rational window_lo, window_hi;
  std::vector<OracleLevel> levels;
  bool dominance_holds = false;    // every discrete cost >= continuous cost
  bool gaps_nonincreasing = false;  // finer grids never widen the gap
};

// Runs the discrete oracle at each step size (given coarse to fine) against
// the continuous solution. The window covers all solution breakpoints with
// the largest stage delay plus one unit of margin on each side.
OracleReport run_discrete_oracle(const Network& net, const SchedulingCost& cost,
                                 const FlowOverTime& flow, const PathSchedule& schedule,
                                 const Rational& continuous_cost,
                                 const std::vector<Rational>& steps);

struct DeadlineCheck {
  Rational deadline;
  Rational continuous_amount;
  Rational discrete_max;
};

// Earliest-arrival cross-check: for integer deadlines, the amount the
// continuous solution lands by each deadline must equal the discrete
// maximum flow achievable in the same departure window. Requires the
// departure window start (-horizon/alpha) to be an integer; returns nullopt
// otherwise.
std::optional<std::vector<DeadlineCheck>> earliest_arrival_deadline_checks(
    const Network& net, const SchedulingCost& cost, const FlowOverTime& flow);

}  // namespace flowtime

#endif  // FLOWTIME_TIME_EXPANDED_HPP
