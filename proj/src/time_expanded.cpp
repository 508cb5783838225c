#include "flowtime/time_expanded.hpp"

#include <algorithm>
#include <string>

#include "flowtime/errors.hpp"
#include "flowtime/ssp.hpp"

namespace flowtime {

namespace {

long grid_floor(const Rational& x, const Rational& step) {
  return static_cast<long>((x / step).floor().convert_to<long long>());
}

long grid_ceil(const Rational& x, const Rational& step) {
  return static_cast<long>((x / step).ceil().convert_to<long long>());
}

// Exact average of rho over [lo, hi], or nullopt when rho is infinite on a
// positive-measure part of the step.
std::optional<Rational> step_average_cost(const SchedulingCost& cost, const Rational& lo,
                                          const Rational& hi) {
  const PiecewiseLinear& rho = cost.rho();
  const auto& knots = rho.knots();
  size_t n = knots.size();
  for (size_t i = 0; i <= n; ++i) {
    if (rho.segments()[i].is_linear()) continue;
    Rational cell_lo = i == 0 ? lo : max(lo, knots[i - 1]);
    Rational cell_hi = i == n ? hi : min(hi, knots[i]);
    if (cell_lo < cell_hi) return std::nullopt;
  }
  return rho.integral(lo, hi) / (hi - lo);
}

Network build_expanded(const Network& net, const SchedulingCost& cost, const Rational& step,
                       long lo_idx, long hi_idx) {
  if (step.sign() <= 0) throw input_error("time step must be positive");
  std::vector<long> delay_steps(net.arc_count());
  for (int a = 0; a < net.arc_count(); ++a) {
    Rational ratio = net.arc(a).delay / step;
    if (!ratio.is_integer())
      throw input_error("time step does not divide the delay of arc '" +
                        net.arc(a).name + "'");
    delay_steps[a] = static_cast<long>(ratio.numerator().convert_to<long long>());
  }
  long layers = hi_idx >= lo_idx ? hi_idx - lo_idx + 1 : 0;

  std::vector<std::string> names;
  std::vector<Network::Arc> arcs;
  int n = net.node_count();
  auto layer_node = [&](NodeId v, long i) -> NodeId {
    return static_cast<NodeId>((i - lo_idx) * n + v);
  };
  for (long i = lo_idx; i <= hi_idx; ++i)
    for (NodeId v = 0; v < n; ++v)
      names.push_back(net.node_name(v) + "@" + std::to_string(i));
  NodeId super_source = static_cast<NodeId>(names.size());
  names.push_back("origin");
  NodeId super_sink = static_cast<NodeId>(names.size());
  names.push_back("collector");

  if (layers > 0) {
    // A safe stand-in for infinite capacity: more than the movement arcs
    // can admit within the window.
    Rational big = 1;
    for (int a = 0; a < net.arc_count(); ++a)
      big += net.arc(a).capacity * step * Rational(layers);

    for (long i = lo_idx; i <= hi_idx; ++i) {
      for (int a = 0; a < net.arc_count(); ++a) {
        long target = i + delay_steps[a];
        if (target > hi_idx) continue;
        arcs.push_back({"m:" + net.arc(a).name + ":" + std::to_string(i),
                        layer_node(net.arc(a).tail, i), layer_node(net.arc(a).head, target),
                        net.arc(a).capacity * step, cost.alpha() * net.arc(a).delay});
      }
      for (NodeId v = 0; v < n; ++v) {
        if (i < hi_idx)
          arcs.push_back({"w:" + net.node_name(v) + ":" + std::to_string(i),
                          layer_node(v, i), layer_node(v, i + 1), big,
                          cost.alpha() * step});
      }
      arcs.push_back({"s:" + std::to_string(i), super_source,
                      layer_node(net.source(), i), big, Rational(0)});
      Rational t_lo = step * Rational(i);
      auto avg = step_average_cost(cost, t_lo, t_lo + step);
      if (avg)
        arcs.push_back({"t:" + std::to_string(i), layer_node(net.sink(), i), super_sink,
                        big, *avg});
    }
  }
  return Network(std::move(names), std::move(arcs), super_source, super_sink);
}

}  // namespace

TimeExpandedGraph::TimeExpandedGraph(const Network& net, const SchedulingCost& cost,
                                     const Rational& step, const Rational& window_lo,
                                     const Rational& window_hi)
    : graph_(build_expanded(net, cost, step, grid_floor(window_lo, step),
                            grid_ceil(window_hi, step))),
      step_(step),
      window_lo_(step * Rational(grid_floor(window_lo, step))),
      window_hi_(step * Rational(grid_ceil(window_hi, step))) {
  long lo_idx = grid_floor(window_lo, step);
  long hi_idx = grid_ceil(window_hi, step);
  layer_count_ = hi_idx >= lo_idx ? hi_idx - lo_idx + 1 : 0;
}

DiscreteSolveResult discrete_solve(const TimeExpandedGraph& teg, const Rational& demand) {
  if (demand.sign() < 0) throw input_error("demand must be nonnegative");
  MinCostFlowResult r = min_cost_flow(teg.graph(), demand);
  if (r.amount < demand)
    throw demand_infeasible_error("window carries only " + r.amount.str() +
                                  " of the requested " + demand.str());
  return {r.cost, r.amount};
}

Rational discrete_max_flow(const TimeExpandedGraph& teg) {
  return min_cost_flow(teg.graph(), std::nullopt).amount;
}

OracleReport run_discrete_oracle(const Network& net, const SchedulingCost& cost,
                                 const FlowOverTime& flow, const PathSchedule& schedule,
                                 const Rational& continuous_cost,
                                 const std::vector<Rational>& steps) {
  OracleReport report;
  report.continuous_cost = continuous_cost;

  // Window from the solution breakpoints, padded by the largest stage delay
  // plus one unit on each side.
  Rational lo = 0, hi = 0;
  bool any = false;
  for (int a = 0; a < net.arc_count(); ++a) {
    for (const Rational& k : flow.rate(a).knots()) {
      lo = any ? min(lo, k) : k;
      hi = any ? max(hi, k) : k;
      any = true;
    }
  }
  Rational max_delay = 0;
  for (const PathWindow& w : schedule.windows())
    if (!w.departures.empty()) max_delay = max(max_delay, w.stage_delay);
  if (!any) {
    lo = -1;
    hi = 1;
  }
  report.window_lo = lo - max_delay - 1;
  report.window_hi = hi + max_delay + 1;

  report.dominance_holds = true;
  report.gaps_nonincreasing = true;
  for (const Rational& step : steps) {
    TimeExpandedGraph teg(net, cost, step, report.window_lo, report.window_hi);
    DiscreteSolveResult solved = discrete_solve(teg, flow.value());
    OracleLevel level{step, solved.cost, solved.cost - continuous_cost};
    if (level.gap.sign() < 0) report.dominance_holds = false;
    if (!report.levels.empty() && report.levels.back().gap < level.gap)
      report.gaps_nonincreasing = false;
    report.levels.push_back(std::move(level));
  }
  return report;
}

std::optional<std::vector<DeadlineCheck>> earliest_arrival_deadline_checks(
    const Network& net, const SchedulingCost& cost, const FlowOverTime& flow) {
  Rational start = -(flow.horizon() / cost.alpha());
  if (!start.is_integer()) return std::nullopt;
  long first = static_cast<long>(start.numerator().convert_to<long long>());
  std::vector<DeadlineCheck> checks;
  for (long deadline = first; deadline <= 0; ++deadline) {
    DeadlineCheck check;
    check.deadline = Rational(deadline);
    check.continuous_amount = flow.arrived_by(check.deadline);
    if (deadline == first) {
      check.discrete_max = 0;
    } else {
      TimeExpandedGraph teg(net, cost, Rational(1), start, Rational(deadline - 1));
      check.discrete_max = discrete_max_flow(teg);
    }
    checks.push_back(std::move(check));
  }
  return checks;
}

}  // namespace flowtime
