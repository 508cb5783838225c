#include "flowtime/flow_over_time.hpp"

#include <algorithm>

#include "flowtime/errors.hpp"

namespace flowtime {

namespace {

struct WindowContribution {
  Rational lo, hi;
  Rational amount;  // signed
};

// Piecewise-constant superposition of closed-interval contributions, with
// exact point values at the breakpoints.
PiecewiseLinear superpose(const std::vector<WindowContribution>& windows) {
  std::vector<Rational> cuts;
  for (const auto& w : windows) {
    cuts.push_back(w.lo);
    cuts.push_back(w.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  if (cuts.empty()) return PiecewiseLinear();

  PiecewiseLinear::Builder bld;
  bld.segment(Segment::line(0, 0));
  for (size_t i = 0; i < cuts.size(); ++i) {
    Rational at = 0;
    for (const auto& w : windows)
      if (w.lo <= cuts[i] && cuts[i] <= w.hi) at += w.amount;
    bld.knot(cuts[i], ExtendedRational(at));
    Rational cell = 0;
    if (i + 1 < cuts.size()) {
      for (const auto& w : windows)
        if (w.lo <= cuts[i] && cuts[i + 1] <= w.hi) cell += w.amount;
    }
    bld.segment(Segment::line(0, cell));
  }
  return bld.finish();
}

}  // namespace

FlowOverTime::FlowOverTime(const Network& net, std::vector<PiecewiseLinear> rates,
                           Rational value, Rational horizon)
    : net_(net), rates_(std::move(rates)), value_(std::move(value)),
      horizon_(std::move(horizon)) {
  if (static_cast<int>(rates_.size()) != net_.arc_count())
    throw input_error("rate vector size does not match arc count");
  for (int a = 0; a < net_.arc_count(); ++a) {
    const PiecewiseLinear& f = rates_[a];
    for (const Segment& s : f.segments()) {
      if (!s.is_linear() || !s.slope.is_zero())
        throw internal_error("arc rate is not piecewise constant");
      if (s.intercept.sign() < 0 || net_.arc(a).capacity < s.intercept)
        throw internal_error("arc rate leaves [0, capacity] on arc '" +
                             net_.arc(a).name + "'");
    }
    for (const ExtendedRational& v : f.knot_values()) {
      if (!v.is_finite() || v.finite().sign() < 0 ||
          net_.arc(a).capacity < v.finite())
        throw internal_error("arc rate leaves [0, capacity] on arc '" +
                             net_.arc(a).name + "'");
    }
    f.support_bounds();  // compact support or throw
  }
  for (NodeId v = 0; v < net_.node_count(); ++v) {
    if (v == net_.source() || v == net_.sink()) continue;
    if (!net_inflow(v).is_identically_zero())
      throw internal_error("flow over time not conserved at node '" +
                           net_.node_name(v) + "'");
  }
}

PiecewiseLinear FlowOverTime::net_inflow(NodeId v) const {
  PiecewiseLinear total;
  for (int a = 0; a < net_.arc_count(); ++a) {
    const Network::Arc& arc = net_.arc(a);
    if (arc.head == v) total = total + rates_[a].shifted_arg(-arc.delay);
    if (arc.tail == v) total = total - rates_[a];
  }
  return total;
}

Rational FlowOverTime::arrived_by(const Rational& deadline) const {
  PiecewiseLinear inflow = net_inflow(net_.sink());
  auto support = inflow.support_bounds();
  if (!support) return 0;
  Rational lo = min(support->first, deadline);
  return inflow.integral(lo, max(lo, min(support->second, deadline)));
}

FlowOverTime assemble(const SspDecomposition& decomp, const PathSchedule& schedule) {
  const Network& net = decomp.network();
  if (static_cast<int>(schedule.windows().size()) != decomp.path_count())
    throw input_error("schedule does not match the decomposition");

  std::vector<std::vector<WindowContribution>> per_arc(net.arc_count());
  for (int j = 0; j < decomp.path_count(); ++j) {
    const PathWindow& window = schedule.windows()[j];
    if (window.departures.empty()) continue;
    Rational reach_time = 0;  // travel time from the source along the path
    for (const ResidualArc& arc : decomp.paths()[j].arcs) {
      // Contributions attach at the entry time of the original arc: the
      // current position for forward use, the landing time for backward use.
      Rational shift = arc.forward ? reach_time : reach_time + arc.delay;
      Rational amount = arc.forward ? window.rate : -window.rate;
      for (const auto& iv : window.departures.intervals())
        per_arc[arc.orig_arc].push_back({iv.lo + shift, iv.hi + shift, amount});
      reach_time += arc.delay;
    }
  }

  std::vector<PiecewiseLinear> rates;
  rates.reserve(net.arc_count());
  for (int a = 0; a < net.arc_count(); ++a) rates.push_back(superpose(per_arc[a]));
  return FlowOverTime(net, std::move(rates), schedule.value(), schedule.horizon());
}

Rational primal_cost(const FlowOverTime& flow, const SchedulingCost& cost,
                     const PathSchedule* schedule) {
  const Network& net = flow.network();

  // Route (a): commute cost per arc plus scheduling cost of the arrivals.
  Rational arc_route = 0;
  for (int a = 0; a < net.arc_count(); ++a) {
    auto support = flow.rate(a).support_bounds();
    if (!support) continue;
    arc_route += cost.alpha() * net.arc(a).delay *
                 flow.rate(a).integral(support->first, support->second);
  }
  PiecewiseLinear arrivals = flow.net_inflow(net.sink());
  auto arrival_support = arrivals.support_bounds();
  if (arrival_support)
    arc_route += cost.rho().integral_product(arrivals, arrival_support->first,
                                             arrival_support->second);

  // Route (b): per-path closed form over the departure windows.
  if (schedule != nullptr) {
    Rational path_route = 0;
    for (const PathWindow& w : schedule->windows()) {
      for (const auto& iv : w.departures.intervals()) {
        Rational length = iv.hi - iv.lo;
        path_route += w.rate * (cost.alpha() * w.stage_delay * length +
                                cost.rho().integral(iv.lo + w.stage_delay,
                                                    iv.hi + w.stage_delay));
      }
    }
    if (path_route != arc_route)
      throw internal_error("primal cost disagreement between arc and path routes");
  }
  return arc_route;
}

int direct_stage_index(const SspDecomposition& decomp, const SchedulingCost& cost,
                       const Rational& horizon, NodeId node, const Rational& theta) {
  int best = 0;
  for (int j = 1; j <= decomp.path_count(); ++j) {
    const ExtendedRational& to_sink = decomp.dist_to_sink(j - 1, node);
    if (!to_sink.is_finite()) continue;
    ExtendedRational travel_cost =
        ExtendedRational(cost.alpha() * decomp.paths()[j - 1].delay) +
        cost.value(theta + to_sink.finite());
    if (travel_cost <= ExtendedRational(horizon)) best = j;
  }
  return best;
}

std::optional<Theorem1Witness> check_stage_characterization(
    const SspDecomposition& decomp, const SchedulingCost& cost, const FlowOverTime& flow,
    const std::vector<Rational>& sample_times) {
  const Network& net = decomp.network();
  for (int a = 0; a < net.arc_count(); ++a) {
    NodeId tail = net.arc(a).tail;
    std::vector<Rational> probes = flow.rate(a).knots();
    probes.insert(probes.end(), sample_times.begin(), sample_times.end());
    for (const Rational& theta : probes) {
      int stage = direct_stage_index(decomp, cost, flow.horizon(), tail, theta);
      Rational expected = decomp.cumulative_flow(stage).on_arc(a);
      if (flow.rate(a).value(theta) != ExtendedRational(expected))
        return Theorem1Witness{a, theta};
    }
  }
  return std::nullopt;
}

}  // namespace flowtime
