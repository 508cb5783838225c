#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flowtime/duals.hpp"
#include "flowtime/errors.hpp"
#include "flowtime/time_expanded.hpp"
#include "support/instances.hpp"

using namespace flowtime;
using namespace flowtime::testing;

namespace {

SchedulingCost standard_half_two() {
  return SchedulingCost::standard(1, Rational(1, 2), ExtendedRational(2));
}

std::vector<Rational> halving_steps() {
  return {Rational(1), Rational(1, 2), Rational(1, 4)};
}

}  // namespace

TEST_CASE("expansion of a single delayed arc") {
  Network net = single_arc(Rational(1), Rational(1));
  SchedulingCost cost = standard_half_two();
  TimeExpandedGraph teg(net, cost, Rational(1), Rational(-2), Rational(1));
  CHECK(teg.layer_count() == 4);
  // 4 copies of each of the 2 nodes plus the two super terminals
  CHECK(teg.graph().node_count() == 10);
  int movement = 0, waiting = 0, source_side = 0, sink_side = 0;
  for (const Network::Arc& arc : teg.graph().arcs()) {
    switch (arc.name[0]) {
      case 'm': ++movement; break;
      case 'w': ++waiting; break;
      case 's': ++source_side; break;
      case 't': ++sink_side; break;
      default: FAIL("unexpected arc kind");
    }
  }
  CHECK(movement == 3);  // entering at -2,-1,0 lands inside the window
  CHECK(waiting == 6);
  CHECK(source_side == 4);
  CHECK(sink_side == 4);
  // movement arcs carry the commute cost and the scaled capacity
  auto m0 = teg.graph().find_arc("m:e:0");
  REQUIRE(m0.has_value());
  CHECK(teg.graph().arc(*m0).capacity == Rational(1));
  CHECK(teg.graph().arc(*m0).delay == Rational(1));
}

TEST_CASE("zero-delay arcs stay within a layer") {
  Network net = figure_one();
  SchedulingCost cost = standard_half_two();
  TimeExpandedGraph teg(net, cost, Rational(1), Rational(0), Rational(1));
  auto m = teg.graph().find_arc("m:e:0");
  REQUIRE(m.has_value());
  const Network::Arc& arc = teg.graph().arc(*m);
  CHECK(teg.graph().node_name(arc.tail) == "s@0");
  CHECK(teg.graph().node_name(arc.head) == "a@0");
}

TEST_CASE("step must divide all delays") {
  Network net = single_arc(Rational(1), Rational(1, 2));
  SchedulingCost cost = standard_half_two();
  CHECK_NOTHROW(TimeExpandedGraph(net, cost, Rational(1, 2), Rational(-1), Rational(1)));
  CHECK_THROWS_AS(TimeExpandedGraph(net, cost, Rational(1, 3), Rational(-1), Rational(1)),
                  input_error);
}

TEST_CASE("empty window carries nothing") {
  Network net = single_arc(Rational(1), Rational(0));
  SchedulingCost cost = standard_half_two();
  TimeExpandedGraph teg(net, cost, Rational(1), Rational(1), Rational(0));
  CHECK(teg.layer_count() == 0);
  CHECK(discrete_max_flow(teg).is_zero());
  CHECK(discrete_solve(teg, Rational(0)).cost.is_zero());
  CHECK_THROWS_AS(discrete_solve(teg, Rational(1)), demand_infeasible_error);
}

TEST_CASE("discrete cost dominates the continuous optimum and converges") {
  Network net = single_arc(Rational(1), Rational(0));
  SchedulingCost cost = standard_half_two();
  SspDecomposition decomp(net);
  PathSchedule schedule = schedule_for_demand(decomp, cost, Rational(5, 2));
  FlowOverTime flow = assemble(decomp, schedule);
  Rational continuous = primal_cost(flow, cost, &schedule);
  CHECK(continuous == Rational(5, 4));

  OracleReport report =
      run_discrete_oracle(net, cost, flow, schedule, continuous, halving_steps());
  REQUIRE(report.levels.size() == 3);
  CHECK(report.dominance_holds);
  CHECK(report.gaps_nonincreasing);
  CHECK(report.levels[0].gap.sign() >= 0);
  CHECK(report.levels[2].gap < report.levels[0].gap);  // strictly better here
}

TEST_CASE("figure-one oracle run") {
  Network net = figure_one();
  SchedulingCost cost = standard_half_two();
  SspDecomposition decomp(net);
  PathSchedule schedule = schedule_for_demand(decomp, cost, Rational(15, 2));
  FlowOverTime flow = assemble(decomp, schedule);
  Rational continuous = primal_cost(flow, cost, &schedule);
  OracleReport report =
      run_discrete_oracle(net, cost, flow, schedule, continuous, halving_steps());
  CHECK(report.dominance_holds);
  CHECK(report.gaps_nonincreasing);
}

TEST_CASE("zero demand solves trivially at every level") {
  Network net = figure_one();
  SchedulingCost cost = standard_half_two();
  SspDecomposition decomp(net);
  PathSchedule schedule = schedule_for_demand(decomp, cost, Rational(0));
  FlowOverTime flow = assemble(decomp, schedule);
  OracleReport report =
      run_discrete_oracle(net, cost, flow, schedule, Rational(0), halving_steps());
  for (const OracleLevel& level : report.levels) CHECK(level.discrete_cost.is_zero());
  CHECK(report.dominance_holds);
}

TEST_CASE("earliest-arrival deadlines match the discrete maxima") {
  Network net = figure_one();
  SchedulingCost eaf = SchedulingCost::earliest_arrival(1);
  SspDecomposition decomp(net);
  PathSchedule schedule = path_schedule(decomp, eaf, Rational(3));
  FlowOverTime flow = assemble(decomp, schedule);
  CHECK(flow.value() == Rational(5));

  auto checks = earliest_arrival_deadline_checks(net, eaf, flow);
  REQUIRE(checks.has_value());
  REQUIRE(checks->size() == 4);  // deadlines -3..0
  // amounts arrived by -3,-2,-1,0: 0, 1, 3, 5
  CHECK((*checks)[0].continuous_amount.is_zero());
  CHECK((*checks)[1].continuous_amount == Rational(1));
  CHECK((*checks)[2].continuous_amount == Rational(3));
  CHECK((*checks)[3].continuous_amount == Rational(5));
  for (const DeadlineCheck& check : *checks)
    CHECK(check.continuous_amount == check.discrete_max);
}

TEST_CASE("eaf oracle also dominates on the eaf cost itself") {
  Network net = figure_one();
  SchedulingCost eaf = SchedulingCost::earliest_arrival(1);
  SspDecomposition decomp(net);
  PathSchedule schedule = path_schedule(decomp, eaf, Rational(2));
  FlowOverTime flow = assemble(decomp, schedule);
  Rational continuous = primal_cost(flow, eaf, &schedule);
  OracleReport report =
      run_discrete_oracle(net, eaf, flow, schedule, continuous, halving_steps());
  CHECK(report.dominance_holds);
  CHECK(report.gaps_nonincreasing);
}

TEST_CASE("randomized dominance on small instances") {
  InstanceGenerator gen(83);
  for (int round = 0; round < 6; ++round) {
    GeneratedInstance inst = gen.next();
    SchedulingCost cost = SchedulingCost::standard(inst.alpha, inst.beta, inst.gamma);
    SspDecomposition decomp(inst.network);
    Rational demand = min(inst.demand, decomp.max_flow_value());
    PathSchedule schedule = schedule_for_demand(decomp, cost, demand);
    FlowOverTime flow = assemble(decomp, schedule);
    Rational continuous = primal_cost(flow, cost, &schedule);
    OracleReport report = run_discrete_oracle(inst.network, cost, flow, schedule,
                                              continuous, {Rational(1), Rational(1, 2)});
    CHECK(report.dominance_holds);
    CHECK(report.gaps_nonincreasing);
  }
}
