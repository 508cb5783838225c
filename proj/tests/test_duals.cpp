#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flowtime/duals.hpp"
#include "flowtime/errors.hpp"
#include "support/instances.hpp"

using namespace flowtime;
using namespace flowtime::testing;

namespace {

SchedulingCost standard_half_two() {
  return SchedulingCost::standard(1, Rational(1, 2), ExtendedRational(2));
}

// Flat-bottomed cost: 0 on [-2, 2], unit slopes outside.
SchedulingCost flat_bottom() {
  PiecewiseLinear rho = PiecewiseLinear::make(
      {Rational(-2), Rational(2)},
      {Segment::line(-1, -2), Segment::line(0, 0), Segment::line(1, -2)},
      {ExtendedRational(0), ExtendedRational(0)});
  return SchedulingCost(rho, Rational(1));
}

struct Solved {
  SspDecomposition decomp;
  PathSchedule schedule;
  FlowOverTime flow;
  DualCertificate certificate;
  TollSchedule tolls;
};

Solved solve_with_horizon(const Network& net, const SchedulingCost& cost,
                          const Rational& horizon) {
  SspDecomposition decomp(net);
  PathSchedule schedule = path_schedule(decomp, cost, horizon);
  FlowOverTime flow = assemble(decomp, schedule);
  DualCertificate certificate = build_potentials(decomp, cost, horizon);
  TollSchedule tolls = build_tolls(certificate, net);
  return {std::move(decomp), std::move(schedule), std::move(flow), std::move(certificate),
          std::move(tolls)};
}

Solved solve_with_demand(const Network& net, const SchedulingCost& cost,
                         const Rational& demand) {
  SspDecomposition decomp(net);
  PathSchedule schedule = schedule_for_demand(decomp, cost, demand);
  FlowOverTime flow = assemble(decomp, schedule);
  DualCertificate certificate = build_potentials(decomp, cost, schedule.horizon());
  TollSchedule tolls = build_tolls(certificate, net);
  return {std::move(decomp), std::move(schedule), std::move(flow), std::move(certificate),
          std::move(tolls)};
}

}  // namespace

TEST_CASE("figure-one potentials at hand-traced points") {
  Network net = figure_one();
  SchedulingCost cost = standard_half_two();
  Solved s = solve_with_horizon(net, cost, Rational(2));
  NodeId a = *net.find_node("a");

  CHECK(s.certificate.potential(net.source()).is_identically_zero());
  // sink pinned to (2 - rho)^+
  CHECK(s.certificate.potential(net.sink()).value(Rational(0)) == ExtendedRational(2));
  CHECK(s.certificate.potential(net.sink()).value(Rational(1)) == ExtendedRational(0));
  CHECK(s.certificate.potential(net.sink()).value(Rational(-2)) == ExtendedRational(1));
  // middle node: 1 - rho(theta + 1) inside the two-path region, 0 outside
  CHECK(s.certificate.potential(a).value(Rational(-2)) ==
        ExtendedRational(Rational(1, 2)));
  CHECK(s.certificate.potential(a).value(Rational(-3)) == ExtendedRational(0));
  CHECK(s.certificate.potential(a).value(Rational(0)) == ExtendedRational(0));
  CHECK(s.certificate.potential(a).value(Rational(-1)) == ExtendedRational(1));
}

TEST_CASE("figure-one tolls") {
  Network net = figure_one();
  SchedulingCost cost = standard_half_two();
  Solved s = solve_with_horizon(net, cost, Rational(2));
  ArcId f = *net.find_arc("f"), g = *net.find_arc("g");

  // the slow wide arc never needs a toll here
  CHECK(s.tolls.toll(f).is_identically_zero());
  // the fast narrow arc is priced while it is saturated
  CHECK(s.tolls.toll(g).value(Rational(-2)) == ExtendedRational(Rational(1, 2)));
  CHECK(s.tolls.toll(g).value(Rational(0)) == ExtendedRational(2));
  CHECK(s.tolls.toll(g).value(Rational(5)) == ExtendedRational(0));
  // tolls are nonnegative with compact support
  for (int a = 0; a < net.arc_count(); ++a) {
    const PiecewiseLinear& toll = s.tolls.toll(a);
    CHECK(toll.segments().front().is_zero());
    CHECK(toll.segments().back().is_zero());
    for (const ExtendedRational& v : toll.knot_values())
      CHECK(!(v < ExtendedRational(0)));
    CHECK(!(s.tolls.total(a).sign() < 0));
  }
}

TEST_CASE("certificate verifies and the duality gap vanishes") {
  Network net = figure_one();
  SchedulingCost cost = standard_half_two();
  for (Rational horizon : {Rational(1), Rational(2), Rational(7, 3), Rational(0)}) {
    Solved s = solve_with_horizon(net, cost, horizon);
    CertificateReport report =
        verify_certificate(s.flow, s.certificate, cost, &s.decomp);
    CHECK(report.all_hold());
    CHECK(duality_gap(s.flow, s.certificate, s.tolls, cost, &s.schedule).is_zero());
  }
}

TEST_CASE("suboptimal flows have a positive gap") {
  // Push the whole demand through the slow path only: strictly worse.
  Network net = figure_one();
  SchedulingCost cost = standard_half_two();
  Solved good = solve_with_demand(net, cost, Rational(1));

  // hand-build a flow moving the same value entirely along e+f
  ArcId e = *net.find_arc("e"), f = *net.find_arc("f");
  std::vector<PiecewiseLinear> rates(net.arc_count());
  PiecewiseLinear window = PiecewiseLinear::make(
      {Rational(-1), Rational(0)},
      {Segment::line(0, 0), Segment::line(0, 1), Segment::line(0, 0)},
      {ExtendedRational(1), ExtendedRational(1)});
  rates[e] = window;
  rates[f] = window;
  FlowOverTime detour(net, std::move(rates), Rational(1), good.flow.horizon());
  Rational good_cost = primal_cost(good.flow, cost, &good.schedule);
  Rational detour_cost = primal_cost(detour, cost);
  CHECK(good_cost < detour_cost);
  Rational gap = duality_gap(detour, good.certificate, good.tolls, cost);
  CHECK(gap.sign() > 0);
}

TEST_CASE("flat-bottom cost: interpolated schedule still certifies") {
  Network net = figure_one();
  SchedulingCost cost = flat_bottom();
  Solved s = solve_with_demand(net, cost, Rational(8));
  CHECK(s.schedule.horizon() == Rational(1));
  CHECK(s.schedule.delta() == Rational(1, 2));
  CHECK(primal_cost(s.flow, cost, &s.schedule) == Rational(3));

  CertificateReport report = verify_certificate(s.flow, s.certificate, cost, &s.decomp);
  CHECK(report.all_hold());
  CHECK(duality_gap(s.flow, s.certificate, s.tolls, cost, &s.schedule).is_zero());

  // both sink arcs carry flow on [-2, 0]; the fast one is tolled by exactly
  // the commute difference there
  ArcId f = *net.find_arc("f"), g = *net.find_arc("g");
  for (Rational theta : {Rational(-2), Rational(-1), Rational(-1, 2), Rational(0)}) {
    CHECK(s.flow.rate(f).value(theta) == ExtendedRational(1));
    CHECK(s.flow.rate(g).value(theta) == ExtendedRational(1));
    ExtendedRational toll_gap = s.tolls.toll(g).value(theta) - s.tolls.toll(f).value(theta);
    CHECK(toll_gap == ExtendedRational(1));
  }
  CHECK(s.tolls.toll(f).is_identically_zero());
}

TEST_CASE("corrupted potentials are caught with witnesses") {
  Network net = figure_one();
  SchedulingCost cost = standard_half_two();
  Solved s = solve_with_horizon(net, cost, Rational(2));

  NodeId a = *net.find_node("a");
  std::vector<PiecewiseLinear> bumped = s.certificate.potentials();
  bumped[a] = bumped[a] + PiecewiseLinear::constant(ExtendedRational(Rational(1, 7)));
  DualCertificate corrupted(net, std::move(bumped), s.certificate.horizon(),
                            s.certificate.alpha());
  CertificateReport report = verify_certificate(s.flow, corrupted, cost, &s.decomp);
  CHECK(!report.all_hold());
  CHECK(!report.witnesses.empty());
}

TEST_CASE("arrivals beyond the horizon fail the sink condition") {
  Network net = single_arc(Rational(1), Rational(0));
  SchedulingCost cost = standard_half_two();
  Solved s = solve_with_horizon(net, cost, Rational(1));
  // a flow that keeps sending until time 3, where rho(3) = 6 > 1
  std::vector<PiecewiseLinear> rates(net.arc_count());
  rates[0] = PiecewiseLinear::make(
      {Rational(-2), Rational(3)},
      {Segment::line(0, 0), Segment::line(0, 1), Segment::line(0, 0)},
      {ExtendedRational(1), ExtendedRational(1)});
  FlowOverTime late(net, std::move(rates), Rational(5), Rational(1));
  CertificateReport report = verify_certificate(late, s.certificate, cost);
  CHECK(!report.sink_pinned);
  CHECK(!report.witnesses.empty());
}

TEST_CASE("equilibrium audit on the worked instances") {
  Network net = figure_one();
  SchedulingCost cost = standard_half_two();
  Solved s = solve_with_horizon(net, cost, Rational(2));
  EquilibriumReport eq =
      equilibrium_check(s.flow, s.certificate, s.tolls, cost, s.schedule, 48, 7);
  CHECK(eq.lower_bound_holds);
  CHECK(eq.tight_paths_exact);
  CHECK(eq.options_checked > 0);
  CHECK(eq.tight_paths_checked > 0);
}

TEST_CASE("randomized instances: certificates, gaps and equilibria") {
  InstanceGenerator gen(71);
  for (int round = 0; round < 15; ++round) {
    GeneratedInstance inst = gen.next();
    SchedulingCost cost = SchedulingCost::standard(inst.alpha, inst.beta, inst.gamma);
    Solved s = solve_with_demand(inst.network, cost, inst.demand);
    CertificateReport report = verify_certificate(s.flow, s.certificate, cost, &s.decomp);
    CHECK(report.all_hold());
    CHECK(duality_gap(s.flow, s.certificate, s.tolls, cost, &s.schedule).is_zero());
    for (int a = 0; a < inst.network.arc_count(); ++a)
      CHECK(!(s.tolls.total(a).sign() < 0));
    EquilibriumReport eq =
        equilibrium_check(s.flow, s.certificate, s.tolls, cost, s.schedule, 8, round);
    CHECK(eq.all_hold());
  }
}
