#include "flowtime/duals.hpp"

#include <algorithm>
#include <random>

#include "flowtime/errors.hpp"

namespace flowtime {

namespace {

Rational probe_point(const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
  if (lo && hi) return (*lo + *hi) / 2;
  if (lo) return *lo + 1;
  if (hi) return *hi - 1;
  return 0;
}

// Append f restricted to the open cell (lo, hi): the covering segments and
// strictly interior knots. Boundary knots belong to the caller.
void append_restricted(PiecewiseLinear::Builder& bld, const PiecewiseLinear& f,
                       const std::optional<Rational>& lo,
                       const std::optional<Rational>& hi) {
  const auto& knots = f.knots();
  size_t first =
      lo ? static_cast<size_t>(std::upper_bound(knots.begin(), knots.end(), *lo) -
                               knots.begin())
         : 0;
  bld.segment(f.segments()[first]);
  for (size_t i = first; i < knots.size(); ++i) {
    if (hi && !(knots[i] < *hi)) break;
    bld.knot(knots[i], f.knot_values()[i]);
    bld.segment(f.segments()[i + 1]);
  }
}

ExtendedRational sup_on_cell(const Segment& s, const std::optional<Rational>& lo,
                             const std::optional<Rational>& hi) {
  switch (s.kind) {
    case Segment::Kind::PlusInf:
      return ExtendedRational::infinity();
    case Segment::Kind::MinusInf:
      return ExtendedRational::minus_infinity();
    case Segment::Kind::Linear:
      if (s.slope.sign() > 0)
        return hi ? s.at(*hi) : ExtendedRational::infinity();
      if (s.slope.sign() < 0)
        return lo ? s.at(*lo) : ExtendedRational::infinity();
      return ExtendedRational(s.intercept);
  }
  throw internal_error("bad segment kind");
}

ExtendedRational inf_on_cell(const Segment& s, const std::optional<Rational>& lo,
                             const std::optional<Rational>& hi) {
  Segment negated = s;
  if (s.is_linear()) {
    negated.slope = -s.slope;
    negated.intercept = -s.intercept;
  } else {
    negated.kind = s.kind == Segment::Kind::PlusInf ? Segment::Kind::MinusInf
                                                    : Segment::Kind::PlusInf;
  }
  return -sup_on_cell(negated, lo, hi);
}

std::vector<Rational> merged_knot_list(const PiecewiseLinear& a, const PiecewiseLinear& b) {
  std::vector<Rational> cuts;
  cuts.reserve(a.knots().size() + b.knots().size());
  std::merge(a.knots().begin(), a.knots().end(), b.knots().begin(), b.knots().end(),
             std::back_inserter(cuts));
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

const Segment& segment_on_cell(const PiecewiseLinear& f, const std::optional<Rational>& lo) {
  const auto& knots = f.knots();
  size_t idx =
      lo ? static_cast<size_t>(std::upper_bound(knots.begin(), knots.end(), *lo) -
                               knots.begin())
         : 0;
  return f.segments()[idx];
}

}  // namespace

DualCertificate::DualCertificate(const Network& net, std::vector<PiecewiseLinear> potentials,
                                 Rational horizon, Rational alpha)
    : net_(net), potentials_(std::move(potentials)), horizon_(std::move(horizon)),
      alpha_(std::move(alpha)) {
  if (static_cast<int>(potentials_.size()) != net_.node_count())
    throw input_error("potential vector size does not match node count");
}

DualCertificate build_potentials(const SspDecomposition& decomp, const SchedulingCost& cost,
                                 const Rational& horizon) {
  const Network& net = decomp.network();
  const Rational& alpha = cost.alpha();
  std::vector<PiecewiseLinear> potentials;
  potentials.reserve(net.node_count());

  for (NodeId v = 0; v < net.node_count(); ++v) {
    StageIndexFunction stage_of(decomp, cost, horizon, v);

    std::vector<std::optional<PiecewiseLinear>> cache(decomp.path_count() + 1);
    auto stage_formula = [&](int j) -> const PiecewiseLinear& {
      if (!cache[j]) {
        PiecewiseLinear best;  // the zero floor
        const ExtendedRational& to_source = decomp.dist_to_source(j, v);
        if (to_source.is_finite()) {
          PiecewiseLinear back =
              PiecewiseLinear::constant(ExtendedRational(-(alpha * to_source.finite())));
          best = PiecewiseLinear::pointwise_max(best, back);
        }
        const ExtendedRational& to_sink = decomp.dist_to_sink(j, v);
        if (to_sink.is_finite()) {
          PiecewiseLinear ahead =
              PiecewiseLinear::constant(
                  ExtendedRational(horizon - alpha * to_sink.finite())) -
              cost.rho().shifted_arg(to_sink.finite());
          best = PiecewiseLinear::pointwise_max(best, ahead);
        }
        cache[j] = std::move(best);
      }
      return *cache[j];
    };

    std::vector<Rational> cuts = stage_of.boundaries();
    PiecewiseLinear::Builder bld;
    for (size_t i = 0; i <= cuts.size(); ++i) {
      std::optional<Rational> lo =
          i == 0 ? std::nullopt : std::optional<Rational>(cuts[i - 1]);
      std::optional<Rational> hi =
          i == cuts.size() ? std::nullopt : std::optional<Rational>(cuts[i]);
      int stage = stage_of.value_at(probe_point(lo, hi));
      append_restricted(bld, stage_formula(stage), lo, hi);
      if (hi) {
        int point_stage = stage_of.value_at(*hi);
        bld.knot(*hi, stage_formula(point_stage).value(*hi));
      }
    }
    potentials.push_back(bld.finish());
  }

  if (!potentials[net.source()].is_identically_zero())
    throw internal_error("source potential is not identically zero");
  PiecewiseLinear pinned = PiecewiseLinear::pointwise_max(
      PiecewiseLinear::constant(ExtendedRational(horizon)) - cost.rho(), PiecewiseLinear());
  if (!(potentials[net.sink()] == pinned))
    throw internal_error("sink potential does not match the pinned form");

  return DualCertificate(net, std::move(potentials), horizon, alpha);
}

TollSchedule::TollSchedule(const Network& net, std::vector<PiecewiseLinear> tolls)
    : net_(net), tolls_(std::move(tolls)) {
  if (static_cast<int>(tolls_.size()) != net_.arc_count())
    throw input_error("toll vector size does not match arc count");
}

Rational TollSchedule::total(ArcId a) const {
  auto support = tolls_[a].support_bounds();
  if (!support) return 0;
  return tolls_[a].integral(support->first, support->second);
}

TollSchedule build_tolls(const DualCertificate& certificate, const Network& net) {
  std::vector<PiecewiseLinear> tolls;
  tolls.reserve(net.arc_count());
  for (int a = 0; a < net.arc_count(); ++a) {
    const Network::Arc& arc = net.arc(a);
    PiecewiseLinear gap =
        certificate.potential(arc.head).shifted_arg(arc.delay) -
        certificate.potential(arc.tail) -
        PiecewiseLinear::constant(ExtendedRational(certificate.alpha() * arc.delay));
    tolls.push_back(gap.positive_part());
  }
  return TollSchedule(net, std::move(tolls));
}

CertificateReport verify_certificate(const FlowOverTime& flow,
                                     const DualCertificate& certificate,
                                     const SchedulingCost& cost,
                                     const SspDecomposition* decomp) {
  CertificateReport report;
  const Network& net = flow.network();
  const Rational& alpha = certificate.alpha();
  const Rational& horizon = certificate.horizon();

  // Growth condition: potential minus alpha * time is nonincreasing.
  report.slope_bounded = true;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    const PiecewiseLinear& pi = certificate.potential(v);
    if (!pi.is_finite_everywhere()) {
      report.slope_bounded = false;
      report.witnesses.push_back({"slope", net.node_name(v), 0, "potential not finite"});
      continue;
    }
    for (size_t i = 0; i <= pi.knot_count(); ++i) {
      if (pi.segments()[i].slope <= alpha) continue;
      report.slope_bounded = false;
      Rational where = i < pi.knot_count() ? pi.knots()[i]
                                           : (pi.knot_count() ? pi.knots().back() + 1 : 0);
      report.witnesses.push_back(
          {"slope", net.node_name(v), where, "piece slope exceeds alpha"});
    }
    for (size_t i = 0; i < pi.knot_count(); ++i) {
      const Rational& k = pi.knots()[i];
      bool ok = pi.left_limit(k) >= pi.value(k) && pi.value(k) >= pi.right_limit(k);
      if (!ok) {
        report.slope_bounded = false;
        report.witnesses.push_back(
            {"slope", net.node_name(v), k, "potential jumps upward in time"});
      }
    }
  }

  // Residual gap condition, both directions of each arc.
  report.residual_respected = true;
  auto blame = [&](const std::string& cond, const std::string& name, const Rational& t,
                   const std::string& detail, bool& flag) {
    flag = false;
    report.witnesses.push_back({cond, name, t, detail});
  };
  for (int a = 0; a < net.arc_count(); ++a) {
    const Network::Arc& arc = net.arc(a);
    PiecewiseLinear gap = certificate.potential(arc.head).shifted_arg(arc.delay) -
                          certificate.potential(arc.tail) -
                          PiecewiseLinear::constant(ExtendedRational(alpha * arc.delay));
    const PiecewiseLinear& rate = flow.rate(a);
    std::vector<Rational> cuts = merged_knot_list(gap, rate);
    for (size_t i = 0; i <= cuts.size(); ++i) {
      std::optional<Rational> lo =
          i == 0 ? std::nullopt : std::optional<Rational>(cuts[i - 1]);
      std::optional<Rational> hi =
          i == cuts.size() ? std::nullopt : std::optional<Rational>(cuts[i]);
      Rational f_here = segment_on_cell(rate, lo).intercept;
      const Segment& g = segment_on_cell(gap, lo);
      Rational cell_mark = probe_point(lo, hi);
      if (f_here < arc.capacity && sup_on_cell(g, lo, hi) > ExtendedRational(0))
        blame("residual", arc.name, cell_mark, "positive gap on an unsaturated piece",
              report.residual_respected);
      if (f_here.sign() > 0 && inf_on_cell(g, lo, hi) < ExtendedRational(0))
        blame("residual", arc.name, cell_mark, "negative gap on a flow-carrying piece",
              report.residual_respected);
    }
    for (const Rational& point : cuts) {
      Rational f_here = rate.value(point).finite();
      ExtendedRational g_here = gap.value(point);
      if (f_here < arc.capacity && g_here > ExtendedRational(0))
        blame("residual", arc.name, point, "positive gap at an unsaturated instant",
              report.residual_respected);
      if (f_here.sign() > 0 && g_here < ExtendedRational(0))
        blame("residual", arc.name, point, "negative gap at a flow-carrying instant",
              report.residual_respected);
    }
  }

  // Source pinned to zero.
  report.source_zero = certificate.potential(net.source()).is_identically_zero();
  if (!report.source_zero)
    report.witnesses.push_back(
        {"source", net.node_name(net.source()), 0, "source potential not zero"});

  // Sink pinned to (horizon - rho)^+ and arrivals only where rho <= horizon.
  PiecewiseLinear pinned = PiecewiseLinear::pointwise_max(
      PiecewiseLinear::constant(ExtendedRational(horizon)) - cost.rho(), PiecewiseLinear());
  report.sink_pinned = certificate.potential(net.sink()) == pinned;
  if (!report.sink_pinned)
    report.witnesses.push_back(
        {"sink", net.node_name(net.sink()), 0, "sink potential differs from pinned form"});
  PiecewiseLinear arrivals = flow.net_inflow(net.sink());
  std::vector<Rational> cuts = merged_knot_list(cost.rho(), arrivals);
  for (size_t i = 0; i <= cuts.size(); ++i) {
    std::optional<Rational> lo = i == 0 ? std::nullopt : std::optional<Rational>(cuts[i - 1]);
    std::optional<Rational> hi =
        i == cuts.size() ? std::nullopt : std::optional<Rational>(cuts[i]);
    if (segment_on_cell(arrivals, lo).is_zero()) continue;
    if (sup_on_cell(segment_on_cell(cost.rho(), lo), lo, hi) > ExtendedRational(horizon))
      blame("sink", net.node_name(net.sink()), probe_point(lo, hi),
            "arrivals while the scheduling cost exceeds the horizon", report.sink_pinned);
  }
  for (const Rational& point : cuts) {
    if (arrivals.value(point) == ExtendedRational(0)) continue;
    if (cost.value(point) > ExtendedRational(horizon))
      blame("sink", net.node_name(net.sink()), point,
            "arrival instant with scheduling cost beyond the horizon", report.sink_pinned);
  }

  // Optional: recompute the prescription and compare.
  if (decomp != nullptr) {
    DualCertificate rebuilt = build_potentials(*decomp, cost, horizon);
    for (NodeId v = 0; v < net.node_count(); ++v) {
      if (certificate.potential(v) == rebuilt.potential(v)) continue;
      report.prescription_consistent = false;
      report.witnesses.push_back(
          {"prescription", net.node_name(v), 0, "potential differs from the prescription"});
    }
  }

  return report;
}

Rational duality_gap(const FlowOverTime& flow, const DualCertificate& certificate,
                     const TollSchedule& tolls, const SchedulingCost& cost,
                     const PathSchedule* schedule) {
  Rational primal = primal_cost(flow, cost, schedule);
  Rational dual = certificate.horizon() * flow.value();
  for (int a = 0; a < flow.network().arc_count(); ++a)
    dual -= flow.network().arc(a).capacity * tolls.total(a);
  return primal - dual;
}

namespace {

void enumerate_paths_to_sink(const Network& net, NodeId v, std::vector<bool>& used,
                             std::vector<int>& current,
                             std::vector<std::vector<int>>& out) {
  if (v == net.sink()) {
    out.push_back(current);
    return;
  }
  used[v] = true;
  for (int a = 0; a < net.arc_count(); ++a) {
    if (net.arc(a).tail != v || used[net.arc(a).head]) continue;
    current.push_back(a);
    enumerate_paths_to_sink(net, net.arc(a).head, used, current, out);
    current.pop_back();
  }
  used[v] = false;
}

}  // namespace

EquilibriumReport equilibrium_check(const FlowOverTime& flow,
                                    const DualCertificate& certificate,
                                    const TollSchedule& tolls, const SchedulingCost& cost,
                                    const PathSchedule& schedule, int samples,
                                    unsigned long long seed) {
  EquilibriumReport report;
  report.lower_bound_holds = true;
  report.tight_paths_exact = true;
  const Network& net = flow.network();
  const Rational& horizon = certificate.horizon();
  const Rational& alpha = certificate.alpha();

  // Sample departure instants: window endpoints, interiors and outskirts,
  // plus seeded random rationals.
  std::vector<Rational> times;
  for (const PathWindow& w : schedule.windows()) {
    for (const auto& iv : w.departures.intervals()) {
      times.push_back(iv.lo);
      times.push_back(iv.hi);
      times.push_back((iv.lo + iv.hi) / 2);
      times.push_back(iv.lo - Rational(1, 3));
      times.push_back(iv.hi + Rational(1, 2));
    }
  }
  times.push_back(0);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-60, 60);
  std::uniform_int_distribution<int> den(1, 6);
  std::uniform_int_distribution<int> wait_num(0, 3);
  for (int i = 0; i < samples; ++i)
    times.push_back(Rational(num(rng)) / Rational(den(rng)));
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  std::vector<std::vector<std::vector<int>>> paths_from(net.node_count());
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (v == net.sink()) continue;
    std::vector<bool> used(net.node_count(), false);
    std::vector<int> current;
    enumerate_paths_to_sink(net, v, used, current, paths_from[v]);
  }

  auto price_path = [&](NodeId v, const std::vector<int>& path, const Rational& start,
                        const std::vector<Rational>& waits) -> ExtendedRational {
    Rational now = start;
    Rational paid = 0;
    size_t hop = 0;
    for (int a : path) {
      const Network::Arc& arc = net.arc(a);
      Rational wait = hop < waits.size() ? waits[hop] : Rational(0);
      now += wait;
      ExtendedRational toll = tolls.toll(a).value(now);
      if (!toll.is_finite()) return ExtendedRational::infinity();
      paid += alpha * (wait + arc.delay) + toll.finite();
      now += arc.delay;
      ++hop;
    }
    ExtendedRational arrival_cost = cost.value(now);
    if (!arrival_cost.is_finite()) return ExtendedRational::infinity();
    (void)v;
    return ExtendedRational(paid + arrival_cost.finite());
  };

  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (v == net.sink()) continue;
    for (const Rational& start : times) {
      ExtendedRational bound =
          ExtendedRational(horizon) - certificate.potential(v).value(start);
      for (const auto& path : paths_from[v]) {
        std::vector<Rational> no_waits;
        ExtendedRational direct = price_path(v, path, start, no_waits);
        ++report.options_checked;
        if (direct < bound) {
          report.lower_bound_holds = false;
          report.failures.push_back("underpriced route from '" + net.node_name(v) +
                                    "' departing at " + start.str());
        }
        std::vector<Rational> waits(path.size());
        for (auto& w : waits) w = Rational(wait_num(rng)) / Rational(den(rng));
        ExtendedRational waited = price_path(v, path, start, waits);
        ++report.options_checked;
        if (waited < bound) {
          report.lower_bound_holds = false;
          report.failures.push_back("underpriced waiting route from '" + net.node_name(v) +
                                    "' departing at " + start.str());
        }
      }
    }
  }

  // Flow-carrying no-wait departures from the source must pay exactly the
  // horizon. Walk only arcs that carry flow at the moment of entry.
  for (const PathWindow& w : schedule.windows()) {
    for (const auto& iv : w.departures.intervals()) {
      std::vector<Rational> starts = {iv.lo, iv.hi, (iv.lo + iv.hi) / 2,
                                      (iv.lo * 3 + iv.hi) / 4};
      for (const Rational& start : starts) {
        for (const auto& path : paths_from[net.source()]) {
          Rational now = start;
          bool carries = true;
          for (int a : path) {
            if (!(flow.rate(a).value(now) > ExtendedRational(0))) {
              carries = false;
              break;
            }
            now += net.arc(a).delay;
          }
          if (!carries) continue;
          ++report.tight_paths_checked;
          ExtendedRational price = price_path(net.source(), path, start, {});
          if (price != ExtendedRational(horizon)) {
            report.tight_paths_exact = false;
            report.failures.push_back("flow-carrying route from the source at " +
                                      start.str() + " does not pay the horizon");
          }
        }
      }
    }
  }

  return report;
}

}  // namespace flowtime
