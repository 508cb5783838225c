#include "flowtime/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "flowtime/errors.hpp"

namespace flowtime {

Rational rational_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(static_cast<long long>(j.get<long long>()));
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const input_error& e) {
      throw input_error("field '" + field + "': " + e.what());
    }
  }
  throw input_error("field '" + field + "' must be an integer or a 'p/q' string");
}

Json rational_to_json(const Rational& r) { return Json(r.str()); }

namespace {

ExtendedRational extended_from_json(const Json& j, const std::string& field) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return ExtendedRational::infinity();
    if (s == "-inf") return ExtendedRational::minus_infinity();
  }
  return ExtendedRational(rational_from_json(j, field));
}

const Json& require(const Json& j, const std::string& field) {
  if (!j.is_object() || !j.contains(field))
    throw input_error("missing field '" + field + "'");
  return j.at(field);
}

}  // namespace

Network network_from_json(const Json& j) {
  std::vector<std::string> nodes;
  for (const Json& node : require(j, "nodes")) {
    if (!node.is_string()) throw input_error("field 'nodes' must hold strings");
    nodes.push_back(node.get<std::string>());
  }
  auto index_of = [&](const std::string& name, const std::string& field) -> NodeId {
    for (size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i] == name) return static_cast<NodeId>(i);
    throw input_error("field '" + field + "' names unknown node '" + name + "'");
  };
  std::vector<Network::Arc> arcs;
  for (const Json& arc : require(j, "arcs")) {
    Network::Arc a;
    a.name = require(arc, "id").get<std::string>();
    a.tail = index_of(require(arc, "tail").get<std::string>(), "tail");
    a.head = index_of(require(arc, "head").get<std::string>(), "head");
    a.capacity = rational_from_json(require(arc, "capacity"), "capacity");
    a.delay = rational_from_json(require(arc, "delay"), "delay");
    arcs.push_back(std::move(a));
  }
  NodeId source = index_of(require(j, "source").get<std::string>(), "source");
  NodeId sink = index_of(require(j, "sink").get<std::string>(), "sink");
  return Network(std::move(nodes), std::move(arcs), source, sink);
}

SchedulingCost cost_from_json(const Json& j) {
  Rational alpha = rational_from_json(require(j, "alpha"), "alpha");
  if (j.contains("preset")) {
    std::string preset = j.at("preset").get<std::string>();
    if (preset == "eaf") return SchedulingCost::earliest_arrival(alpha);
    if (preset == "standard") {
      Rational beta = rational_from_json(require(j, "beta"), "beta");
      ExtendedRational gamma = extended_from_json(require(j, "gamma"), "gamma");
      return SchedulingCost::standard(alpha, beta, gamma);
    }
    throw input_error("unknown cost preset '" + preset + "'");
  }
  const Json& pieces = require(j, "pieces");
  if (!pieces.is_array() || pieces.empty())
    throw input_error("field 'pieces' must be a nonempty array");
  bool inf_left = j.value("plus_infinity_left", false);
  bool inf_right = j.value("plus_infinity_right", false);

  std::vector<Rational> knots;
  std::vector<Segment> segments;
  std::optional<Rational> previous_to;
  bool first = true;
  for (const Json& piece : pieces) {
    ExtendedRational from = extended_from_json(require(piece, "from"), "from");
    ExtendedRational to = extended_from_json(require(piece, "to"), "to");
    Rational slope = rational_from_json(require(piece, "slope"), "slope");
    Rational intercept = rational_from_json(require(piece, "intercept"), "intercept");
    if (first) {
      if (from.is_finite()) {
        if (!inf_left)
          throw input_error("field 'pieces' must start at -inf unless "
                            "'plus_infinity_left' is set");
        segments.push_back(Segment::plus_inf());
        knots.push_back(from.finite());
      } else if (from.is_plus_inf()) {
        throw input_error("field 'from' cannot be +inf");
      }
      first = false;
    } else {
      if (!from.is_finite() || !previous_to || from.finite() != *previous_to)
        throw input_error("field 'pieces' must be contiguous and increasing");
      knots.push_back(from.finite());
    }
    segments.push_back(Segment::line(slope, intercept));
    if (to.is_finite())
      previous_to = to.finite();
    else
      previous_to.reset();
  }
  if (previous_to) {
    if (!inf_right)
      throw input_error("field 'pieces' must end at inf unless "
                        "'plus_infinity_right' is set");
    knots.push_back(*previous_to);
    segments.push_back(Segment::plus_inf());
  } else if (inf_right) {
    throw input_error("'plus_infinity_right' conflicts with a final piece ending at inf");
  }
  // Point values are normalized to lower-semicontinuous form on construction.
  std::vector<ExtendedRational> values;
  PiecewiseLinear draft;
  {
    std::vector<Rational> ks = knots;
    std::vector<Segment> ss = segments;
    values.assign(knots.size(), ExtendedRational(0));
    draft = PiecewiseLinear::make(std::move(ks), std::move(ss), std::move(values));
  }
  std::vector<ExtendedRational> lsc;
  for (const Rational& k : draft.knots())
    lsc.push_back(min(draft.left_limit(k), draft.right_limit(k)));
  PiecewiseLinear rho =
      PiecewiseLinear::make(draft.knots(), draft.segments(), std::move(lsc));
  return SchedulingCost(rho, alpha);
}

Instance instance_from_json(const Json& j) {
  Network net = network_from_json(require(j, "network"));
  SchedulingCost cost = cost_from_json(require(j, "cost"));
  const Json& target = require(j, "target");
  bool has_demand = target.contains("demand");
  bool has_horizon = target.contains("horizon");
  if (has_demand == has_horizon)
    throw input_error("field 'target' must hold exactly one of 'demand' or 'horizon'");
  Instance inst{std::move(net), std::move(cost), std::nullopt, std::nullopt};
  if (has_demand) {
    inst.demand = rational_from_json(target.at("demand"), "demand");
    if (inst.demand->sign() < 0) throw input_error("field 'demand' must be nonnegative");
  } else {
    inst.horizon = rational_from_json(target.at("horizon"), "horizon");
    if (inst.horizon->sign() < 0) throw input_error("field 'horizon' must be nonnegative");
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open instance file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw input_error("instance file '" + path + "' is not valid JSON: " + e.what());
  }
  return instance_from_json(j);
}

Json network_to_json(const Network& net) {
  Json j;
  j["nodes"] = Json::array();
  for (const std::string& name : net.node_names()) j["nodes"].push_back(name);
  j["arcs"] = Json::array();
  for (const Network::Arc& a : net.arcs()) {
    Json arc;
    arc["id"] = a.name;
    arc["tail"] = net.node_name(a.tail);
    arc["head"] = net.node_name(a.head);
    arc["capacity"] = rational_to_json(a.capacity);
    arc["delay"] = rational_to_json(a.delay);
    j["arcs"].push_back(std::move(arc));
  }
  j["source"] = net.node_name(net.source());
  j["sink"] = net.node_name(net.sink());
  return j;
}

Json piecewise_to_json(const PiecewiseLinear& f) {
  Json j;
  j["pieces"] = Json::array();
  size_t n = f.knot_count();
  for (size_t i = 0; i <= n; ++i) {
    Json piece;
    piece["from"] = i == 0 ? Json("-inf") : rational_to_json(f.knots()[i - 1]);
    piece["to"] = i == n ? Json("inf") : rational_to_json(f.knots()[i]);
    const Segment& s = f.segments()[i];
    if (s.is_linear()) {
      piece["slope"] = rational_to_json(s.slope);
      piece["intercept"] = rational_to_json(s.intercept);
    } else {
      piece["infinite"] = s.kind == Segment::Kind::PlusInf ? "+" : "-";
    }
    j["pieces"].push_back(std::move(piece));
  }
  j["values"] = Json::array();
  for (size_t i = 0; i < n; ++i) {
    Json v;
    v["at"] = rational_to_json(f.knots()[i]);
    v["value"] = Json(f.knot_values()[i].str());
    j["values"].push_back(std::move(v));
  }
  return j;
}

PiecewiseLinear piecewise_from_json(const Json& j) {
  std::vector<Rational> knots;
  std::vector<Segment> segments;
  std::vector<ExtendedRational> values;
  for (const Json& piece : require(j, "pieces")) {
    ExtendedRational from = extended_from_json(require(piece, "from"), "from");
    if (from.is_finite()) knots.push_back(from.finite());
    if (piece.contains("infinite"))
      segments.push_back(piece.at("infinite").get<std::string>() == "+"
                             ? Segment::plus_inf()
                             : Segment::minus_inf());
    else
      segments.push_back(Segment::line(
          rational_from_json(require(piece, "slope"), "slope"),
          rational_from_json(require(piece, "intercept"), "intercept")));
  }
  for (const Json& v : require(j, "values"))
    values.push_back(extended_from_json(require(v, "value"), "value"));
  if (values.size() != knots.size())
    throw input_error("field 'values' must list one value per knot");
  return PiecewiseLinear::make(std::move(knots), std::move(segments), std::move(values));
}

Json cost_to_json(const SchedulingCost& cost) {
  Json j;
  j["alpha"] = rational_to_json(cost.alpha());
  j["rho"] = piecewise_to_json(cost.rho());
  j["strongly_unimodal"] = cost.strongly_unimodal();
  j["unimodal"] = cost.unimodal();
  Json norm;
  norm["time_shift"] = rational_to_json(cost.time_shift());
  norm["value_shift"] = rational_to_json(cost.value_shift());
  norm["growth_bound_adjusted"] = cost.growth_bound_adjusted();
  j["normalization"] = std::move(norm);
  return j;
}

Json flow_to_json(const FlowOverTime& flow) {
  Json j;
  j["value"] = rational_to_json(flow.value());
  j["horizon"] = rational_to_json(flow.horizon());
  j["arcs"] = Json::array();
  const Network& net = flow.network();
  for (int a = 0; a < net.arc_count(); ++a) {
    const PiecewiseLinear& f = flow.rate(a);
    Json arc;
    arc["arc_id"] = net.arc(a).name;
    arc["pieces"] = Json::array();
    size_t n = f.knot_count();
    for (size_t i = 1; i < n; ++i) {
      Json piece;
      piece["from"] = rational_to_json(f.knots()[i - 1]);
      piece["to"] = rational_to_json(f.knots()[i]);
      piece["rate"] = rational_to_json(f.segments()[i].intercept);
      arc["pieces"].push_back(std::move(piece));
    }
    arc["values"] = Json::array();
    for (size_t i = 0; i < n; ++i) {
      Json v;
      v["at"] = rational_to_json(f.knots()[i]);
      v["rate"] = Json(f.knot_values()[i].str());
      arc["values"].push_back(std::move(v));
    }
    j["arcs"].push_back(std::move(arc));
  }
  return j;
}

FlowOverTime flow_from_json(const Network& net, const Json& j) {
  Rational value = rational_from_json(require(j, "value"), "value");
  Rational horizon = rational_from_json(require(j, "horizon"), "horizon");
  std::vector<PiecewiseLinear> rates(net.arc_count());
  for (const Json& arc : require(j, "arcs")) {
    std::string name = require(arc, "arc_id").get<std::string>();
    auto id = net.find_arc(name);
    if (!id) throw input_error("field 'arc_id' names unknown arc '" + name + "'");
    std::vector<Rational> knots;
    std::vector<ExtendedRational> values;
    for (const Json& v : require(arc, "values")) {
      knots.push_back(rational_from_json(require(v, "at"), "at"));
      values.push_back(ExtendedRational(rational_from_json(require(v, "rate"), "rate")));
    }
    std::vector<Segment> segments(knots.size() + 1, Segment::line(0, 0));
    for (const Json& piece : require(arc, "pieces")) {
      Rational from = rational_from_json(require(piece, "from"), "from");
      Rational rate = rational_from_json(require(piece, "rate"), "rate");
      size_t idx = std::lower_bound(knots.begin(), knots.end(), from) - knots.begin();
      if (idx >= knots.size() || knots[idx] != from)
        throw input_error("flow piece boundary missing from 'values'");
      segments[idx + 1] = Segment::line(0, rate);
    }
    rates[*id] =
        PiecewiseLinear::make(std::move(knots), std::move(segments), std::move(values));
  }
  return FlowOverTime(net, std::move(rates), value, horizon);
}

Json schedule_to_json(const Network& net, const SspDecomposition& decomp,
                      const PathSchedule& schedule) {
  Json j;
  j["horizon"] = rational_to_json(schedule.horizon());
  j["delta"] = rational_to_json(schedule.delta());
  j["value"] = rational_to_json(schedule.value());
  j["paths"] = Json::array();
  for (int p = 0; p < decomp.path_count(); ++p) {
    const DecompositionPath& path = decomp.paths()[p];
    const PathWindow& window = schedule.windows()[p];
    Json pj;
    pj["arcs"] = Json::array();
    for (const ResidualArc& arc : path.arcs) {
      Json aj;
      aj["arc_id"] = net.arc(arc.orig_arc).name;
      aj["backward"] = !arc.forward;
      pj["arcs"].push_back(std::move(aj));
    }
    pj["amount"] = rational_to_json(window.rate);
    pj["delay"] = rational_to_json(window.stage_delay);
    pj["intervals"] = Json::array();
    for (const auto& iv : window.departures.intervals())
      pj["intervals"].push_back(
          Json::array({rational_to_json(iv.lo), rational_to_json(iv.hi)}));
    j["paths"].push_back(std::move(pj));
  }
  return j;
}

Json decomposition_to_json(const SspDecomposition& decomp) {
  const Network& net = decomp.network();
  Json j;
  j["max_flow"] = rational_to_json(decomp.max_flow_value());
  j["paths"] = Json::array();
  for (const DecompositionPath& path : decomp.paths()) {
    Json pj;
    pj["amount"] = rational_to_json(path.amount);
    pj["delay"] = rational_to_json(path.delay);
    pj["arcs"] = Json::array();
    for (const ResidualArc& arc : path.arcs) {
      Json aj;
      aj["arc_id"] = net.arc(arc.orig_arc).name;
      aj["backward"] = !arc.forward;
      pj["arcs"].push_back(std::move(aj));
    }
    j["paths"].push_back(std::move(pj));
  }
  j["distances"] = Json::array();
  for (int stage = 0; stage <= decomp.path_count(); ++stage) {
    Json sj;
    sj["stage"] = stage;
    sj["to_sink"] = Json::array();
    sj["to_source"] = Json::array();
    for (NodeId v = 0; v < net.node_count(); ++v) {
      sj["to_sink"].push_back(Json(decomp.dist_to_sink(stage, v).str()));
      sj["to_source"].push_back(Json(decomp.dist_to_source(stage, v).str()));
    }
    j["distances"].push_back(std::move(sj));
  }
  return j;
}

Json potentials_to_json(const DualCertificate& certificate) {
  Json j;
  j["horizon"] = rational_to_json(certificate.horizon());
  j["alpha"] = rational_to_json(certificate.alpha());
  j["nodes"] = Json::array();
  const Network& net = certificate.network();
  for (NodeId v = 0; v < net.node_count(); ++v) {
    Json nj;
    nj["node"] = net.node_name(v);
    nj["potential"] = piecewise_to_json(certificate.potential(v));
    j["nodes"].push_back(std::move(nj));
  }
  return j;
}

DualCertificate certificate_from_json(const Network& net, const Json& j) {
  Rational horizon = rational_from_json(require(j, "horizon"), "horizon");
  Rational alpha = rational_from_json(require(j, "alpha"), "alpha");
  std::vector<PiecewiseLinear> potentials(net.node_count());
  for (const Json& nj : require(j, "nodes")) {
    std::string name = require(nj, "node").get<std::string>();
    auto v = net.find_node(name);
    if (!v) throw input_error("field 'node' names unknown node '" + name + "'");
    potentials[*v] = piecewise_from_json(require(nj, "potential"));
  }
  return DualCertificate(net, std::move(potentials), horizon, alpha);
}

Json tolls_to_json(const Network& net, const TollSchedule& tolls) {
  Json j;
  j["arcs"] = Json::array();
  for (int a = 0; a < net.arc_count(); ++a) {
    Json aj;
    aj["arc_id"] = net.arc(a).name;
    const PiecewiseLinear& toll = tolls.toll(a);
    aj["pieces"] = Json::array();
    size_t n = toll.knot_count();
    for (size_t i = 1; i < n; ++i) {
      Json piece;
      piece["from"] = rational_to_json(toll.knots()[i - 1]);
      piece["to"] = rational_to_json(toll.knots()[i]);
      piece["slope"] = rational_to_json(toll.segments()[i].slope);
      piece["intercept"] = rational_to_json(toll.segments()[i].intercept);
      aj["pieces"].push_back(std::move(piece));
    }
    aj["total"] = rational_to_json(tolls.total(a));
    j["arcs"].push_back(std::move(aj));
  }
  return j;
}

Json certificate_report_to_json(const CertificateReport& report, const Rational& gap,
                                const EquilibriumReport& equilibrium) {
  Json j;
  j["conditions"] = Json::object();
  j["conditions"]["potential_growth_bounded"] = report.slope_bounded;
  j["conditions"]["residual_gaps_respected"] = report.residual_respected;
  j["conditions"]["source_potential_zero"] = report.source_zero;
  j["conditions"]["sink_potential_pinned"] = report.sink_pinned;
  j["prescription_consistent"] = report.prescription_consistent;
  j["duality_gap"] = rational_to_json(gap);
  j["witnesses"] = Json::array();
  for (const ConditionWitness& w : report.witnesses) {
    Json wj;
    wj["condition"] = w.condition;
    wj["subject"] = w.subject;
    wj["time"] = rational_to_json(w.time);
    wj["detail"] = w.detail;
    j["witnesses"].push_back(std::move(wj));
  }
  Json eq;
  eq["lower_bound_holds"] = equilibrium.lower_bound_holds;
  eq["tight_paths_exact"] = equilibrium.tight_paths_exact;
  eq["options_checked"] = equilibrium.options_checked;
  eq["tight_paths_checked"] = equilibrium.tight_paths_checked;
  eq["failures"] = Json::array();
  for (const std::string& f : equilibrium.failures) eq["failures"].push_back(f);
  j["equilibrium"] = std::move(eq);
  return j;
}

Json curve_to_json(const ParametricCurve& curve) {
  // All curve knots sit at nonnegative horizons (activation thresholds and
  // shifted cost levels), so restricting to C >= 0 only clips the first cell.
  const PiecewiseLinear& q = curve.value_by_horizon();
  Json j;
  j["segments"] = Json::array();
  j["jumps"] = Json::array();
  size_t n = q.knot_count();
  for (size_t i = 0; i <= n; ++i) {
    Rational from = i == 0 ? Rational(0) : q.knots()[i - 1];
    Json seg;
    seg["c_from"] = rational_to_json(from);
    seg["c_to"] = i == n ? Json("inf") : rational_to_json(q.knots()[i]);
    seg["slope"] = rational_to_json(q.segments()[i].slope);
    seg["q_from"] = Json(q.right_limit(from).str());
    seg["q_to"] = i == n ? Json("inf") : Json(q.left_limit(q.knots()[i]).str());
    j["segments"].push_back(std::move(seg));
  }
  for (size_t i = 0; i < n; ++i) {
    const Rational& c = q.knots()[i];
    if (q.left_limit(c) != q.value(c)) {
      Json jump;
      jump["at_c"] = rational_to_json(c);
      jump["q_below"] = Json(q.left_limit(c).str());
      jump["q_at"] = Json(q.value(c).str());
      j["jumps"].push_back(std::move(jump));
    }
  }
  return j;
}

Json oracle_report_to_json(const OracleReport& report,
                           const std::optional<std::vector<DeadlineCheck>>& deadlines) {
  Json j;
  j["continuous_cost"] = rational_to_json(report.continuous_cost);
  j["window"] = Json::array(
      {rational_to_json(report.window_lo), rational_to_json(report.window_hi)});
  j["levels"] = Json::array();
  for (const OracleLevel& level : report.levels) {
    Json lj;
    lj["delta"] = rational_to_json(level.step);
    lj["discrete_cost"] = rational_to_json(level.discrete_cost);
    lj["gap"] = rational_to_json(level.gap);
    j["levels"].push_back(std::move(lj));
  }
  j["dominance_holds"] = report.dominance_holds;
  j["gaps_nonincreasing"] = report.gaps_nonincreasing;
  if (deadlines) {
    j["earliest_arrival_deadlines"] = Json::array();
    for (const DeadlineCheck& check : *deadlines) {
      Json cj;
      cj["deadline"] = rational_to_json(check.deadline);
      cj["continuous_amount"] = rational_to_json(check.continuous_amount);
      cj["discrete_max_flow"] = rational_to_json(check.discrete_max);
      cj["match"] = check.continuous_amount == check.discrete_max;
      j["earliest_arrival_deadlines"].push_back(std::move(cj));
    }
  }
  return j;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw input_error("cannot write to '" + tmp + "'");
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw input_error("cannot move '" + tmp + "' into place");
}

std::string step_function_csv(const PiecewiseLinear& f) {
  std::ostringstream os;
  os << "theta,value\n";
  size_t n = f.knot_count();
  for (size_t i = 1; i < n; ++i) {
    const Rational& rate = f.segments()[i].intercept;
    os << f.knots()[i - 1].str() << "," << rate.str() << "\n";
    os << f.knots()[i].str() << "," << rate.str() << "\n";
  }
  return os.str();
}

std::string piecewise_csv(const PiecewiseLinear& f) {
  std::ostringstream os;
  os << "theta,value\n";
  size_t n = f.knot_count();
  for (size_t i = 0; i < n; ++i) {
    const Rational& k = f.knots()[i];
    if (i > 0 && f.left_limit(k) != f.value(k))
      os << k.str() << "," << f.left_limit(k).str() << "\n";
    os << k.str() << "," << f.knot_values()[i].str() << "\n";
    if (f.right_limit(k) != f.value(k) && i + 1 < n)
      os << k.str() << "," << f.right_limit(k).str() << "\n";
  }
  return os.str();
}

}  // namespace flowtime
