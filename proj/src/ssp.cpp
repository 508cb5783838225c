#include "flowtime/ssp.hpp"

#include <queue>

#include "flowtime/errors.hpp"

namespace flowtime {

SspDecomposition::SspDecomposition(const Network& net) : net_(net) {
  std::vector<Rational> flow_values(net_.arc_count(), Rational(0));
  prefix_.push_back(Rational(0));
  while (true) {
    StaticFlow flow(net_, flow_values);
    cumulative_.push_back(flow);
    ResidualGraph residual(net_, flow);
    dist_to_sink_.push_back(distances_to_target(residual, net_.sink()));
    dist_to_source_.push_back(distances_to_target(residual, net_.source()));
    const ExtendedRational& d_st = dist_to_sink_.back()[net_.source()];
    if (!d_st.is_finite()) break;

    auto arc_indices =
        extract_lex_smallest_path(residual, net_.source(), net_.sink(), dist_to_sink_.back());
    if (!arc_indices || arc_indices->empty())
      throw internal_error("SSP expected a nonempty augmenting path");

    DecompositionPath path;
    path.delay = d_st.finite();
    for (int idx : *arc_indices) path.arcs.push_back(residual.arcs()[idx]);
    Rational bottleneck = path.arcs[0].capacity;
    for (const ResidualArc& arc : path.arcs) bottleneck = min(bottleneck, arc.capacity);
    if (bottleneck.sign() <= 0) throw internal_error("SSP bottleneck not positive");
    path.amount = bottleneck;

    for (const ResidualArc& arc : path.arcs) {
      if (arc.forward)
        flow_values[arc.orig_arc] += bottleneck;
      else
        flow_values[arc.orig_arc] -= bottleneck;
    }
    prefix_.push_back(prefix_.back() + bottleneck);
    paths_.push_back(std::move(path));
  }
  validate();
}

void SspDecomposition::validate() const {
  int m = path_count();
  int n = net_.node_count();
  for (int j = 1; j < m; ++j)
    if (paths_[j].delay < paths_[j - 1].delay)
      throw internal_error("SSP path delays decreased");
  // d_j(v,s) nonincreasing with j.
  for (int j = 1; j <= m; ++j)
    for (NodeId v = 0; v < n; ++v)
      if (dist_to_source_[j][v] > dist_to_source_[j - 1][v])
        throw internal_error("distance to source increased across a stage");
  // d_{j-1}(v,t) - d_{j-1}(s,t) = d_j(v,s).
  for (int j = 1; j <= m; ++j) {
    const ExtendedRational& d_st = dist_to_sink_[j - 1][net_.source()];
    for (NodeId v = 0; v < n; ++v) {
      const ExtendedRational& lhs = dist_to_sink_[j - 1][v];
      const ExtendedRational& rhs = dist_to_source_[j][v];
      if (lhs.is_finite() != rhs.is_finite())
        throw internal_error("stage distance identity broken (finiteness)");
      if (lhs.is_finite() && lhs - d_st != rhs)
        throw internal_error("stage distance identity broken");
    }
  }
}

int SspDecomposition::stage_for_value(const Rational& q) const {
  if (q.sign() < 0) throw input_error("flow value must be nonnegative");
  if (max_flow_value() < q)
    throw demand_infeasible_error("requested value " + q.str() +
                                  " exceeds maximum flow " + max_flow_value().str());
  for (int j = 0; j <= path_count(); ++j)
    if (q <= prefix_[j]) return j;
  throw internal_error("stage_for_value fell through");
}

StaticFlow SspDecomposition::stage_flow(int stage, const Rational& q) const {
  if (stage < 0 || stage > path_count()) throw input_error("bad stage index");
  if (q.sign() < 0) throw input_error("flow value must be nonnegative");
  if (max_flow_value() < q)
    throw demand_infeasible_error("requested value " + q.str() +
                                  " exceeds maximum flow " + max_flow_value().str());
  Rational below = stage == 0 ? Rational(0) : prefix_[stage - 1];
  if (q < below || prefix_[stage] < q)
    throw input_error("stage does not cover the requested value");
  std::vector<Rational> values = cumulative_[stage == 0 ? 0 : stage - 1].values();
  if (stage > 0) {
    Rational extra = q - below;
    for (const ResidualArc& arc : paths_[stage - 1].arcs) {
      if (arc.forward)
        values[arc.orig_arc] += extra;
      else
        values[arc.orig_arc] -= extra;
    }
  }
  return StaticFlow(net_, values);
}

StaticFlow SspDecomposition::flow_of_value(const Rational& q) const {
  return stage_flow(stage_for_value(q), q);
}

namespace {

struct ResidualEntry {
  NodeId to;
  Rational capacity;
  Rational cost;
  int partner;  // index of the reverse entry
};

}  // namespace

MinCostFlowResult min_cost_flow(const Network& net, const std::optional<Rational>& demand) {
  if (demand && demand->sign() < 0) throw input_error("demand must be nonnegative");
  int n = net.node_count();
  std::vector<ResidualEntry> entries;
  std::vector<std::vector<int>> out(n);
  entries.reserve(2 * net.arc_count());
  for (int a = 0; a < net.arc_count(); ++a) {
    const Network::Arc& e = net.arc(a);
    if (e.delay.sign() < 0)
      throw internal_error("streaming solver requires nonnegative costs");
    int fwd = static_cast<int>(entries.size());
    entries.push_back({e.head, e.capacity, e.delay, fwd + 1});
    entries.push_back({e.tail, Rational(0), -e.delay, fwd});
    out[e.tail].push_back(fwd);
    out[e.head].push_back(fwd + 1);
  }

  std::vector<Rational> potential(n, Rational(0));
  MinCostFlowResult result{Rational(0), Rational(0), {}};
  Rational remaining = demand ? *demand : Rational(0);

  while (!demand || remaining.sign() > 0) {
    // Dijkstra over reduced costs, stopping once the sink settles.
    std::vector<std::optional<Rational>> dist(n);
    std::vector<bool> settled(n, false);
    std::vector<int> parent_entry(n, -1);
    using HeapItem = std::pair<Rational, NodeId>;
    auto heap_greater = [](const HeapItem& x, const HeapItem& y) {
      return y.first < x.first;
    };
    std::priority_queue<HeapItem, std::vector<HeapItem>, decltype(heap_greater)> heap(
        heap_greater);
    dist[net.source()] = Rational(0);
    heap.push({Rational(0), net.source()});
    std::optional<Rational> sink_dist;
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (settled[u]) continue;
      settled[u] = true;
      if (u == net.sink()) {
        sink_dist = d;
        break;
      }
      for (int idx : out[u]) {
        const ResidualEntry& entry = entries[idx];
        if (entry.capacity.sign() <= 0 || settled[entry.to]) continue;
        Rational reduced = entry.cost + potential[u] - potential[entry.to];
        if (reduced.sign() < 0)
          throw internal_error("negative reduced cost in the streaming solver");
        Rational candidate = d + reduced;
        if (!dist[entry.to] || candidate < *dist[entry.to]) {
          dist[entry.to] = candidate;
          parent_entry[entry.to] = idx;
          heap.push({candidate, entry.to});
        }
      }
    }
    if (!sink_dist) break;  // maximum flow reached

    for (NodeId v = 0; v < n; ++v) {
      if (dist[v] && *dist[v] < *sink_dist)
        potential[v] += *dist[v];
      else
        potential[v] += *sink_dist;
    }

    Rational bottleneck = remaining;
    bool capped = demand.has_value();
    for (NodeId v = net.sink(); v != net.source();) {
      const ResidualEntry& entry = entries[parent_entry[v]];
      if (!capped || entry.capacity < bottleneck) {
        bottleneck = entry.capacity;
        capped = true;
      }
      v = entries[entry.partner].to;
    }
    if (bottleneck.sign() <= 0) throw internal_error("empty augmentation");
    for (NodeId v = net.sink(); v != net.source();) {
      ResidualEntry& entry = entries[parent_entry[v]];
      entry.capacity -= bottleneck;
      entries[entry.partner].capacity += bottleneck;
      v = entries[entry.partner].to;
    }
    result.amount += bottleneck;
    if (demand) remaining -= bottleneck;
  }

  result.arc_flows.assign(net.arc_count(), Rational(0));
  for (int a = 0; a < net.arc_count(); ++a) {
    result.arc_flows[a] = entries[2 * a + 1].capacity;  // flow = reverse capacity
    result.cost += result.arc_flows[a] * net.arc(a).delay;
  }
  return result;
}

}  // namespace flowtime
