#include "flowtime/network.hpp"

#include <algorithm>
#include <numeric>

#include "flowtime/errors.hpp"

namespace flowtime {

Network::Network(std::vector<std::string> node_names, std::vector<Arc> arcs,
                 NodeId source, NodeId sink)
    : node_names_(std::move(node_names)), arcs_(std::move(arcs)),
      source_(source), sink_(sink) {
  if (node_names_.empty()) throw input_error("network has no nodes");
  if (source_ < 0 || source_ >= node_count()) throw input_error("bad source node");
  if (sink_ < 0 || sink_ >= node_count()) throw input_error("bad sink node");
  if (source_ == sink_) throw input_error("source and sink must differ");
  for (int v = 0; v < node_count(); ++v) {
    if (!node_index_.emplace(node_names_[v], v).second)
      throw input_error("duplicate node id '" + node_names_[v] + "'");
  }
  for (int a = 0; a < arc_count(); ++a) {
    const Arc& e = arcs_[a];
    if (e.tail < 0 || e.tail >= node_count() || e.head < 0 || e.head >= node_count())
      throw input_error("arc '" + e.name + "' has an unknown endpoint");
    if (e.capacity.sign() < 0)
      throw input_error("arc '" + e.name + "' has negative capacity");
    if (e.delay.sign() < 0)
      throw input_error("arc '" + e.name + "' has negative delay");
    if (!arc_index_.emplace(e.name, a).second)
      throw input_error("duplicate arc id '" + e.name + "'");
  }
  std::vector<int> order(arc_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return arcs_[x].name < arcs_[y].name; });
  arc_rank_.assign(arc_count(), 0);
  for (int r = 0; r < arc_count(); ++r) arc_rank_[order[r]] = r;
}

std::optional<NodeId> Network::find_node(const std::string& name) const {
  auto it = node_index_.find(name);
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ArcId> Network::find_arc(const std::string& name) const {
  auto it = arc_index_.find(name);
  if (it == arc_index_.end()) return std::nullopt;
  return it->second;
}

StaticFlow::StaticFlow(const Network& net, std::vector<Rational> arc_values)
    : values_(std::move(arc_values)) {
  if (static_cast<int>(values_.size()) != net.arc_count())
    throw input_error("flow vector size does not match arc count");
  for (int a = 0; a < net.arc_count(); ++a) {
    if (values_[a].sign() < 0)
      throw input_error("negative flow on arc '" + net.arc(a).name + "'");
    if (net.arc(a).capacity < values_[a])
      throw input_error("flow exceeds capacity on arc '" + net.arc(a).name + "'");
  }
  std::vector<Rational> acc(net.node_count(), Rational(0));
  for (int a = 0; a < net.arc_count(); ++a) {
    acc[net.arc(a).head] += values_[a];
    acc[net.arc(a).tail] -= values_[a];
  }
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (v == net.source() || v == net.sink()) continue;
    if (!acc[v].is_zero())
      throw input_error("flow not conserved at node '" + net.node_name(v) + "'");
  }
  if (acc[net.source()] != -acc[net.sink()])
    throw internal_error("source and sink imbalance disagree");
  value_ = acc[net.sink()];
}

StaticFlow StaticFlow::zero(const Network& net) {
  return StaticFlow(net, std::vector<Rational>(net.arc_count(), Rational(0)));
}

Rational net_flow(const Network& net, const StaticFlow& flow, NodeId v) {
  if (v < 0 || v >= net.node_count()) throw input_error("net_flow: unknown node id");
  Rational nf = 0;
  for (int a = 0; a < net.arc_count(); ++a) {
    if (net.arc(a).head == v) nf += flow.on_arc(a);
    if (net.arc(a).tail == v) nf -= flow.on_arc(a);
  }
  return nf;
}

ResidualGraph::ResidualGraph(const Network& net, const StaticFlow& flow)
    : net_(&net), flow_(flow) {
  for (int a = 0; a < net.arc_count(); ++a) {
    const Network::Arc& e = net.arc(a);
    Rational slack = e.capacity - flow.on_arc(a);
    if (slack.sign() > 0)
      arcs_.push_back({a, true, e.tail, e.head, slack, e.delay});
    if (flow.on_arc(a).sign() > 0)
      arcs_.push_back({a, false, e.head, e.tail, flow.on_arc(a), -e.delay});
  }
  out_.assign(net.node_count(), {});
  for (int i = 0; i < static_cast<int>(arcs_.size()); ++i)
    out_[arcs_[i].tail].push_back(i);
  // Deterministic order: by arc-name rank, forward before backward.
  const std::vector<int>& rank = net.arc_rank_by_name();
  for (auto& list : out_) {
    std::sort(list.begin(), list.end(), [&](int x, int y) {
      int rx = rank[arcs_[x].orig_arc] * 2 + (arcs_[x].forward ? 0 : 1);
      int ry = rank[arcs_[y].orig_arc] * 2 + (arcs_[y].forward ? 0 : 1);
      return rx < ry;
    });
  }
}

}  // namespace flowtime
