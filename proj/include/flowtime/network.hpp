#ifndef FLOWTIME_NETWORK_HPP
#define FLOWTIME_NETWORK_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "flowtime/extended_rational.hpp"
#include "flowtime/rational.hpp"

namespace flowtime {

using NodeId = int;
using ArcId = int;

// Directed multigraph with arc capacities and delays. Parallel arcs and
// digons are allowed; arcs are identified by index, with a stable name for
// I/O. Immutable after construction.
class Network {
 public:
  struct Arc {
    std::string name;
    NodeId tail;
    NodeId head;
    Rational capacity;  // >= 0
    Rational delay;     // >= 0
  };

  Network(std::vector<std::string> node_names, std::vector<Arc> arcs,
          NodeId source, NodeId sink);

  int node_count() const { return static_cast<int>(node_names_.size()); }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(ArcId a) const { return arcs_[a]; }
  const std::string& node_name(NodeId v) const { return node_names_[v]; }
  const std::vector<std::string>& node_names() const { return node_names_; }
  NodeId source() const { return source_; }
  NodeId sink() const { return sink_; }

  std::optional<NodeId> find_node(const std::string& name) const;
  std::optional<ArcId> find_arc(const std::string& name) const;

  // Rank of each arc when sorted by name; used for deterministic
  // tie-breaking among equal-delay shortest paths.
  const std::vector<int>& arc_rank_by_name() const { return arc_rank_; }

 private:
  std::vector<std::string> node_names_;
  std::vector<Arc> arcs_;
  NodeId source_;
  NodeId sink_;
  std::unordered_map<std::string, NodeId> node_index_;
  std::unordered_map<std::string, ArcId> arc_index_;
  std::vector<int> arc_rank_;
};

// Static s-t flow; the constructor enforces capacity bounds and exact flow
// conservation at intermediate nodes.
class StaticFlow {
 public:
  StaticFlow(const Network& net, std::vector<Rational> arc_values);
  static StaticFlow zero(const Network& net);

  const Rational& on_arc(ArcId a) const { return values_[a]; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& value() const { return value_; }

 private:
  std::vector<Rational> values_;
  Rational value_;  // net inflow at the sink
};

// Net inflow at v: sum over arcs into v minus sum over arcs out of v.
Rational net_flow(const Network& net, const StaticFlow& flow, NodeId v);

struct ResidualArc {
  ArcId orig_arc;
  bool forward;  // false: reversal of orig_arc
  NodeId tail;
  NodeId head;
  Rational capacity;  // strictly positive
  Rational delay;     // negated for backward arcs
};

// Residual network of a feasible static flow. Holds only arcs with strictly
// positive residual capacity.
class ResidualGraph {
 public:
  ResidualGraph(const Network& net, const StaticFlow& flow);

  const Network& network() const { return *net_; }
  const StaticFlow& base_flow() const { return flow_; }
  const std::vector<ResidualArc>& arcs() const { return arcs_; }
  // residual arcs leaving v, pre-sorted by deterministic tie-break key
  const std::vector<int>& out_arcs(NodeId v) const { return out_[v]; }

 private:
  const Network* net_;
  StaticFlow flow_;
  std::vector<ResidualArc> arcs_;
  std::vector<std::vector<int>> out_;
};

}  // namespace flowtime

#endif  // FLOWTIME_NETWORK_HPP
