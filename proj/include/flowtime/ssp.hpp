#ifndef FLOWTIME_SSP_HPP
#define FLOWTIME_SSP_HPP

#include <optional>
#include <vector>

#include "flowtime/network.hpp"
#include "flowtime/shortest_path.hpp"

namespace flowtime {

struct DecompositionPath {
  std::vector<ResidualArc> arcs;  // in order from source to sink
  Rational amount;                // bottleneck residual capacity when chosen
  Rational delay;                 // total delay, equals dist s->t at its stage
};

// Successive-shortest-paths decomposition of a maximum flow, together with
// the full per-stage distance tables to the source and to the sink. Stage j
// refers to the residual network of the cumulative flow after j paths;
// tables exist for stages 0..m where m is the number of paths.
class SspDecomposition {
 public:
  explicit SspDecomposition(const Network& net);

  const Network& network() const { return net_; }
  int path_count() const { return static_cast<int>(paths_.size()); }
  const std::vector<DecompositionPath>& paths() const { return paths_; }

  const ExtendedRational& dist_to_sink(int stage, NodeId v) const {
    return dist_to_sink_[stage][v];
  }
  const ExtendedRational& dist_to_source(int stage, NodeId v) const {
    return dist_to_source_[stage][v];
  }

  const StaticFlow& cumulative_flow(int stage) const { return cumulative_[stage]; }
  const Rational& max_flow_value() const { return prefix_.back(); }
  // Sum of the first j path amounts.
  const Rational& prefix_value(int j) const { return prefix_[j]; }
  int stage_for_value(const Rational& q) const;

  // Minimum-cost static flow of value q, obtained by truncating the
  // decomposition within stage j (prefix(j-1) <= q <= prefix(j)).
  StaticFlow stage_flow(int stage, const Rational& q) const;
  StaticFlow flow_of_value(const Rational& q) const;

 private:
  void validate() const;

  Network net_;
  std::vector<DecompositionPath> paths_;
  std::vector<std::vector<ExtendedRational>> dist_to_sink_;    // [stage][node]
  std::vector<std::vector<ExtendedRational>> dist_to_source_;  // [stage][node]
  std::vector<StaticFlow> cumulative_;                         // f^(0) .. f^(m)
  std::vector<Rational> prefix_;                               // prefix_[j] = sum_{i<=j} x_i
};

struct MinCostFlowResult {
  Rational amount;  // flow actually routed
  Rational cost;
  std::vector<Rational> arc_flows;
};

// Streaming mode of the same successive-shortest-paths scheme, for large
// graphs (the time-expanded oracle): no stage tables, Dijkstra on reduced
// costs with node potentials. Requires nonnegative arc delays, which the
// expanded graphs satisfy. Routes min(demand, max flow); pass nullopt to
// push to the maximum.
MinCostFlowResult min_cost_flow(const Network& net, const std::optional<Rational>& demand);

}  // namespace flowtime

#endif  // FLOWTIME_SSP_HPP
