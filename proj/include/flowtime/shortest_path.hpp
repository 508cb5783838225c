#ifndef FLOWTIME_SHORTEST_PATH_HPP
#define FLOWTIME_SHORTEST_PATH_HPP

#include <optional>
#include <vector>

#include "flowtime/network.hpp"

namespace flowtime {

// Exact shortest-path distances from every node TO the target, under the
// residual delays (which may be negative on backward arcs). Label-correcting
// with a |V|-round cap; an improvement in round |V| means a negative cycle
// and raises internal_error, since the SSP sequence never produces one.
std::vector<ExtendedRational> distances_to_target(const ResidualGraph& g, NodeId target);

struct ShortestPathResult {
  ExtendedRational distance;
  // Indices into g.arcs(); empty when from == to; nullopt when unreachable.
  std::optional<std::vector<int>> path;
};

// Delay-minimal path with deterministic tie-breaking: among equal-delay
// simple paths, the lexicographically smallest sequence of
// (arc name rank, forward-before-backward) keys.
ShortestPathResult shortest_path(const ResidualGraph& g, NodeId from, NodeId to);

// Same, but reuses precomputed distances_to_target(g, to).
std::optional<std::vector<int>> extract_lex_smallest_path(
    const ResidualGraph& g, NodeId from, NodeId to,
    const std::vector<ExtendedRational>& dist_to);

}  // namespace flowtime

#endif  // FLOWTIME_SHORTEST_PATH_HPP
