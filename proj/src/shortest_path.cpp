#include "flowtime/shortest_path.hpp"

#include "flowtime/errors.hpp"

namespace flowtime {

std::vector<ExtendedRational> distances_to_target(const ResidualGraph& g, NodeId target) {
  const Network& net = g.network();
  int n = net.node_count();
  std::vector<ExtendedRational> dist(n, ExtendedRational::infinity());
  dist[target] = ExtendedRational(0);
  for (int round = 1; round <= n; ++round) {
    bool improved = false;
    for (const ResidualArc& arc : g.arcs()) {
      if (!dist[arc.head].is_finite()) continue;
      ExtendedRational candidate = ExtendedRational(arc.delay) + dist[arc.head];
      if (candidate < dist[arc.tail]) {
        dist[arc.tail] = candidate;
        improved = true;
      }
    }
    if (!improved) break;
    if (round == n)
      throw internal_error("negative-delay cycle in residual network");
  }
  return dist;
}

namespace {

bool dfs_lex_path(const ResidualGraph& g, NodeId u, NodeId to,
                  const std::vector<ExtendedRational>& dist, std::vector<bool>& on_path,
                  std::vector<int>& path) {
  if (u == to) return true;
  on_path[u] = true;
  for (int idx : g.out_arcs(u)) {
    const ResidualArc& arc = g.arcs()[idx];
    if (on_path[arc.head]) continue;
    if (!dist[u].is_finite() || !dist[arc.head].is_finite()) continue;
    if (dist[u] != ExtendedRational(arc.delay) + dist[arc.head]) continue;
    path.push_back(idx);
    if (dfs_lex_path(g, arc.head, to, dist, on_path, path)) {
      on_path[u] = false;
      return true;
    }
    path.pop_back();
  }
  on_path[u] = false;
  return false;
}

}  // namespace

std::optional<std::vector<int>> extract_lex_smallest_path(
    const ResidualGraph& g, NodeId from, NodeId to,
    const std::vector<ExtendedRational>& dist_to) {
  if (from == to) return std::vector<int>{};
  if (!dist_to[from].is_finite()) return std::nullopt;
  std::vector<bool> on_path(g.network().node_count(), false);
  std::vector<int> path;
  if (!dfs_lex_path(g, from, to, dist_to, on_path, path))
    throw internal_error("finite distance but no tight path found");
  return path;
}

ShortestPathResult shortest_path(const ResidualGraph& g, NodeId from, NodeId to) {
  const Network& net = g.network();
  if (from < 0 || from >= net.node_count() || to < 0 || to >= net.node_count())
    throw input_error("shortest_path: unknown node id");
  std::vector<ExtendedRational> dist = distances_to_target(g, to);
  if (!dist[from].is_finite()) return {ExtendedRational::infinity(), std::nullopt};
  return {dist[from], extract_lex_smallest_path(g, from, to, dist)};
}

}  // namespace flowtime
