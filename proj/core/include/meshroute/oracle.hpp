#pragma once

#include <optional>
#include <vector>

#include "meshroute/pareto.hpp"
#include "meshroute/qos.hpp"
#include "meshroute/topology.hpp"

namespace meshroute {

inline constexpr std::size_t kMaxEnumerationNodes = 14;

/// Every simple source-to-destination path, in lexicographic node-sequence
/// order. Exponential: refuses topologies above the guard.
std::vector<Path> enumerate_paths(const Topology& topology, const RouteQuery& query,
                                  std::size_t max_nodes_guard = kMaxEnumerationNodes);

struct WeightedOptimum {
    Path path;
    QosVector qos;
    double cost = 0.0;
};

/// Cheapest feasible path by full enumeration; lexicographic tie-break.
std::optional<WeightedOptimum> exact_weighted_optimum(const Topology& topology,
                                                      const RouteQuery& query,
                                                      const Weights& weights,
                                                      const Constraints& constraints,
                                                      BandwidthRule rule,
                                                      std::size_t max_nodes_guard =
                                                          kMaxEnumerationNodes);

/// Non-dominated subset of all feasible paths, by full enumeration.
ParetoArchive exact_pareto_front(const Topology& topology, const RouteQuery& query,
                                 const Constraints& constraints, BandwidthRule rule,
                                 std::size_t max_nodes_guard = kMaxEnumerationNodes);

struct DelayPath {
    Path path;
    double delay_ms = 0.0;
};

/// Minimum-total-node-delay route (both endpoints counted); ties expand
/// toward the smaller node id.
DelayPath dijkstra_delay(const Topology& topology, const RouteQuery& query);

}  // namespace meshroute
