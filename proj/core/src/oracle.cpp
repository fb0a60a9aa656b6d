#include "meshroute/oracle.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>
#include <tuple>

#include "meshroute/errors.hpp"

namespace meshroute {

std::vector<Path> enumerate_paths(const Topology& topology, const RouteQuery& query,
                                  std::size_t max_nodes_guard) {
    if (!topology.valid_id(query.source) || !topology.valid_id(query.destination) ||
        query.source == query.destination) {
        throw ParameterError("enumerate_paths: invalid route query");
    }
    if (topology.node_count() > max_nodes_guard) {
        throw SizeError("enumerate_paths: topology has " +
                        std::to_string(topology.node_count()) +
                        " nodes, guard allows " + std::to_string(max_nodes_guard));
    }

    std::vector<Path> out;
    std::vector<char> on_path(topology.node_count() + 1, 0);
    std::vector<NodeId> current{query.source};
    on_path[query.source] = 1;

    // Neighbor lists are ascending, so this DFS emits paths in lexicographic
    // node-sequence order.
    auto walk = [&](auto&& self, NodeId at) -> void {
        if (at == query.destination) {
            out.push_back(Path{current});
            return;
        }
        for (NodeId next : topology.neighbors(at)) {
            if (on_path[next]) {
                continue;
            }
            on_path[next] = 1;
            current.push_back(next);
            self(self, next);
            current.pop_back();
            on_path[next] = 0;
        }
    };
    walk(walk, query.source);
    return out;
}

std::optional<WeightedOptimum> exact_weighted_optimum(const Topology& topology,
                                                      const RouteQuery& query,
                                                      const Weights& weights,
                                                      const Constraints& constraints,
                                                      BandwidthRule rule,
                                                      std::size_t max_nodes_guard) {
    validate(weights);
    validate(constraints);
    std::optional<WeightedOptimum> best;
    for (Path& path : enumerate_paths(topology, query, max_nodes_guard)) {
        const QosVector qos = path_qos(topology, path, rule);
        if (!is_feasible(qos, constraints)) {
            continue;
        }
        const double cost = weighted_sum_cost(qos, weights, constraints);
        // Strict improvement only: enumeration order already is the
        // lexicographic tie-break.
        if (!best || cost < best->cost) {
            best = WeightedOptimum{std::move(path), qos, cost};
        }
    }
    return best;
}

ParetoArchive exact_pareto_front(const Topology& topology, const RouteQuery& query,
                                 const Constraints& constraints, BandwidthRule rule,
                                 std::size_t max_nodes_guard) {
    validate(constraints);
    ParetoArchive archive;
    for (Path& path : enumerate_paths(topology, query, max_nodes_guard)) {
        const QosVector qos = path_qos(topology, path, rule);
        if (!is_feasible(qos, constraints)) {
            continue;
        }
        ObjectiveVector objectives = objective_vector(qos);
        archive.insert({std::move(path), qos, std::move(objectives)});
    }
    return archive;
}

DelayPath dijkstra_delay(const Topology& topology, const RouteQuery& query) {
    if (!topology.valid_id(query.source) || !topology.valid_id(query.destination) ||
        query.source == query.destination) {
        throw ParameterError("dijkstra_delay: invalid route query");
    }

    constexpr double kUnreached = std::numeric_limits<double>::infinity();
    std::vector<double> dist(topology.node_count() + 1, kUnreached);
    std::vector<NodeId> parent(topology.node_count() + 1, 0);
    std::vector<char> done(topology.node_count() + 1, 0);

    using Item = std::pair<double, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
    dist[query.source] = topology.attrs(query.source).delay_ms;
    queue.emplace(dist[query.source], query.source);

    while (!queue.empty()) {
        const auto [d, at] = queue.top();
        queue.pop();
        if (done[at]) {
            continue;
        }
        done[at] = 1;
        if (at == query.destination) {
            break;
        }
        for (NodeId next : topology.neighbors(at)) {
            if (done[next]) {
                continue;
            }
            const double candidate = d + topology.attrs(next).delay_ms;
            if (candidate < dist[next]) {
                dist[next] = candidate;
                parent[next] = at;
                queue.emplace(candidate, next);
            }
        }
    }

    if (dist[query.destination] == kUnreached) {
        throw NoRouteError("dijkstra_delay: destination unreachable from source");
    }
    Path path;
    for (NodeId at = query.destination; at != 0; at = parent[at]) {
        path.nodes.push_back(at);
        if (at == query.source) {
            break;
        }
    }
    std::reverse(path.nodes.begin(), path.nodes.end());
    return {std::move(path), dist[query.destination]};
}

}  // namespace meshroute
