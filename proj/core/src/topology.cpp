#include "meshroute/topology.hpp"

#include <algorithm>
#include <queue>
#include <string>
#include <unordered_set>

#include "meshroute/errors.hpp"
#include "meshroute/rng.hpp"

namespace meshroute {

namespace {

constexpr std::uint64_t kTopologySalt = 0x746f706fULL;  // "topo"

}  // namespace

Topology::Topology(std::vector<NodeAttrs> nodes, Area area, double coverage_radius)
    : nodes_(std::move(nodes)), area_(area), radius_(coverage_radius) {
    if (nodes_.empty()) {
        throw ParameterError("topology: at least one node required");
    }
    if (!(radius_ > 0.0)) {
        throw ParameterError("topology: coverage_radius must be > 0");
    }
    if (!(area_.width > 0.0) || !(area_.height > 0.0)) {
        throw ParameterError("topology: area dimensions must be > 0");
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const NodeAttrs& n = nodes_[i];
        const std::string where = " (node " + std::to_string(i + 1) + ")";
        if (n.x < 0.0 || n.x > area_.width || n.y < 0.0 || n.y > area_.height) {
            throw ParameterError("topology: position outside area" + where);
        }
        if (!(n.delay_ms >= 0.0)) {
            throw ParameterError("topology: delay_ms must be >= 0" + where);
        }
        if (!(n.bandwidth_mbps > 0.0)) {
            throw ParameterError("topology: bandwidth_mbps must be > 0" + where);
        }
    }

    adjacency_.assign(nodes_.size(), {});
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes_.size(); ++j) {
            if (euclidean_distance(nodes_[i], nodes_[j]) <= radius_) {
                const auto u = static_cast<NodeId>(i + 1);
                const auto v = static_cast<NodeId>(j + 1);
                adjacency_[i].push_back(v);
                adjacency_[j].push_back(u);
                edges_.emplace_back(u, v);
            }
        }
    }
    // i < j iteration already leaves neighbor lists and the edge list sorted.
}

const NodeAttrs& Topology::attrs(NodeId id) const {
    if (!valid_id(id)) {
        throw ParameterError("topology: invalid node id " + std::to_string(id));
    }
    return nodes_[id - 1];
}

const std::vector<NodeId>& Topology::neighbors(NodeId id) const {
    if (!valid_id(id)) {
        throw ParameterError("topology: invalid node id " + std::to_string(id));
    }
    return adjacency_[id - 1];
}

bool Topology::has_edge(NodeId u, NodeId v) const {
    if (!valid_id(u) || !valid_id(v) || u == v) {
        return false;
    }
    const auto& adj = adjacency_[u - 1];
    return std::binary_search(adj.begin(), adj.end(), v);
}

Topology generate_topology(std::size_t node_count, Area area, double coverage_radius,
                           const AttrRanges& ranges, std::uint64_t seed) {
    if (node_count < 2) {
        throw ParameterError("generate_topology: node_count must be >= 2");
    }
    if (!(coverage_radius > 0.0)) {
        throw ParameterError("generate_topology: coverage_radius must be > 0");
    }
    if (ranges.delay_min > ranges.delay_max || ranges.bandwidth_min > ranges.bandwidth_max) {
        throw ParameterError("generate_topology: range bounds must satisfy lo <= hi");
    }
    if (ranges.delay_min < 0.0) {
        throw ParameterError("generate_topology: delay range must be >= 0");
    }
    if (!(ranges.bandwidth_min > 0.0)) {
        throw ParameterError("generate_topology: bandwidth range must be > 0");
    }

    RngStream rng(derive_seed(seed, kTopologySalt));
    std::vector<NodeAttrs> nodes(node_count);
    for (NodeAttrs& n : nodes) {
        n.x = rng.uniform_real(0.0, area.width);
        n.y = rng.uniform_real(0.0, area.height);
        n.delay_ms = rng.uniform_real(ranges.delay_min, ranges.delay_max);
        n.bandwidth_mbps = rng.uniform_real(ranges.bandwidth_min, ranges.bandwidth_max);
    }
    return Topology(std::move(nodes), area, coverage_radius);
}

bool validate_path(const Topology& topology, const RouteQuery& query, const Path& path) {
    if (path.nodes.size() < 2) {
        return false;
    }
    if (path.nodes.front() != query.source || path.nodes.back() != query.destination) {
        return false;
    }
    std::unordered_set<NodeId> seen;
    for (NodeId id : path.nodes) {
        if (!topology.valid_id(id) || !seen.insert(id).second) {
            return false;
        }
    }
    for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
        if (!topology.has_edge(path.nodes[i], path.nodes[i + 1])) {
            return false;
        }
    }
    return true;
}

bool route_exists(const Topology& topology, const RouteQuery& query) {
    return bfs_hop_path(topology, query.source, query.destination).has_value();
}

std::optional<Path> bfs_hop_path(const Topology& topology, NodeId from, NodeId to) {
    if (!topology.valid_id(from) || !topology.valid_id(to)) {
        throw ParameterError("bfs_hop_path: invalid node id");
    }
    if (from == to) {
        return Path{{from}};
    }
    std::vector<NodeId> parent(topology.node_count() + 1, 0);
    std::queue<NodeId> frontier;
    parent[from] = from;
    frontier.push(from);
    while (!frontier.empty()) {
        const NodeId u = frontier.front();
        frontier.pop();
        for (NodeId v : topology.neighbors(u)) {
            if (parent[v] != 0) {
                continue;
            }
            parent[v] = u;
            if (v == to) {
                Path path;
                for (NodeId w = to; w != from; w = parent[w]) {
                    path.nodes.push_back(w);
                }
                path.nodes.push_back(from);
                std::reverse(path.nodes.begin(), path.nodes.end());
                return path;
            }
            frontier.push(v);
        }
    }
    return std::nullopt;
}

}  // namespace meshroute
