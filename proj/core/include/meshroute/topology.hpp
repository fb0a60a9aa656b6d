#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace meshroute {

/// 1-based node identifier, matching the usual numbering of mesh diagrams.
using NodeId = std::uint32_t;

struct Area {
    double width = 0.0;
    double height = 0.0;
};

/// Per-node position and QoS attributes. QoS lives on nodes: path delay is
/// the sum of node delays and path bandwidth aggregates node bandwidths.
struct NodeAttrs {
    double x = 0.0;
    double y = 0.0;
    double delay_ms = 0.0;
    double bandwidth_mbps = 1.0;
};

struct RouteQuery {
    NodeId source = 0;
    NodeId destination = 0;
};

/// Ordered node list from source to destination; the GA chromosome.
struct Path {
    std::vector<NodeId> nodes;

    bool empty() const noexcept { return nodes.empty(); }
    std::size_t hops() const noexcept { return nodes.empty() ? 0 : nodes.size() - 1; }
    auto operator<=>(const Path&) const = default;
};

/// Uniform sampling bounds for generated node attributes.
struct AttrRanges {
    double delay_min = 1.0;
    double delay_max = 10.0;
    double bandwidth_min = 1.0;
    double bandwidth_max = 10.0;
};

inline double euclidean_distance(const NodeAttrs& a, const NodeAttrs& b) noexcept {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

/// Undirected geometric graph: an edge joins u and v exactly when their
/// euclidean distance is <= coverage_radius (inclusive, double precision,
/// no epsilon). Immutable after construction; safe to share across threads.
class Topology {
public:
    Topology(std::vector<NodeAttrs> nodes, Area area, double coverage_radius);

    std::size_t node_count() const noexcept { return nodes_.size(); }
    bool valid_id(NodeId id) const noexcept { return id >= 1 && id <= nodes_.size(); }

    const NodeAttrs& attrs(NodeId id) const;
    const std::vector<NodeId>& neighbors(NodeId id) const;
    bool has_edge(NodeId u, NodeId v) const;

    /// Edge list with u < v, sorted lexicographically.
    const std::vector<std::pair<NodeId, NodeId>>& edges() const noexcept { return edges_; }
    const std::vector<NodeAttrs>& nodes() const noexcept { return nodes_; }
    const Area& area() const noexcept { return area_; }
    double coverage_radius() const noexcept { return radius_; }

private:
    std::vector<NodeAttrs> nodes_;
    std::vector<std::vector<NodeId>> adjacency_;
    std::vector<std::pair<NodeId, NodeId>> edges_;
    Area area_;
    double radius_ = 0.0;
};

/// Samples node positions uniformly over the area and node attributes
/// uniformly from the given ranges; edges follow from the coverage rule.
/// Deterministic for a fixed seed.
Topology generate_topology(std::size_t node_count, Area area, double coverage_radius,
                           const AttrRanges& ranges, std::uint64_t seed);

/// True iff path is a simple path of topology edges from query.source to
/// query.destination. Malformed input yields false, never a throw.
bool validate_path(const Topology& topology, const RouteQuery& query, const Path& path);

bool route_exists(const Topology& topology, const RouteQuery& query);

/// Hop-count shortest path by breadth-first search. Neighbors are explored
/// in ascending id order, so equal-length alternatives resolve toward
/// smaller node ids. Empty when no route exists.
std::optional<Path> bfs_hop_path(const Topology& topology, NodeId from, NodeId to);

}  // namespace meshroute
