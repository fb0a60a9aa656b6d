#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "meshroute/topology.hpp"

namespace meshroute::test {

struct NodeSpec {
    double x = 0.0;
    double y = 0.0;
    double delay = 1.0;
    double bandwidth = 10.0;
};

/// Builds a topology from explicit coordinates; the area is sized to fit.
inline Topology build(const std::vector<NodeSpec>& specs, double radius) {
    std::vector<NodeAttrs> nodes;
    nodes.reserve(specs.size());
    double w = 1.0;
    double h = 1.0;
    for (const NodeSpec& s : specs) {
        nodes.push_back({s.x, s.y, s.delay, s.bandwidth});
        w = std::max(w, s.x + 1.0);
        h = std::max(h, s.y + 1.0);
    }
    return Topology(std::move(nodes), Area{w, h}, radius);
}

/// Nodes at (0,0), (1,0), ..., radius 1: edges only between neighbors.
inline Topology chain(const std::vector<std::pair<double, double>>& delay_bandwidth) {
    std::vector<NodeSpec> specs;
    for (std::size_t i = 0; i < delay_bandwidth.size(); ++i) {
        specs.push_back({static_cast<double>(i), 0.0, delay_bandwidth[i].first,
                         delay_bandwidth[i].second});
    }
    return build(specs, 1.0);
}

inline Topology chain(std::size_t n) {
    return chain(std::vector<std::pair<double, double>>(n, {1.0, 10.0}));
}

/// Edges 1-2, 2-3, 1-3 (equilateral, side 1).
inline Topology triangle(double d1 = 1.0, double d2 = 1.0, double d3 = 1.0) {
    return build({{0.0, 0.0, d1}, {1.0, 0.0, d2}, {0.5, std::sqrt(3.0) / 2.0, d3}}, 1.0);
}

/// Edges 1-2, 1-3, 2-4, 3-4: two disjoint branches between 1 and 4.
inline Topology diamond(const std::array<double, 4>& delays = {1.0, 1.0, 1.0, 1.0},
                        const std::array<double, 4>& bandwidths = {10.0, 10.0, 10.0,
                                                                   10.0}) {
    return build({{0.0, 1.0, delays[0], bandwidths[0]},
                  {1.0, 2.0, delays[1], bandwidths[1]},
                  {1.0, 0.0, delays[2], bandwidths[2]},
                  {2.0, 1.0, delays[3], bandwidths[3]}},
                 1.5);
}

/// Complete graph on 4 nodes (unit square, radius covers the diagonal).
inline Topology k4() {
    return build({{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}}, 1.5);
}

/// Complete graph on n nodes: a tight cluster well inside one radius.
inline Topology cluster(std::size_t n) {
    std::vector<NodeSpec> specs;
    for (std::size_t i = 0; i < n; ++i) {
        specs.push_back({0.01 * static_cast<double>(i), 0.0, 1.0, 10.0});
    }
    return build(specs, 1.0);
}

/// Edges 1-2, 2-3, 2-4, 3-5. Every mutation of the path 1-2-3-5 either
/// rebuilds the same path or cancels on the shared-node rule.
inline Topology mutation_trap() {
    return build({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {1.0, 1.0}, {3.0, 0.0}}, 1.0);
}

}  // namespace meshroute::test
