#include "meshroute/topology.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "meshroute/errors.hpp"
#include "meshroute/topology_io.hpp"
#include "support.hpp"

namespace meshroute {
namespace {

TEST(Topology, EdgeIffWithinRadiusInclusive) {
    const Topology touching = test::build({{0.0, 0.0}, {1.0, 0.0}}, 1.0);
    EXPECT_TRUE(touching.has_edge(1, 2));

    const Topology apart = test::build({{0.0, 0.0}, {1.0000000001, 0.0}}, 1.0);
    EXPECT_FALSE(apart.has_edge(1, 2));
}

TEST(Topology, NeighborsSortedAndEdgesLexicographic) {
    const Topology topology = test::k4();
    for (NodeId id = 1; id <= 4; ++id) {
        const auto& around = topology.neighbors(id);
        EXPECT_TRUE(std::is_sorted(around.begin(), around.end()));
        EXPECT_EQ(around.size(), 3u);
    }
    EXPECT_TRUE(std::is_sorted(topology.edges().begin(), topology.edges().end()));
    EXPECT_EQ(topology.edges().size(), 6u);
}

TEST(Topology, ConstructorRejectsBadInput) {
    EXPECT_THROW(Topology({}, Area{1, 1}, 1.0), ParameterError);
    EXPECT_THROW(Topology({{0, 0, 1, 1}}, Area{1, 1}, 0.0), ParameterError);
    EXPECT_THROW(Topology({{0, 0, 1, 1}}, Area{0, 1}, 1.0), ParameterError);
    EXPECT_THROW(Topology({{5, 0, 1, 1}}, Area{1, 1}, 1.0), ParameterError);  // x > width
    EXPECT_THROW(Topology({{0, 0, -1, 1}}, Area{1, 1}, 1.0), ParameterError);
    EXPECT_THROW(Topology({{0, 0, 1, 0}}, Area{1, 1}, 1.0), ParameterError);
}

TEST(GenerateTopology, DeterministicPerSeedAndWithinRanges) {
    const AttrRanges ranges{2.0, 6.0, 3.0, 9.0};
    const Topology a = generate_topology(30, Area{500, 500}, 120.0, ranges, 77);
    const Topology b = generate_topology(30, Area{500, 500}, 120.0, ranges, 77);
    EXPECT_EQ(save_topology(a), save_topology(b));

    const Topology c = generate_topology(30, Area{500, 500}, 120.0, ranges, 78);
    EXPECT_NE(save_topology(a), save_topology(c));

    for (NodeId id = 1; id <= 30; ++id) {
        const NodeAttrs& attrs = a.attrs(id);
        EXPECT_GE(attrs.x, 0.0);
        EXPECT_LE(attrs.x, 500.0);
        EXPECT_GE(attrs.y, 0.0);
        EXPECT_LE(attrs.y, 500.0);
        EXPECT_GE(attrs.delay_ms, 2.0);
        EXPECT_LE(attrs.delay_ms, 6.0);
        EXPECT_GE(attrs.bandwidth_mbps, 3.0);
        EXPECT_LE(attrs.bandwidth_mbps, 9.0);
    }
}

TEST(GenerateTopology, EdgesMatchPairwiseDistancePredicate) {
    const Topology topology =
        generate_topology(40, Area{600, 600}, 150.0, AttrRanges{}, 123);
    std::set<std::pair<NodeId, NodeId>> expected;
    for (NodeId u = 1; u <= 40; ++u) {
        for (NodeId v = u + 1; v <= 40; ++v) {
            if (euclidean_distance(topology.attrs(u), topology.attrs(v)) <= 150.0) {
                expected.emplace(u, v);
            }
        }
    }
    const std::set<std::pair<NodeId, NodeId>> actual(topology.edges().begin(),
                                                     topology.edges().end());
    EXPECT_EQ(actual, expected);
}

TEST(GenerateTopology, RejectsBadParameters) {
    EXPECT_THROW(generate_topology(1, Area{10, 10}, 1.0, AttrRanges{}, 0), ParameterError);
    EXPECT_THROW(generate_topology(5, Area{10, 10}, 1.0, AttrRanges{5, 2, 1, 10}, 0),
                 ParameterError);
    EXPECT_THROW(generate_topology(5, Area{10, 10}, 1.0, AttrRanges{1, 10, 0, 10}, 0),
                 ParameterError);
}

TEST(ValidatePath, AcceptsSimpleEdgePathsOnly) {
    const Topology topology = test::diamond();
    const RouteQuery query{1, 4};
    EXPECT_TRUE(validate_path(topology, query, Path{{1, 2, 4}}));
    EXPECT_TRUE(validate_path(topology, query, Path{{1, 3, 4}}));
    EXPECT_FALSE(validate_path(topology, query, Path{{1, 4}}));        // no edge
    EXPECT_FALSE(validate_path(topology, query, Path{{1, 2}}));        // wrong endpoint
    EXPECT_FALSE(validate_path(topology, query, Path{{2, 1, 2, 4}}));  // repeat + endpoint
    EXPECT_FALSE(validate_path(topology, query, Path{{1}}));
    EXPECT_FALSE(validate_path(topology, query, Path{{1, 9, 4}}));  // unknown id
    EXPECT_FALSE(validate_path(topology, query, Path{{}}));
}

TEST(RouteExists, DistinguishesComponents) {
    const Topology split = test::build({{0, 0}, {1, 0}, {5, 0}, {6, 0}}, 1.0);
    EXPECT_TRUE(route_exists(split, {1, 2}));
    EXPECT_TRUE(route_exists(split, {3, 4}));
    EXPECT_FALSE(route_exists(split, {1, 4}));
    EXPECT_FALSE(route_exists(split, {2, 3}));
}

TEST(BfsHopPath, FindsFewestHopsBreakingTiesTowardSmallerIds) {
    const Topology topology = test::diamond();
    const auto path = bfs_hop_path(topology, 1, 4);
    ASSERT_TRUE(path.has_value());
    EXPECT_EQ(path->nodes, (std::vector<NodeId>{1, 2, 4}));

    const auto whole = bfs_hop_path(test::chain(5), 1, 5);
    ASSERT_TRUE(whole.has_value());
    EXPECT_EQ(whole->nodes, (std::vector<NodeId>{1, 2, 3, 4, 5}));

    const Topology split = test::build({{0, 0}, {5, 0}}, 1.0);
    EXPECT_FALSE(bfs_hop_path(split, 1, 2).has_value());

    const auto self = bfs_hop_path(topology, 3, 3);
    ASSERT_TRUE(self.has_value());
    EXPECT_EQ(self->nodes, (std::vector<NodeId>{3}));
}

TEST(TopologyIo, RoundTripIsByteStable) {
    const Topology topology =
        generate_topology(25, Area{300, 300}, 90.0, AttrRanges{}, 5);
    const std::string text = save_topology(topology);
    const Topology loaded = load_topology(text);
    EXPECT_EQ(save_topology(loaded), text);
    EXPECT_EQ(loaded.edges(), topology.edges());
    EXPECT_EQ(loaded.node_count(), topology.node_count());
    for (NodeId id = 1; id <= 25; ++id) {
        EXPECT_EQ(loaded.attrs(id).delay_ms, topology.attrs(id).delay_ms);
        EXPECT_EQ(loaded.attrs(id).bandwidth_mbps, topology.attrs(id).bandwidth_mbps);
    }
}

std::string two_node_doc(const std::string& edges) {
    return R"({"area": {"height": 2.0, "width": 3.0}, "coverage_radius": 1.0,)"
           R"( "edges": )" +
           edges +
           R"(, "nodes": [)"
           R"({"id": 1, "x": 0.0, "y": 0.0, "delay_ms": 1.0, "bandwidth_mbps": 2.0},)"
           R"({"id": 2, "x": 1.0, "y": 0.0, "delay_ms": 1.0, "bandwidth_mbps": 2.0}],)"
           R"( "version": 1})";
}

TEST(TopologyIo, RejectsMalformedDocuments) {
    EXPECT_THROW(load_topology("not json"), FormatError);
    EXPECT_THROW(load_topology("{}"), FormatError);
    EXPECT_THROW(load_topology(R"({"version": 2})"), FormatError);

    EXPECT_NO_THROW(load_topology(two_node_doc("[[1, 2]]")));
    EXPECT_THROW(load_topology(two_node_doc("[]")), FormatError);        // edge missing
    EXPECT_THROW(load_topology(two_node_doc("[[2, 1]]")), FormatError);  // u >= v
    EXPECT_THROW(load_topology(two_node_doc("[[1, 2], [1, 2]]")), FormatError);
    EXPECT_THROW(load_topology(two_node_doc("[[1, 3]]")), FormatError);  // unknown id

    std::string gap = two_node_doc("[[1, 2]]");
    const auto at = gap.find("\"id\": 2");
    ASSERT_NE(at, std::string::npos);
    gap.replace(at, 7, "\"id\": 3");
    EXPECT_THROW(load_topology(gap), FormatError);

    std::string negative = two_node_doc("[[1, 2]]");
    const auto delay_at = negative.find("\"delay_ms\": 1.0");
    ASSERT_NE(delay_at, std::string::npos);
    negative.replace(delay_at, 15, "\"delay_ms\": -1.");
    EXPECT_THROW(load_topology(negative), FormatError);
}

}  // namespace
}  // namespace meshroute
