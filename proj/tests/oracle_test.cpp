#include "meshroute/oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <set>
#include <vector>

#include "meshroute/errors.hpp"
#include "support.hpp"

namespace meshroute {
namespace {

TEST(EnumeratePaths, ListsEverySimpleRouteLexicographically) {
    const auto triangle = enumerate_paths(test::triangle(), RouteQuery{1, 3});
    ASSERT_EQ(triangle.size(), 2u);
    EXPECT_EQ(triangle[0].nodes, (std::vector<NodeId>{1, 2, 3}));
    EXPECT_EQ(triangle[1].nodes, (std::vector<NodeId>{1, 3}));

    const auto single = enumerate_paths(test::chain(4), RouteQuery{1, 4});
    ASSERT_EQ(single.size(), 1u);
    EXPECT_EQ(single[0].nodes, (std::vector<NodeId>{1, 2, 3, 4}));

    const auto k4 = enumerate_paths(test::k4(), RouteQuery{1, 4});
    ASSERT_EQ(k4.size(), 5u);
    EXPECT_EQ(k4[0].nodes, (std::vector<NodeId>{1, 2, 3, 4}));
    EXPECT_EQ(k4[1].nodes, (std::vector<NodeId>{1, 2, 4}));
    EXPECT_EQ(k4[2].nodes, (std::vector<NodeId>{1, 3, 2, 4}));
    EXPECT_EQ(k4[3].nodes, (std::vector<NodeId>{1, 3, 4}));
    EXPECT_EQ(k4[4].nodes, (std::vector<NodeId>{1, 4}));
}

TEST(EnumeratePaths, GuardsAgainstOversizedTopologies) {
    const Topology long_chain = test::chain(15);
    EXPECT_THROW(enumerate_paths(long_chain, RouteQuery{1, 15}), SizeError);
    const auto lifted = enumerate_paths(long_chain, RouteQuery{1, 15}, 15);
    ASSERT_EQ(lifted.size(), 1u);
    EXPECT_EQ(lifted[0].nodes.size(), 15u);
}

TEST(EnumeratePaths, DisconnectedPairYieldsNothing) {
    const Topology far = test::build({{0.0, 0.0}, {10.0, 0.0}}, 1.0);
    EXPECT_TRUE(enumerate_paths(far, RouteQuery{1, 2}).empty());
}

TEST(EnumeratePaths, RejectsInvalidQueries) {
    const Topology topology = test::triangle();
    EXPECT_THROW(enumerate_paths(topology, RouteQuery{1, 1}), ParameterError);
    EXPECT_THROW(enumerate_paths(topology, RouteQuery{0, 2}), ParameterError);
    EXPECT_THROW(enumerate_paths(topology, RouteQuery{1, 9}), ParameterError);
}

TEST(EnumeratePaths, OutputIsValidDuplicateFreeAndSorted) {
    const Topology topology =
        generate_topology(12, {500.0, 500.0}, 250.0, AttrRanges{}, 71);
    const RouteQuery query{1, 12};
    const auto paths = enumerate_paths(topology, query);
    ASSERT_FALSE(paths.empty());
    std::set<std::vector<NodeId>> seen;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        EXPECT_TRUE(validate_path(topology, query, paths[i]));
        EXPECT_TRUE(seen.insert(paths[i].nodes).second);
        if (i > 0) {
            EXPECT_LT(paths[i - 1].nodes, paths[i].nodes);
        }
    }
}

TEST(ExactWeightedOptimum, PicksTheCheapestFeasibleRoute) {
    const Topology topology = test::diamond({1.0, 9.0, 1.0, 1.0});
    const auto best = exact_weighted_optimum(topology, RouteQuery{1, 4}, Weights{},
                                             Constraints{}, BandwidthRule::paper_literal_max);
    ASSERT_TRUE(best.has_value());
    EXPECT_EQ(best->path.nodes, (std::vector<NodeId>{1, 3, 4}));
    EXPECT_DOUBLE_EQ(best->cost, 0.5 * 3.0 + 0.15 / 11.0 + 0.35 * 2.0);
    EXPECT_DOUBLE_EQ(best->qos.delay_ms, 3.0);
}

TEST(ExactWeightedOptimum, TiesResolveLexicographically) {
    const auto best = exact_weighted_optimum(test::diamond(), RouteQuery{1, 4}, Weights{},
                                             Constraints{}, BandwidthRule::paper_literal_max);
    ASSERT_TRUE(best.has_value());
    EXPECT_EQ(best->path.nodes, (std::vector<NodeId>{1, 2, 4}));
}

TEST(ExactWeightedOptimum, NulloptWhenNothingIsFeasible) {
    const Topology topology = test::chain(5);
    const Constraints tight{50.0, 1.0, 2};  // every route has 4 hops
    EXPECT_FALSE(exact_weighted_optimum(topology, RouteQuery{1, 5}, Weights{}, tight,
                                        BandwidthRule::paper_literal_max)
                     .has_value());
    const Topology far = test::build({{0.0, 0.0}, {10.0, 0.0}}, 1.0);
    EXPECT_FALSE(exact_weighted_optimum(far, RouteQuery{1, 2}, Weights{}, Constraints{},
                                        BandwidthRule::paper_literal_max)
                     .has_value());
}

TEST(ExactWeightedOptimum, NeverBeatenByAnyEnumeratedRoute) {
    const Topology topology =
        generate_topology(11, {450.0, 450.0}, 220.0, AttrRanges{}, 72);
    const RouteQuery query{1, 11};
    const Weights weights{0.3, 0.3, 0.4};
    const auto best = exact_weighted_optimum(topology, query, weights, Constraints{},
                                             BandwidthRule::bottleneck_min);
    const auto paths = enumerate_paths(topology, query);
    ASSERT_FALSE(paths.empty());
    ASSERT_TRUE(best.has_value());
    for (const Path& path : paths) {
        const QosVector qos = path_qos(topology, path, BandwidthRule::bottleneck_min);
        if (!is_feasible(qos, Constraints{})) {
            continue;
        }
        EXPECT_LE(best->cost, weighted_sum_cost(qos, weights, Constraints{}));
    }
}

TEST(ExactParetoFront, DropsDominatedRoutes) {
    // The direct hop beats the detour on delay and hops at equal bandwidth.
    const auto lean = exact_pareto_front(test::triangle(), RouteQuery{1, 3}, Constraints{},
                                         BandwidthRule::paper_literal_max);
    ASSERT_EQ(lean.size(), 1u);
    EXPECT_EQ(lean.entries()[0].path.nodes, (std::vector<NodeId>{1, 3}));

    // Branch 2 buys bandwidth with delay; branch 3 is the other way round.
    const Topology tradeoff = test::diamond({1.0, 5.0, 1.0, 1.0}, {1.0, 9.0, 1.0, 1.0});
    const auto both = exact_pareto_front(tradeoff, RouteQuery{1, 4}, Constraints{},
                                         BandwidthRule::paper_literal_max);
    ASSERT_EQ(both.size(), 2u);
    std::vector<std::vector<NodeId>> kept;
    for (const ArchiveEntry& entry : both.entries()) {
        kept.push_back(entry.path.nodes);
    }
    std::sort(kept.begin(), kept.end());
    EXPECT_EQ(kept[0], (std::vector<NodeId>{1, 2, 4}));
    EXPECT_EQ(kept[1], (std::vector<NodeId>{1, 3, 4}));
}

TEST(ExactParetoFront, EmptyWhenConstraintsExcludeEverything) {
    const auto empty = exact_pareto_front(test::chain(3), RouteQuery{1, 3},
                                          Constraints{50.0, 100.0, 10},
                                          BandwidthRule::paper_literal_max);
    EXPECT_TRUE(empty.empty());
}

TEST(ExactParetoFront, CoversEveryFeasibleRoute) {
    const Topology topology =
        generate_topology(11, {450.0, 450.0}, 220.0, AttrRanges{}, 73);
    const RouteQuery query{1, 11};
    const auto front = exact_pareto_front(topology, query, Constraints{},
                                          BandwidthRule::paper_literal_max);
    const auto objectives = front.front();
    for (std::size_t a = 0; a < objectives.size(); ++a) {
        for (std::size_t b = 0; b < objectives.size(); ++b) {
            if (a != b) {
                EXPECT_FALSE(dominates(objectives[a], objectives[b]));
            }
        }
    }
    for (const Path& path : enumerate_paths(topology, query)) {
        const QosVector qos = path_qos(topology, path, BandwidthRule::paper_literal_max);
        if (!is_feasible(qos, Constraints{})) {
            continue;
        }
        const ObjectiveVector v = objective_vector(qos);
        bool covered = false;
        for (const auto& held : objectives) {
            if (held == v || dominates(held, v)) {
                covered = true;
                break;
            }
        }
        EXPECT_TRUE(covered);
    }
}

TEST(DijkstraDelay, CountsBothEndpointsAndTracksTheCheapBranch) {
    const auto chain = dijkstra_delay(test::chain(4), RouteQuery{1, 4});
    EXPECT_EQ(chain.path.nodes, (std::vector<NodeId>{1, 2, 3, 4}));
    EXPECT_DOUBLE_EQ(chain.delay_ms, 4.0);

    const auto skewed = dijkstra_delay(test::diamond({1.0, 9.0, 1.0, 1.0}), RouteQuery{1, 4});
    EXPECT_EQ(skewed.path.nodes, (std::vector<NodeId>{1, 3, 4}));
    EXPECT_DOUBLE_EQ(skewed.delay_ms, 3.0);
}

TEST(DijkstraDelay, TiesExpandTowardSmallerIds) {
    const auto tied = dijkstra_delay(test::diamond(), RouteQuery{1, 4});
    EXPECT_EQ(tied.path.nodes, (std::vector<NodeId>{1, 2, 4}));
    EXPECT_DOUBLE_EQ(tied.delay_ms, 3.0);
}

TEST(DijkstraDelay, MatchesTheEnumeratedMinimum) {
    const Topology topology =
        generate_topology(12, {500.0, 500.0}, 230.0, AttrRanges{}, 75);
    const RouteQuery query{1, 12};
    const auto result = dijkstra_delay(topology, query);
    EXPECT_TRUE(validate_path(topology, query, result.path));
    EXPECT_DOUBLE_EQ(result.delay_ms,
                     path_qos(topology, result.path, BandwidthRule::paper_literal_max).delay_ms);

    double lowest = std::numeric_limits<double>::infinity();
    for (const Path& path : enumerate_paths(topology, query)) {
        lowest = std::min(
            lowest, path_qos(topology, path, BandwidthRule::paper_literal_max).delay_ms);
    }
    EXPECT_DOUBLE_EQ(result.delay_ms, lowest);
}

TEST(DijkstraDelay, ReportsErrorsDistinctly) {
    const Topology far = test::build({{0.0, 0.0}, {10.0, 0.0}}, 1.0);
    EXPECT_THROW(dijkstra_delay(far, RouteQuery{1, 2}), NoRouteError);
    EXPECT_THROW(dijkstra_delay(test::triangle(), RouteQuery{2, 2}), ParameterError);
    EXPECT_THROW(dijkstra_delay(test::triangle(), RouteQuery{1, 7}), ParameterError);
}

}  // namespace
}  // namespace meshroute
