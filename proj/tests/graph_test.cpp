#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include <edcs/circular_list.hpp>
#include <edcs/graph.hpp>

namespace edcs {
namespace {

// Recomputes everything from a plain edge set and compares with the live graph.
void expect_matches_rescan(const DynBipartiteGraph& g, const std::set<Edge>& log) {
    const auto& s = g.space();
    ASSERT_EQ(g.edge_count(), log.size());
    std::vector<std::size_t> deg(s.size(), 0);
    for (Edge e : log) {
        ++deg[s.left_of(e)];
        ++deg[s.right_of(e)];
        EXPECT_TRUE(g.contains(e));
    }
    std::size_t sum = 0;
    for (Vertex x = 0; x < s.size(); ++x) {
        EXPECT_EQ(g.degree(x), deg[x]);
        sum += g.degree(x);
        for (Vertex y : g.neighbors(x)) EXPECT_TRUE(g.neighbors(y).contains(x));
    }
    EXPECT_EQ(sum, 2 * g.edge_count());
    EXPECT_EQ(g.edges(), std::vector<Edge>(log.begin(), log.end()));
}

TEST(Graph, SingleInsert) {
    DynBipartiteGraph g(2, 2);
    g.insert_edge({0, 1});
    EXPECT_EQ(g.edge_count(), 1u);
    EXPECT_EQ(g.degree(left_vertex(0)), 1u);
    EXPECT_EQ(g.degree(right_vertex(1)), 1u);
}

TEST(Graph, DuplicateInsertFails) {
    DynBipartiteGraph g(2, 2);
    g.insert_edge({0, 1});
    try {
        g.insert_edge({0, 1});
        FAIL() << "expected duplicate-edge error";
    } catch (const GraphError& e) {
        EXPECT_EQ(e.kind(), GraphError::Kind::DuplicateEdge);
    }
    EXPECT_EQ(g.edge_count(), 1u);
}

TEST(Graph, FreshInsertKeepsAdjacencySymmetric) {
    DynBipartiteGraph g(4, 4);
    std::set<Edge> log = {{0, 0}, {0, 1}, {1, 2}, {2, 3}, {3, 3}};
    for (Edge e : log) g.insert_edge(e);
    ASSERT_EQ(g.edge_count(), 5u);
    g.insert_edge({3, 0});
    log.insert({3, 0});
    EXPECT_EQ(g.edge_count(), 6u);
    expect_matches_rescan(g, log);
}

TEST(Graph, DeleteOnlyEdge) {
    DynBipartiteGraph g(2, 2);
    g.insert_edge({0, 1});
    g.delete_edge({0, 1});
    EXPECT_EQ(g.edge_count(), 0u);
    EXPECT_TRUE(g.edges().empty());
}

TEST(Graph, DeleteMissingFails) {
    DynBipartiteGraph g(2, 2);
    try {
        g.delete_edge({0, 0});
        FAIL() << "expected missing-edge error";
    } catch (const GraphError& e) {
        EXPECT_EQ(e.kind(), GraphError::Kind::MissingEdge);
    }
}

TEST(Graph, InvalidAndSameSideVertices) {
    DynBipartiteGraph g(2, 3);
    EXPECT_THROW(g.insert_edge({2, 0}), GraphError);
    EXPECT_THROW(g.make_edge(left_vertex(0), left_vertex(1)), GraphError);
    EXPECT_THROW(g.degree(right_vertex(3)), GraphError);
    EXPECT_EQ(g.make_edge(right_vertex(2), left_vertex(1)), (Edge{1, 2}));
}

TEST(Graph, DeleteAllInRandomOrder) {
    DynBipartiteGraph g(10, 10);
    std::mt19937_64 rng(7);
    std::set<Edge> log;
    while (log.size() < 50) {
        Edge e{static_cast<std::uint32_t>(rng() % 10), static_cast<std::uint32_t>(rng() % 10)};
        if (log.insert(e).second) g.insert_edge(e);
    }
    std::vector<Edge> order(log.begin(), log.end());
    std::shuffle(order.begin(), order.end(), rng);
    for (Edge e : order) g.delete_edge(e);
    EXPECT_EQ(g.edge_count(), 0u);
    for (Vertex x = 0; x < g.space().size(); ++x) EXPECT_EQ(g.degree(x), 0u);
}

TEST(Graph, Degrees) {
    DynBipartiteGraph g(8, 8);
    EXPECT_EQ(g.degree(left_vertex(5)), 0u);
    for (std::uint32_t r = 0; r < 7; ++r) g.insert_edge({0, r});
    EXPECT_EQ(g.degree(left_vertex(0)), 7u);
}

TEST(Graph, DegreesAgreeWithReplayAfterRandomUpdates) {
    DynBipartiteGraph g(12, 9);
    std::mt19937_64 rng(11);
    std::set<Edge> log;
    for (int i = 0; i < 1000; ++i) {
        Edge e{static_cast<std::uint32_t>(rng() % 12), static_cast<std::uint32_t>(rng() % 9)};
        if (log.contains(e)) {
            g.delete_edge(e);
            log.erase(e);
        } else {
            g.insert_edge(e);
            log.insert(e);
        }
    }
    expect_matches_rescan(g, log);
}

TEST(CircularList, CursorsSurviveErasure) {
    CircularList<2> list;
    for (EdgeKey k = 1; k <= 4; ++k) list.insert_behind(0, k);
    EXPECT_EQ(list.from(0), (std::vector<EdgeKey>{1, 2, 3, 4}));
    EXPECT_EQ(*list.advance(1), 1u);
    EXPECT_EQ(*list.peek(1), 2u);
    list.erase(2);
    EXPECT_EQ(*list.peek(1), 3u);
    EXPECT_EQ(list.odometer(1), 1u);
    EXPECT_EQ(list.size(), 3u);
    // Inserting behind cursor 0 puts the element last in its traversal.
    list.insert_behind(0, 9);
    EXPECT_EQ(list.from(0), (std::vector<EdgeKey>{1, 3, 4, 9}));
    list.clear();
    EXPECT_FALSE(list.advance(0).has_value());
}

}  // namespace
}  // namespace edcs
