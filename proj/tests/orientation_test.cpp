#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include <edcs/graph.hpp>
#include <edcs/harness/stream.hpp>
#include <edcs/orientation.hpp>

namespace edcs {
namespace {

struct SqrtHarness {
    DynBipartiteGraph g;
    SqrtOrientation o;
    explicit SqrtHarness(std::uint32_t n) : g(n, n), o(g.space()) {}

    OrientationDelta insert(Edge e) {
        g.insert_edge(e);
        return o.on_insert(g, e);
    }
    OrientationDelta erase(Edge e) {
        g.delete_edge(e);
        return o.on_delete(g, e);
    }
};

TEST(SqrtOrientation, FirstEdgeGoesLeft) {
    SqrtHarness h(2);
    auto d = h.insert({1, 0});
    EXPECT_TRUE(d.flips.empty());
    EXPECT_EQ(h.o.owner({1, 0}), h.g.space().left_of({1, 0}));
}

TEST(SqrtOrientation, StarCenterStaysLight) {
    SqrtHarness h(10);
    for (std::uint32_t r = 0; r < 9; ++r) h.insert({0, r});
    EXPECT_GE(h.o.m_bar(), 9u);
    EXPECT_LE(h.o.load(0), 5u);
    EXPECT_TRUE(h.o.audit(h.g).empty());
}

TEST(SqrtOrientation, DeleteOnlyEdge) {
    SqrtHarness h(2);
    h.insert({0, 0});
    auto d = h.erase({0, 0});
    EXPECT_TRUE(d.flips.empty());
    EXPECT_EQ(h.o.load(h.g.space().left_of({0, 0})), 0u);
    EXPECT_EQ(h.o.load(h.g.space().right_of({0, 0})), 0u);
}

TEST(SqrtOrientation, RebuildExactlyOnceAtCrossing) {
    SqrtHarness h(5);
    ASSERT_EQ(h.o.m_bar(), 4u);
    for (std::uint32_t i = 0; i < 4; ++i) EXPECT_FALSE(h.insert({i, i}).rebuilt);
    EXPECT_EQ(h.o.rebuild_count(), 0u);
    EXPECT_TRUE(h.insert({4, 4}).rebuilt);
    EXPECT_EQ(h.o.rebuild_count(), 1u);
    EXPECT_EQ(h.o.m_bar(), 10u);
}

TEST(SqrtOrientation, StaticRuleOnK33) {
    SqrtHarness h(3);
    for (std::uint32_t l = 0; l < 3; ++l)
        for (std::uint32_t r = 0; r < 3; ++r) h.insert({l, r});
    h.o.rebuild(h.g);
    for (Vertex x = 0; x < 6; ++x) EXPECT_TRUE(h.o.is_small(h.g, x));
    EXPECT_TRUE(h.o.within_load_bound(h.o.max_load()));
    EXPECT_TRUE(h.o.audit(h.g).empty());
}

TEST(SqrtOrientation, RebuildLoadAtMostTwoRootMBar) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        std::uint32_t n = 5 + static_cast<std::uint32_t>(rng() % 40);
        DynBipartiteGraph g(n, n);
        std::size_t m = rng() % (n * n);
        // Skewed graphs: a few hubs make large vertices likely.
        while (g.edge_count() < m) {
            std::uint32_t l = rng() % 3 == 0 ? static_cast<std::uint32_t>(rng() % 3) : static_cast<std::uint32_t>(rng() % n);
            Edge e{l % n, static_cast<std::uint32_t>(rng() % n)};
            if (!g.contains(e)) g.insert_edge(e);
        }
        SqrtOrientation o(g.space());
        o.rebuild(g);
        auto load = o.max_load();
        EXPECT_LE(load * load, 4 * o.m_bar()) << "trial " << trial;
        EXPECT_TRUE(o.audit(g).empty());
    }
}

TEST(SqrtOrientation, RandomStreamFlipAndLoadBounds) {
    SqrtHarness h(100);
    std::mt19937_64 rng(5);
    for (int step = 0; step < 10000; ++step) {
        Edge e{static_cast<std::uint32_t>(rng() % 100), static_cast<std::uint32_t>(rng() % 100)};
        // Hub-heavy insertions keep some degrees above 2 sqrt(mBar).
        if (rng() % 4 == 0) e.left = static_cast<std::uint32_t>(rng() % 4);
        auto d = h.g.contains(e) ? h.erase(e) : h.insert(e);
        ASSERT_LE(d.flips.size(), 10u) << "step " << step;
        ASSERT_TRUE(h.o.within_load_bound(h.o.max_load())) << "step " << step;
        if (step % 100 == 0) {
            ASSERT_TRUE(h.o.audit(h.g).empty()) << "step " << step;
        }
    }
}

TEST(SqrtOrientation, ChurnAuditEveryStep) {
    SqrtHarness h(30);
    std::mt19937_64 rng(9);
    std::vector<Edge> present;
    for (int step = 0; step < 5000; ++step) {
        bool del = !present.empty() && (present.size() > 300 || rng() % 2 == 0);
        OrientationDelta d;
        if (del) {
            std::size_t i = rng() % present.size();
            Edge e = present[i];
            present[i] = present.back();
            present.pop_back();
            d = h.erase(e);
        } else {
            Edge e{static_cast<std::uint32_t>(rng() % 30), static_cast<std::uint32_t>(rng() % 30)};
            if (h.g.contains(e)) continue;
            present.push_back(e);
            d = h.insert(e);
        }
        ASSERT_LE(d.flips.size(), 10u);
        auto problems = h.o.audit(h.g);
        ASSERT_TRUE(problems.empty()) << "step " << step << ": " << problems.front();
    }
}

TEST(SqrtOrientation, StaggeredPolicyRejected) {
    EXPECT_THROW(SqrtOrientation(VertexSpace(2, 2), RebuildPolicy::Staggered), std::invalid_argument);
}

TEST(ArbOrientation, SingleEdge) {
    DynBipartiteGraph g(1, 1);
    ArbOrientation o(g.space(), 8);
    g.insert_edge({0, 0});
    o.on_insert(g, {0, 0});
    EXPECT_EQ(o.load(o.owner({0, 0})), 1u);
}

TEST(ArbOrientation, ForestNeverExceedsCap) {
    std::mt19937_64 rng(21);
    const std::uint32_t n = 150;
    // Random forest with 200 edges via union-find.
    std::vector<std::uint32_t> parent(2 * n);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<Edge> forest;
    while (forest.size() < 200) {
        Edge e{static_cast<std::uint32_t>(rng() % n), static_cast<std::uint32_t>(rng() % n)};
        auto a = find(e.left), b = find(n + e.right);
        if (a == b) continue;
        parent[a] = b;
        forest.push_back(e);
    }
    for (int order = 0; order < 20; ++order) {
        std::shuffle(forest.begin(), forest.end(), rng);
        // Hub-first orders are the hardest for a greedy orientation.
        if (order % 2 == 1) {
            std::stable_sort(forest.begin(), forest.end(), [](Edge a, Edge b) { return a.left < b.left; });
        }
        DynBipartiteGraph g(n, n);
        ArbOrientation o(g.space(), 8);
        for (Edge e : forest) {
            g.insert_edge(e);
            ASSERT_NO_THROW(o.on_insert(g, e));
            ASSERT_LE(o.max_load(), 8u);
        }
        EXPECT_TRUE(o.audit(g).empty());
    }
}

TEST(ArbOrientation, UnionOfThreeForests) {
    harness::StreamSpec spec;
    spec.kind = harness::StreamKind::ForestUnion;
    spec.n_left = 25;
    spec.n_right = 25;
    spec.alpha = 3;
    spec.density = 0.9;
    spec.steps = 2000;
    spec.seed = 4;
    auto stream = harness::generate_stream(spec);
    DynBipartiteGraph g(25, 25);
    const std::size_t cap = default_arboricity_cap(3, 50);
    EXPECT_EQ(cap, 4u * 3 + 2 * 6);
    ArbOrientation o(g.space(), cap);
    for (const auto& u : stream.updates) {
        if (u.op == harness::Op::Insert) {
            g.insert_edge(u.edge);
            o.on_insert(g, u.edge);
        } else {
            g.delete_edge(u.edge);
            EXPECT_TRUE(o.on_delete(g, u.edge).flips.empty());
        }
        ASSERT_LE(o.max_load(), cap);
    }
    EXPECT_TRUE(o.audit(g).empty());
}

TEST(ArbOrientation, CapacityExceededWhenNoRoom) {
    // K_{2,3} has 6 edges on 5 vertices, so no orientation has every load <= 1.
    DynBipartiteGraph g(2, 3);
    ArbOrientation o(g.space(), 1);
    std::vector<Edge> edges;
    for (std::uint32_t l = 0; l < 2; ++l)
        for (std::uint32_t r = 0; r < 3; ++r) edges.push_back({l, r});
    for (std::size_t i = 0; i < 5; ++i) {
        g.insert_edge(edges[i]);
        ASSERT_NO_THROW(o.on_insert(g, edges[i]));
    }
    g.insert_edge(edges[5]);
    EXPECT_THROW(o.on_insert(g, edges[5]), CapacityExceeded);
}

}  // namespace
}  // namespace edcs
