#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include <edcs/graph.hpp>
#include <edcs/harness/stream.hpp>
#include <edcs/oracle.hpp>
#include <edcs/orientation.hpp>
#include <edcs/weighted_edcs.hpp>

namespace edcs {
namespace {

// Graph + arboricity orientation + weighted EDCS, wired in pipeline order.
struct Weighted {
    DynBipartiteGraph g;
    ArbOrientation o;
    WeightedEdcs h;

    Weighted(std::uint32_t nl, std::uint32_t nr, int beta, std::size_t cap = 64)
        : g(nl, nr), o(g.space(), cap), h(g.space(), beta) {}

    std::vector<WeightDelta> insert(Edge e) {
        g.insert_edge(e);
        h.apply_orientation(o.on_insert(g, e));
        return h.on_graph_insert(e, o.owner(e));
    }
    std::vector<WeightDelta> erase(Edge e) {
        g.delete_edge(e);
        h.apply_orientation(o.on_delete(g, e));
        return h.on_graph_delete(e);
    }
    bool valid() const { return oracle::validate_edcs_weighted(g, h.weights(), h.beta()).ok; }
};

// Degree vectors of every weighted EDCS(G, beta, beta-1) of a tiny graph.
std::set<std::vector<int>> all_valid_degree_vectors(const DynBipartiteGraph& g, int beta) {
    auto edges = g.edges();
    std::set<std::vector<int>> out;
    std::vector<std::pair<Edge, int>> w;
    for (Edge e : edges) w.emplace_back(e, 0);
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == w.size()) {
            std::vector<std::pair<Edge, int>> used;
            for (auto p : w) {
                if (p.second > 0) used.push_back(p);
            }
            if (!oracle::validate_edcs_weighted(g, used, beta).ok) return;
            std::vector<int> deg(g.space().size(), 0);
            for (auto [e, x] : used) {
                deg[g.space().left_of(e)] += x;
                deg[g.space().right_of(e)] += x;
            }
            out.insert(deg);
            return;
        }
        for (int x = 0; x <= beta; ++x) {
            w[i].second = x;
            go(i + 1);
        }
    };
    go(0);
    return out;
}

TEST(WeightedEdcs, FirstEdgeGetsWeightTwo) {
    Weighted s(2, 2, 4);
    auto deltas = s.insert({0, 0});
    EXPECT_EQ(s.h.weight({0, 0}), 2);
    EXPECT_EQ(s.h.degree(0), 2);
    EXPECT_EQ(s.h.degree(s.g.space().right_of({0, 0})), 2);
    EXPECT_EQ(deltas, (std::vector<WeightDelta>{{{0, 0}, 1}, {{0, 0}, 1}}));
    EXPECT_EQ(s.h.classify({0, 0}), EdgeClass::Full);
    EXPECT_EQ(s.h.last_update().unit_changes.size(), 2u);
}

TEST(WeightedEdcs, ClassifyDeficientAndNeither) {
    // Path L0 - R0 - L1 settles at weights 1, 1 with every edge degree 3.
    Weighted s(3, 2, 4);
    s.insert({0, 0});
    s.insert({1, 0});
    EXPECT_EQ(s.h.weight({0, 0}), 1);
    EXPECT_EQ(s.h.weight({1, 0}), 1);
    EXPECT_EQ(s.h.edge_degree({0, 0}), 3);
    EXPECT_EQ(s.h.classify({0, 0}), EdgeClass::Deficient);
    EXPECT_TRUE(s.valid());

    Weighted t(2, 2, 4);
    t.insert({0, 0});
    t.insert({1, 1});
    t.insert({0, 1});
    EXPECT_EQ(t.h.weight({0, 1}), 0);
    EXPECT_EQ(t.h.edge_degree({0, 1}), 4);
    EXPECT_EQ(t.h.classify({0, 1}), EdgeClass::Neither);
}

TEST(WeightedEdcs, InsertAtFloorChangesNothing) {
    Weighted s(3, 2, 4);
    s.insert({0, 0});
    s.insert({1, 0});  // d(L0) = 1, d(R0) = 2, d(L1) = 1
    s.insert({2, 1});  // d(R1) = 2
    auto deltas = s.insert({0, 1});
    EXPECT_TRUE(deltas.empty());
    EXPECT_EQ(s.h.weight({0, 1}), 0);
    EXPECT_TRUE(s.valid());
}

TEST(WeightedEdcs, DeleteOnlyEdge) {
    Weighted s(1, 1, 4);
    s.insert({0, 0});
    auto deltas = s.erase({0, 0});
    EXPECT_EQ(deltas, (std::vector<WeightDelta>{{{0, 0}, -1}, {{0, 0}, -1}}));
    EXPECT_EQ(s.h.degree(0), 0);
    EXPECT_EQ(s.h.degree(1), 0);
}

TEST(WeightedEdcs, DeleteUnusedEdge) {
    Weighted s(2, 2, 4);
    s.insert({0, 0});
    s.insert({1, 1});
    s.insert({0, 1});
    ASSERT_EQ(s.h.weight({0, 1}), 0);
    EXPECT_TRUE(s.erase({0, 1}).empty());
}

TEST(WeightedEdcs, PathDeletionMatchesBruteForce) {
    // u = L0, v = R0, w = L1.
    Weighted s(2, 1, 4);
    s.insert({0, 0});
    s.insert({1, 0});
    ASSERT_TRUE(s.valid());
    s.erase({0, 0});
    ASSERT_TRUE(s.valid());
    auto valid = all_valid_degree_vectors(s.g, 4);
    std::vector<int> live;
    for (Vertex x = 0; x < s.g.space().size(); ++x) live.push_back(s.h.degree(x));
    EXPECT_TRUE(valid.contains(live));
    EXPECT_EQ(live, (std::vector<int>{0, 2, 2}));
}

TEST(WeightedEdcs, SmallGraphsMatchBruteForce) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        Weighted s(3, 3, 4);
        std::vector<Edge> present;
        for (int step = 0; step < 8; ++step) {
            Edge e{static_cast<std::uint32_t>(rng() % 3), static_cast<std::uint32_t>(rng() % 3)};
            if (s.g.contains(e)) s.erase(e);
            else s.insert(e);
        }
        if (s.g.edge_count() > 5) continue;  // keep the enumeration small
        auto valid = all_valid_degree_vectors(s.g, 4);
        std::vector<int> live;
        for (Vertex x = 0; x < s.g.space().size(); ++x) live.push_back(s.h.degree(x));
        EXPECT_TRUE(valid.contains(live)) << "trial " << trial;
    }
}

TEST(WeightedEdcs, FixIncreaseOnSafeVertexIsEmpty) {
    Weighted s(2, 2, 4);
    auto p = s.h.fix_increase(0);
    EXPECT_EQ(p.length(), 0u);
    EXPECT_EQ(p.end_delta, 1);
    EXPECT_EQ(s.h.degree(0), 1);
}

TEST(WeightedEdcs, FindFullThroughOwnedList) {
    Weighted s(2, 2, 4);
    s.insert({0, 0});
    Vertex l = 0, r = s.g.space().right_of({0, 0});
    ASSERT_EQ(s.o.owner({0, 0}), l);
    EXPECT_EQ(s.h.find_full(l), std::optional<Edge>(Edge{0, 0}));  // owned: list scan
    EXPECT_EQ(s.h.find_full(r), std::optional<Edge>(Edge{0, 0}));  // unowned: index
    EXPECT_FALSE(s.h.find_full(1).has_value());
    EXPECT_FALSE(s.h.find_deficient(1).has_value());
}

TEST(WeightedEdcs, FlipMovesIndexEntry) {
    Weighted s(2, 2, 4);
    s.insert({0, 0});
    s.insert({1, 0});
    OrientationDelta d;
    Vertex from = s.o.owner({0, 0});
    Vertex to = s.g.space().other({0, 0}, from);
    d.flips.push_back({{0, 0}, s.g.space().id(to)});
    s.h.apply_orientation(d);
    EXPECT_TRUE(s.h.index_consistent());
    // The edge is still found from both ends.
    EXPECT_EQ(s.h.find_deficient(from).has_value(), s.h.find_deficient(to).has_value());
}

// Exhaustive incident-edge scan used as the oracle for find_full / find_deficient.
std::optional<Edge> scan(const Weighted& s, Vertex x, bool full) {
    for (Vertex y : s.g.neighbors(x)) {
        Edge e = s.g.space().between(x, y);
        int ed = s.h.edge_degree(e);
        if (full ? (s.h.used(e) && ed == s.h.beta()) : ed == s.h.beta() - 1) return e;
    }
    return std::nullopt;
}

TEST(WeightedEdcs, ForestReplayValidEveryStep) {
    harness::StreamSpec spec;
    spec.kind = harness::StreamKind::ForestUnion;
    spec.n_left = 40;
    spec.n_right = 40;
    spec.alpha = 1;
    spec.density = 0.9;
    spec.steps = 2000;
    spec.seed = 8;
    auto stream = harness::generate_stream(spec);
    Weighted s(40, 40, 8, default_arboricity_cap(1, 80));
    std::mt19937_64 rng(2);
    std::size_t lookups = 0;
    for (std::size_t i = 0; i < stream.size(); ++i) {
        const auto& u = stream.updates[i];
        if (u.op == harness::Op::Insert) s.insert(u.edge);
        else s.erase(u.edge);
        ASSERT_TRUE(s.valid()) << "step " << i + 1;
        for (const auto& p : s.h.last_update().paths) {
            ASSERT_LE(p.length(), 2u * 8 + 1);
            ASSERT_TRUE(path_is_simple(p));
            ASSERT_TRUE(path_degrees_distinct_per_side(p));
            ASSERT_TRUE(path_alternates(p));
        }
        for (std::size_t c : s.h.last_update().unit_changes) ASSERT_LE(c, 4u * 8);
        if (i % 4 == 0) {
            Vertex x = static_cast<Vertex>(rng() % 80);
            auto f = s.h.find_full(x);
            auto d = s.h.find_deficient(x);
            EXPECT_EQ(f.has_value(), scan(s, x, true).has_value());
            EXPECT_EQ(d.has_value(), scan(s, x, false).has_value());
            if (f) {
                EXPECT_TRUE(s.h.used(*f) && s.h.edge_degree(*f) == 8);
            }
            if (d) {
                EXPECT_EQ(s.h.edge_degree(*d), 7);
            }
            ++lookups;
        }
    }
    EXPECT_EQ(lookups, 500u);
    EXPECT_TRUE(s.h.index_consistent());
}

TEST(WeightedEdcs, LongPathGraphTeardown) {
    // A long path graph makes fix-up chains run along the path.
    const std::uint32_t n = 30;
    Weighted s(n, n, 4);
    std::vector<Edge> path;
    for (std::uint32_t i = 0; i < n; ++i) {
        path.push_back({i, i});
        if (i + 1 < n) path.push_back({i + 1, i});
    }
    std::size_t longest = 0;
    auto check = [&]() {
        ASSERT_TRUE(s.valid());
        for (const auto& p : s.h.last_update().paths) {
            longest = std::max(longest, p.length());
            ASSERT_LE(p.length(), 9u);
            ASSERT_TRUE(path_degrees_distinct_per_side(p));
        }
    };
    for (Edge e : path) {
        s.insert(e);
        check();
    }
    for (Edge e : path) {
        s.erase(e);
        check();
    }
    EXPECT_GE(longest, 1u);
    EXPECT_TRUE(s.h.index_consistent());
}

}  // namespace
}  // namespace edcs
