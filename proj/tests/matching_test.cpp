#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include <edcs/general_edcs.hpp>
#include <edcs/matching.hpp>
#include <edcs/oracle.hpp>

namespace edcs {
namespace {

bool is_matching_in(const std::vector<Edge>& m, const std::set<Edge>& host) {
    std::set<std::uint32_t> ls, rs;
    for (Edge e : m) {
        if (!host.contains(e)) return false;
        if (!ls.insert(e.left).second || !rs.insert(e.right).second) return false;
    }
    return true;
}

TEST(MaintainedMatching, RebuildOnThreeEdgePath) {
    VertexSpace space(2, 2);
    MaintainedMatching m(space, 0.5, /*greedy=*/false);
    EXPECT_EQ(m.phase_bound(), 2u);
    for (Edge e : {Edge{0, 1}, Edge{0, 0}, Edge{1, 1}}) m.on_h_change({e, true});
    m.rebuild();
    EXPECT_EQ(m.size(), 2u);
    EXPECT_TRUE(m.valid());
}

TEST(MaintainedMatching, GreedyThenAugment) {
    // The greedy pick (L0,R1) blocks both other edges until a rebuild augments.
    VertexSpace space(2, 2);
    MaintainedMatching m(space, 0.5);
    m.on_h_change({{0, 1}, true});
    EXPECT_TRUE(m.matched({0, 1}));
    m.on_h_change({{0, 0}, true});
    m.on_h_change({{1, 1}, true});
    EXPECT_EQ(m.size(), 2u);
}

TEST(MaintainedMatching, EmptyHost) {
    VertexSpace space(3, 3);
    MaintainedMatching m(space, 0.5);
    m.rebuild();
    EXPECT_EQ(m.size(), 0u);
    EXPECT_TRUE(m.current_matching().empty());
}

TEST(MaintainedMatching, GreedyAddAndUnmatchedDelete) {
    VertexSpace space(10, 10);
    MaintainedMatching m(space, 0.9);
    for (std::uint32_t i = 0; i < 8; ++i) {
        m.on_h_change({{i, i}, true});
        EXPECT_TRUE(m.matched({i, i}));
    }
    m.rebuild();
    ASSERT_EQ(m.size(), 8u);
    ASSERT_EQ(m.rebuild_threshold(), 4u);  // ceil(0.45 * 8)

    m.on_h_change({{0, 1}, true});
    EXPECT_FALSE(m.matched({0, 1}));
    EXPECT_EQ(m.updates_since_rebuild(), 1u);
    auto before = m.current_matching();
    m.on_h_change({{0, 1}, false});
    EXPECT_EQ(m.current_matching(), before);
    EXPECT_EQ(m.updates_since_rebuild(), 2u);

    m.on_h_change({{8, 9}, true});
    EXPECT_TRUE(m.matched({8, 9}));
    EXPECT_EQ(m.current_matching().size(), 9u);
}

TEST(MaintainedMatching, RejectsInconsistentChanges) {
    VertexSpace space(2, 2);
    MaintainedMatching m(space, 0.5);
    m.on_h_change({{0, 0}, true});
    EXPECT_THROW(m.on_h_change({{0, 0}, true}), std::invalid_argument);
    EXPECT_THROW(m.on_h_change({{1, 1}, false}), std::invalid_argument);
    EXPECT_THROW(MaintainedMatching(space, 1.0), std::invalid_argument);
}

TEST(MaintainedMatching, RebuildWithinOnePlusEps) {
    std::mt19937_64 rng(13);
    for (double eps : {0.25, 0.5, 0.9}) {
        for (int trial = 0; trial < 200; ++trial) {
            const std::uint32_t n = 12;
            VertexSpace space(n, n);
            MaintainedMatching m(space, eps);
            std::vector<int> deg(2 * n, 0);
            std::vector<Edge> host;
            // Bounded degree 3.
            for (int tries = 0; tries < 60; ++tries) {
                Edge e{static_cast<std::uint32_t>(rng() % n), static_cast<std::uint32_t>(rng() % n)};
                if (m.host_contains(e) || deg[e.left] >= 3 || deg[n + e.right] >= 3) continue;
                ++deg[e.left];
                ++deg[n + e.right];
                host.push_back(e);
                m.on_h_change({e, true});
            }
            m.rebuild();
            auto mu = oracle::hopcroft_karp(n, n, host).mu;
            EXPECT_GE(static_cast<double>(m.size()) * (1.0 + eps), static_cast<double>(mu)) << "trial " << trial;
        }
    }
}

TEST(MaintainedMatching, ValidThroughoutChurn) {
    std::mt19937_64 rng(31);
    const std::uint32_t n = 15;
    VertexSpace space(n, n);
    MaintainedMatching m(space, 0.5);
    std::set<Edge> host;
    std::size_t last_rebuilds = 0;
    for (int step = 0; step < 5000; ++step) {
        Edge e{static_cast<std::uint32_t>(rng() % n), static_cast<std::uint32_t>(rng() % n)};
        bool ins = !host.contains(e);
        if (ins) host.insert(e);
        else host.erase(e);
        m.on_h_change({e, ins});
        ASSERT_TRUE(m.valid());
        auto cur = m.current_matching();
        ASSERT_EQ(cur.size(), m.size());
        ASSERT_TRUE(is_matching_in(cur, host));
        ASSERT_LT(m.updates_since_rebuild(), m.rebuild_threshold());
        if (m.rebuilds() != last_rebuilds) {
            last_rebuilds = m.rebuilds();
            std::vector<Edge> h(host.begin(), host.end());
            auto mu = oracle::hopcroft_karp(n, n, h).mu;
            ASSERT_GE(static_cast<double>(m.size()) * 1.5, static_cast<double>(mu));
        }
    }
    EXPECT_GT(m.rebuilds(), 0u);
}

}  // namespace
}  // namespace edcs
