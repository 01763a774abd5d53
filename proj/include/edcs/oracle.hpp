#ifndef EDCS_ORACLE_HPP
#define EDCS_ORACLE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"

// Ground-truth computations. Nothing here reads the live dynamic structures: every
// function works from a plain edge list and recomputes what it needs.
namespace edcs::oracle {

struct MatchingResult {
    std::size_t mu = 0;
    std::vector<Edge> matching;
};

/// Classical Hopcroft-Karp maximum matching.
inline MatchingResult hopcroft_karp(std::uint32_t n_left, std::uint32_t n_right, std::span<const Edge> edges) {
    constexpr int kFree = -1;
    constexpr int kInf = std::numeric_limits<int>::max();
    std::vector<std::vector<int>> adj(n_left);
    for (Edge e : edges) adj[e.left].push_back(static_cast<int>(e.right));
    for (auto& a : adj) std::sort(a.begin(), a.end());

    std::vector<int> match_l(n_left, kFree), match_r(n_right, kFree), dist(n_left);

    auto bfs = [&]() {
        std::queue<int> q;
        bool found = false;
        for (std::uint32_t u = 0; u < n_left; ++u) {
            if (match_l[u] == kFree) {
                dist[u] = 0;
                q.push(static_cast<int>(u));
            } else {
                dist[u] = kInf;
            }
        }
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                int w = match_r[v];
                if (w == kFree) {
                    found = true;
                } else if (dist[w] == kInf) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        return found;
    };

    auto dfs = [&](auto&& self, int u) -> bool {
        for (int v : adj[u]) {
            int w = match_r[v];
            if (w == kFree || (dist[w] == dist[u] + 1 && self(self, w))) {
                match_l[u] = v;
                match_r[v] = u;
                return true;
            }
        }
        dist[u] = kInf;
        return false;
    };

    MatchingResult out;
    while (bfs()) {
        for (std::uint32_t u = 0; u < n_left; ++u) {
            if (match_l[u] == kFree && dfs(dfs, static_cast<int>(u))) ++out.mu;
        }
    }
    for (std::uint32_t u = 0; u < n_left; ++u) {
        if (match_l[u] != kFree) out.matching.push_back({u, static_cast<std::uint32_t>(match_l[u])});
    }
    return out;
}

inline MatchingResult hopcroft_karp(const DynBipartiteGraph& g) {
    auto edges = g.edges();
    return hopcroft_karp(g.n_left(), g.n_right(), edges);
}

inline constexpr std::size_t kBruteForceEdgeLimit = 24;

/// Exact maximum matching size by backtracking over left vertices. At most 24 edges.
inline std::size_t brute_force_mu(std::uint32_t n_left, std::uint32_t n_right, std::span<const Edge> edges) {
    if (edges.size() > kBruteForceEdgeLimit) {
        throw std::invalid_argument("brute_force_mu: graph has more than 24 edges");
    }
    std::vector<std::vector<std::uint32_t>> adj(n_left);
    for (Edge e : edges) adj[e.left].push_back(e.right);
    std::vector<bool> taken(n_right, false);
    std::size_t best = 0;
    auto go = [&](auto&& self, std::uint32_t u, std::size_t size) -> void {
        if (size + (n_left - u) <= best) return;
        if (u == n_left) {
            best = std::max(best, size);
            return;
        }
        for (std::uint32_t v : adj[u]) {
            if (taken[v]) continue;
            taken[v] = true;
            self(self, u + 1, size + 1);
            taken[v] = false;
        }
        self(self, u + 1, size);
    };
    go(go, 0, 0);
    return best;
}

inline std::size_t brute_force_mu(const DynBipartiteGraph& g) {
    auto edges = g.edges();
    return brute_force_mu(g.n_left(), g.n_right(), edges);
}

enum class Constraint { P1, P2, Weight, NotInGraph };

inline const char* to_string(Constraint c) {
    switch (c) {
        case Constraint::P1: return "P1";
        case Constraint::P2: return "P2";
        case Constraint::Weight: return "weight";
        case Constraint::NotInGraph: return "not-in-graph";
    }
    return "?";
}

struct Violation {
    Edge edge;
    Constraint constraint;
    long long observed;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;

    void add(Edge e, Constraint c, long long observed) {
        ok = false;
        violations.push_back({e, c, observed});
    }
};

/// Unweighted EDCS(G, beta, beta(1 - lambda)): used edges have degree sum <= beta, unused
/// edges of G have degree sum >= beta(1 - lambda). Degrees are recomputed from `h`.
inline ValidationReport validate_edcs_unweighted(const DynBipartiteGraph& g, std::span<const Edge> h, int beta,
                                                 double lambda) {
    ValidationReport report;
    const auto& space = g.space();
    std::vector<long long> deg(space.size(), 0);
    std::vector<Edge> used(h.begin(), h.end());
    std::sort(used.begin(), used.end());
    for (Edge e : used) {
        if (!g.contains(e)) report.add(e, Constraint::NotInGraph, 0);
        ++deg[space.left_of(e)];
        ++deg[space.right_of(e)];
    }
    const double lower = beta * (1.0 - lambda);
    for (Edge e : g.edges()) {
        long long ed = deg[space.left_of(e)] + deg[space.right_of(e)];
        bool in_h = std::binary_search(used.begin(), used.end(), e);
        if (in_h && ed > beta) report.add(e, Constraint::P1, ed);
        if (!in_h && static_cast<double>(ed) + 1e-9 < lower) report.add(e, Constraint::P2, ed);
    }
    return report;
}

/// Weighted EDCS(G, beta, beta - 1): weights in [1, beta] on used edges, used edges have
/// weighted degree sum <= beta, and every edge of G has weighted degree sum >= beta - 1.
inline ValidationReport validate_edcs_weighted(const DynBipartiteGraph& g,
                                               std::span<const std::pair<Edge, int>> weights, int beta) {
    ValidationReport report;
    const auto& space = g.space();
    std::vector<long long> deg(space.size(), 0);
    std::vector<std::pair<Edge, int>> w(weights.begin(), weights.end());
    std::sort(w.begin(), w.end());
    for (auto [e, x] : w) {
        if (!g.contains(e)) report.add(e, Constraint::NotInGraph, x);
        if (x < 0 || x > beta) report.add(e, Constraint::Weight, x);
        deg[space.left_of(e)] += x;
        deg[space.right_of(e)] += x;
    }
    for (Edge e : g.edges()) {
        long long ed = deg[space.left_of(e)] + deg[space.right_of(e)];
        auto it = std::lower_bound(w.begin(), w.end(), std::pair<Edge, int>{e, std::numeric_limits<int>::min()});
        bool used = it != w.end() && it->first == e && it->second > 0;
        if (used && ed > beta) report.add(e, Constraint::P1, ed);
        if (ed < beta - 1) report.add(e, Constraint::P2, ed);
    }
    return report;
}

struct Ratio {
    std::size_t mu = 0;
    std::size_t matching = 0;

    /// mu / max(1, matching)
    double value() const { return static_cast<double>(mu) / static_cast<double>(std::max<std::size_t>(1, matching)); }
};

inline Ratio approx_ratio(const DynBipartiteGraph& g, std::size_t matching_size) {
    return {hopcroft_karp(g).mu, matching_size};
}

}  // namespace edcs::oracle

#endif  // EDCS_ORACLE_HPP
