#ifndef EDCS_MATCHING_HPP
#define EDCS_MATCHING_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "general_edcs.hpp"
#include "graph.hpp"

namespace edcs {

/// Grows `mate` by shortest-augmenting-path phases until no augmenting path of at most
/// `max_length` edges remains. `adj` lists right neighbors (flat ids) of every vertex;
/// only left entries are read. Returns the number of augmentations.
inline std::size_t augment_short_paths(const VertexSpace& space, const std::vector<std::set<Vertex>>& adj,
                                       std::vector<std::int64_t>& mate, std::size_t max_length) {
    constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
    const std::size_t nl = space.n_left();
    std::vector<std::size_t> dist(nl);
    std::size_t augmentations = 0;

    for (;;) {
        std::deque<Vertex> queue;
        for (Vertex u = 0; u < nl; ++u) {
            if (mate[u] < 0) {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = kInf;
            }
        }
        std::size_t shortest = kInf;  // layer of the left end of a shortest augmenting path
        while (!queue.empty()) {
            Vertex u = queue.front();
            queue.pop_front();
            if (dist[u] >= shortest) continue;
            for (Vertex v : adj[u]) {
                auto w = mate[v];
                if (w < 0) {
                    shortest = std::min(shortest, dist[u]);
                } else if (dist[w] == kInf) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(static_cast<Vertex>(w));
                }
            }
        }
        if (shortest == kInf || 2 * shortest + 1 > max_length) break;

        // Vertex-disjoint shortest augmenting paths along the layers.
        std::vector<std::size_t> next(nl, 0);
        std::vector<std::vector<Vertex>> nbrs(nl);
        for (Vertex u = 0; u < nl; ++u) nbrs[u].assign(adj[u].begin(), adj[u].end());
        auto dfs = [&](auto&& self, Vertex u) -> bool {
            for (; next[u] < nbrs[u].size(); ++next[u]) {
                Vertex v = nbrs[u][next[u]];
                auto w = mate[v];
                bool ok = false;
                if (w < 0) {
                    ok = dist[u] == shortest;
                } else if (dist[w] == dist[u] + 1 && dist[w] <= shortest) {
                    ok = self(self, static_cast<Vertex>(w));
                }
                if (ok) {
                    mate[u] = v;
                    mate[v] = u;
                    ++next[u];
                    return true;
                }
            }
            dist[u] = kInf;
            return false;
        };
        std::size_t found = 0;
        for (Vertex u = 0; u < nl; ++u) {
            if (mate[u] < 0 && dist[u] == 0 && dfs(dfs, u)) ++found;
        }
        augmentations += found;
        if (found == 0) break;
    }
    return augmentations;
}

/// (1+eps)-approximate maximum matching of a bounded-degree host H, maintained under
/// single-edge changes of H.
///
/// Deleted matched edges leave M, inserted edges between free vertices join M greedily,
/// and after ceil((eps/2) * max(1, |M at last rebuild|)) changes M is regrown by
/// augmenting paths of at most 2k-1 edges, k = ceil(1/eps).
class MaintainedMatching {
public:
    MaintainedMatching(VertexSpace space, double eps, bool greedy = true)
        : space_(space), eps_(eps), greedy_(greedy), adj_(space.size()), mate_(space.size(), -1) {
        if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("matching eps must lie in (0, 1)");
        k_ = static_cast<std::size_t>(std::ceil(1.0 / eps - 1e-12));
        reset_threshold();
    }

    double eps() const { return eps_; }
    std::size_t phase_bound() const { return k_; }
    std::size_t size() const { return size_; }
    std::size_t rebuilds() const { return rebuilds_; }
    std::size_t updates_since_rebuild() const { return updates_; }
    std::size_t size_at_rebuild() const { return size_at_rebuild_; }
    std::size_t rebuild_threshold() const { return threshold_; }

    bool host_contains(Edge e) const { return adj_[space_.left_of(e)].contains(space_.right_of(e)); }
    bool matched(Edge e) const { return mate_[space_.left_of(e)] == static_cast<std::int64_t>(space_.right_of(e)); }

    void on_h_change(const HChange& change) {
        Edge e = change.edge;
        Vertex l = space_.left_of(e);
        Vertex r = space_.right_of(e);
        if (change.inserted) {
            if (host_contains(e)) throw std::invalid_argument("H insert of present edge " + to_string(e));
            adj_[l].insert(r);
            adj_[r].insert(l);
            if (greedy_ && mate_[l] < 0 && mate_[r] < 0) link(l, r);
        } else {
            if (!host_contains(e)) throw std::invalid_argument("H delete of absent edge " + to_string(e));
            if (matched(e)) unlink(l, r);
            adj_[l].erase(r);
            adj_[r].erase(l);
        }
        if (++updates_ >= threshold_) rebuild();
    }

    void rebuild() {
        size_ += augment_short_paths(space_, adj_, mate_, 2 * k_ - 1);
        ++rebuilds_;
        size_at_rebuild_ = size_;
        updates_ = 0;
        reset_threshold();
    }

    std::vector<Edge> current_matching() const {
        std::vector<Edge> out;
        for (Vertex l = 0; l < space_.n_left(); ++l) {
            if (mate_[l] >= 0) out.push_back(space_.between(l, static_cast<Vertex>(mate_[l])));
        }
        return out;
    }

    /// M is a matching, contained in H, with consistent mate pointers.
    bool valid() const {
        std::size_t count = 0;
        for (Vertex x = 0; x < space_.size(); ++x) {
            auto y = mate_[x];
            if (y < 0) continue;
            if (mate_[y] != static_cast<std::int64_t>(x)) return false;
            if (!adj_[x].contains(static_cast<Vertex>(y))) return false;
            if (space_.is_left(x)) ++count;
        }
        return count == size_;
    }

private:
    void link(Vertex l, Vertex r) {
        mate_[l] = r;
        mate_[r] = l;
        ++size_;
    }
    void unlink(Vertex l, Vertex r) {
        mate_[l] = -1;
        mate_[r] = -1;
        --size_;
    }
    void reset_threshold() {
        double base = static_cast<double>(std::max<std::size_t>(1, size_at_rebuild_));
        threshold_ = static_cast<std::size_t>(std::ceil(eps_ / 2.0 * base - 1e-12));
        if (threshold_ == 0) threshold_ = 1;
    }

    VertexSpace space_;
    double eps_;
    bool greedy_;
    std::size_t k_ = 1;
    std::vector<std::set<Vertex>> adj_;
    std::vector<std::int64_t> mate_;
    std::size_t size_ = 0;
    std::size_t size_at_rebuild_ = 0;
    std::size_t updates_ = 0;
    std::size_t threshold_ = 1;
    std::size_t rebuilds_ = 0;
};

}  // namespace edcs

#endif  // EDCS_MATCHING_HPP
