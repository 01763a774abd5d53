#ifndef EDCS_WEIGHTED_EDCS_HPP
#define EDCS_WEIGHTED_EDCS_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "orientation.hpp"
#include "path.hpp"

namespace edcs {

struct WeightDelta {
    Edge edge;
    int delta;

    friend bool operator==(const WeightDelta&, const WeightDelta&) = default;
};

enum class EdgeClass { Full, Deficient, Neither };

/// Weighted EDCS(G, beta, beta - 1).
///
/// Every used edge (weight >= 1) has edge degree <= beta and every edge of G has edge
/// degree >= beta - 1. An edge of weight w stands for w parallel copies, so weight changes
/// happen one unit at a time and are repaired with alternating full/deficient paths.
///
/// Each vertex indexes its unowned incident edges by the exact H-degree of the neighbor,
/// once over all such edges (deficient lookups) and once over used ones (full lookups).
/// Owned edges are scanned directly, so lookups cost O(load).
class WeightedEdcs {
public:
    struct UpdateStats {
        std::vector<AlternatingPath> paths;
        /// Weight changes per unit operation (one copy added or removed).
        std::vector<std::size_t> unit_changes;
        std::size_t total_changes = 0;
    };

    WeightedEdcs(VertexSpace space, int beta)
        : space_(space), beta_(beta), degree_(space.size(), 0), owned_(space.size()),
          all_index_(space.size()), used_index_(space.size()) {
        if (beta < 2) throw std::invalid_argument("weighted EDCS needs beta >= 2");
        for (Vertex x = 0; x < space.size(); ++x) {
            all_index_[x].resize(beta + 1);
            used_index_[x].resize(beta + 1);
        }
    }

    const VertexSpace& space() const { return space_; }
    int beta() const { return beta_; }
    int degree(Vertex x) const { return degree_[x]; }
    bool knows(Edge e) const { return edges_.contains(key_of(e)); }
    int weight(Edge e) const {
        auto it = edges_.find(key_of(e));
        return it == edges_.end() ? 0 : it->second.weight;
    }
    bool used(Edge e) const { return weight(e) >= 1; }
    int edge_degree(Edge e) const { return degree_[space_.left_of(e)] + degree_[space_.right_of(e)]; }
    const UpdateStats& last_update() const { return stats_; }

    /// Snapshot of all used edges with their weights, sorted by edge.
    std::vector<std::pair<Edge, int>> weights() const {
        std::vector<std::pair<Edge, int>> out;
        for (const auto& [k, s] : edges_) {
            if (s.weight > 0) out.emplace_back(edge_of(k), s.weight);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    EdgeClass classify(Edge e) const {
        if (!knows(e)) throw std::invalid_argument("classify: edge not in G: " + to_string(e));
        int ed = edge_degree(e);
        if (used(e) && ed == beta_) return EdgeClass::Full;
        if (ed == beta_ - 1) return EdgeClass::Deficient;
        return EdgeClass::Neither;
    }

    /// Moves index entries for orientation changes of edges this structure already tracks.
    void apply_orientation(const OrientationDelta& delta) {
        for (const auto& f : delta.flips) {
            if (knows(f.edge)) set_owner(f.edge, space_.flat(f.new_owner));
        }
        for (const auto& f : delta.reassigned) {
            if (knows(f.edge)) set_owner(f.edge, space_.flat(f.new_owner));
        }
    }

    /// `e` was inserted into G and is owned by `owner`.
    std::vector<WeightDelta> on_graph_insert(Edge e, Vertex owner) {
        if (knows(e)) throw std::invalid_argument("on_graph_insert: edge already tracked: " + to_string(e));
        begin_update();
        register_edge(e, owner);
        Vertex l = space_.left_of(e);
        Vertex r = space_.right_of(e);
        int rounds = 0;
        while (edge_degree(e) < beta_ - 1) {
            if (++rounds > beta_) throw InvariantBreach("weighted insertion loop exceeded beta rounds");
            std::size_t before = deltas_.size();
            change_weight(e, +1);
            fix(l, +1);
            fix(r, +1);
            stats_.unit_changes.push_back(deltas_.size() - before);
        }
        return finish_update();
    }

    /// `e` was deleted from G.
    std::vector<WeightDelta> on_graph_delete(Edge e) {
        if (!knows(e)) throw std::invalid_argument("on_graph_delete: edge not tracked: " + to_string(e));
        begin_update();
        int w = weight(e);
        Vertex l = space_.left_of(e);
        Vertex r = space_.right_of(e);
        unregister_edge(e);
        for (int i = 0; i < w; ++i) {
            std::size_t before = deltas_.size();
            deltas_.push_back({e, -1});
            fix(l, -1);
            fix(r, -1);
            stats_.unit_changes.push_back(deltas_.size() - before);
        }
        return finish_update();
    }

    /// `x` must absorb one more unit of degree. Returns the applied path (empty if x was
    /// increase-safe).
    AlternatingPath fix_increase(Vertex x) { return fix(x, +1); }
    /// `x` must give up one unit of degree.
    AlternatingPath fix_decrease(Vertex x) { return fix(x, -1); }

    std::optional<Edge> find_full(Vertex x) const {
        int key = beta_ - degree_[x];
        if (key >= 0 && key <= beta_ && !used_index_[x][key].empty()) {
            return space_.between(x, *used_index_[x][key].begin());
        }
        for (EdgeKey k : owned_[x]) {
            Edge f = edge_of(k);
            if (edges_.at(k).weight >= 1 && edge_degree(f) == beta_) return f;
        }
        return std::nullopt;
    }

    std::optional<Edge> find_deficient(Vertex x) const {
        int key = beta_ - 1 - degree_[x];
        if (key >= 0 && key <= beta_ && !all_index_[x][key].empty()) {
            return space_.between(x, *all_index_[x][key].begin());
        }
        for (EdgeKey k : owned_[x]) {
            Edge f = edge_of(k);
            if (edge_degree(f) == beta_ - 1) return f;
        }
        return std::nullopt;
    }

    /// Rebuilds the neighbor indexes and degree table from (owner, weight) and compares them
    /// with the live ones.
    bool index_consistent() const {
        std::vector<int> deg(space_.size(), 0);
        std::vector<std::vector<std::set<Vertex>>> all(space_.size()), usedx(space_.size());
        std::vector<std::set<EdgeKey>> owned(space_.size());
        for (Vertex x = 0; x < space_.size(); ++x) {
            all[x].resize(beta_ + 1);
            usedx[x].resize(beta_ + 1);
        }
        for (const auto& [k, s] : edges_) {
            Edge e = edge_of(k);
            deg[space_.left_of(e)] += s.weight;
            deg[space_.right_of(e)] += s.weight;
            owned[s.owner].insert(k);
        }
        if (deg != degree_ || owned != owned_) return false;
        for (const auto& [k, s] : edges_) {
            Vertex holder = space_.other(edge_of(k), s.owner);
            all[holder][deg[s.owner]].insert(s.owner);
            if (s.weight > 0) usedx[holder][deg[s.owner]].insert(s.owner);
        }
        return all == all_index_ && usedx == used_index_;
    }

private:
    struct EdgeState {
        int weight = 0;
        Vertex owner = 0;
    };

    void begin_update() {
        stats_ = {};
        deltas_.clear();
    }

    std::vector<WeightDelta> finish_update() {
        stats_.total_changes = deltas_.size();
        return std::move(deltas_);
    }

    Vertex holder_of(Edge e, Vertex owner) const { return space_.other(e, owner); }

    void register_edge(Edge e, Vertex owner) {
        edges_.emplace(key_of(e), EdgeState{0, owner});
        owned_[owner].insert(key_of(e));
        all_index_[holder_of(e, owner)][degree_[owner]].insert(owner);
    }

    void unregister_edge(Edge e) {
        auto it = edges_.find(key_of(e));
        EdgeState s = it->second;
        Vertex holder = holder_of(e, s.owner);
        all_index_[holder][degree_[s.owner]].erase(s.owner);
        if (s.weight > 0) used_index_[holder][degree_[s.owner]].erase(s.owner);
        owned_[s.owner].erase(key_of(e));
        edges_.erase(it);
    }

    void set_owner(Edge e, Vertex owner) {
        auto& s = edges_.at(key_of(e));
        if (s.owner == owner) return;
        int w = s.weight;
        unregister_edge(e);
        register_edge(e, owner);
        if (w > 0) {
            edges_.at(key_of(e)).weight = w;
            used_index_[holder_of(e, owner)][degree_[owner]].insert(owner);
        }
    }

    void change_weight(Edge e, int delta) {
        auto& s = edges_.at(key_of(e));
        int before = s.weight;
        s.weight += delta;
        if (s.weight < 0 || s.weight > beta_) {
            throw InvariantBreach("weight out of [0, beta] on " + to_string(e));
        }
        Vertex holder = holder_of(e, s.owner);
        if (before == 0 && s.weight > 0) used_index_[holder][degree_[s.owner]].insert(s.owner);
        if (before > 0 && s.weight == 0) used_index_[holder][degree_[s.owner]].erase(s.owner);
        deltas_.push_back({e, delta});
    }

    void change_degree(Vertex x, int delta) {
        int before = degree_[x];
        int after = before + delta;
        if (after < 0 || after > beta_) throw InvariantBreach("H-degree out of [0, beta] at " + to_string(space_.id(x)));
        degree_[x] = after;
        for (EdgeKey k : owned_[x]) {
            Vertex holder = space_.other(edge_of(k), x);
            all_index_[holder][before].erase(x);
            all_index_[holder][after].insert(x);
            if (edges_.at(k).weight > 0) {
                used_index_[holder][before].erase(x);
                used_index_[holder][after].insert(x);
            }
        }
    }

    AlternatingPath fix(Vertex x, int need) {
        AlternatingPath path;
        path.start_need = need;
        path.vertices.push_back(x);
        path.degrees.push_back(degree_[x]);
        Vertex cur = x;
        const std::size_t limit = 2 * static_cast<std::size_t>(beta_) + 1;
        for (;;) {
            auto next = need > 0 ? find_full(cur) : find_deficient(cur);
            if (!next) break;
            int action = need > 0 ? -1 : +1;
            change_weight(*next, action);
            cur = space_.other(*next, cur);
            path.edges.push_back(*next);
            path.actions.push_back(action);
            path.vertices.push_back(cur);
            path.degrees.push_back(degree_[cur]);
            need = -need;
            if (path.edges.size() > limit) throw InvariantBreach("alternating path longer than 2*beta+1");
        }
        path.end_delta = need;
        change_degree(cur, need);
        stats_.paths.push_back(path);
        return path;
    }

    VertexSpace space_;
    int beta_;
    std::vector<int> degree_;
    std::unordered_map<EdgeKey, EdgeState> edges_;
    std::vector<std::set<EdgeKey>> owned_;
    std::vector<std::vector<std::set<Vertex>>> all_index_;
    std::vector<std::vector<std::set<Vertex>>> used_index_;
    std::vector<WeightDelta> deltas_;
    UpdateStats stats_;
};

}  // namespace edcs

#endif  // EDCS_WEIGHTED_EDCS_HPP
