#ifndef EDCS_ORIENTATION_HPP
#define EDCS_ORIENTATION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "circular_list.hpp"
#include "graph.hpp"

namespace edcs {

/// Ownership of `edge` moved to `new_owner`.
struct FlipEvent {
    Edge edge;
    VertexId new_owner;

    friend bool operator==(const FlipEvent&, const FlipEvent&) = default;
};

struct OrientationDelta {
    /// Flips performed by the incremental scans of this update.
    std::vector<FlipEvent> flips;
    /// Set when the update crossed the edge-count window and every owner was recomputed.
    bool rebuilt = false;
    /// Owner changes caused by the rebuild (not counted as flips).
    std::vector<FlipEvent> reassigned;
};

class CapacityExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class RebuildPolicy { Eager, Staggered };

/// Orientation of a general graph with max load at most 3*sqrt(mBar) and at most
/// ten flips per update.
///
/// mBar is an upper bound on m that stays fixed while m is in [mBar/4, mBar].
/// Leaving the window triggers a rebuild with mBar = max(4, 2m) using the static
/// rule "small vertices own all of their edges".
///
/// Thresholds, all against the fixed mBar:
///   small  : degree < 2 sqrt(mBar)
///   heavy  : load   > 2 sqrt(mBar)
/// New edges go to the small endpoint when exactly one endpoint is small; otherwise to
/// the endpoint with the smaller load, ties to the left endpoint. When a heavy vertex
/// gains an edge it scans 5 of its owned edges and hands those leading to small vertices
/// over. When a small vertex loses an edge it scans 5 incident edges and takes them.
class SqrtOrientation {
public:
    static constexpr std::size_t kScanBudget = 5;

    explicit SqrtOrientation(VertexSpace space, RebuildPolicy policy = RebuildPolicy::Eager)
        : space_(space), owned_(space.size()), incident_(space.size()) {
        if (policy == RebuildPolicy::Staggered) {
            throw std::invalid_argument("staggered orientation rebuild is not implemented");
        }
    }

    const VertexSpace& space() const { return space_; }
    std::size_t m_bar() const { return m_bar_; }
    double load_bound() const { return 3.0 * std::sqrt(static_cast<double>(m_bar_)); }
    std::size_t rebuild_count() const { return rebuilds_; }

    bool has(Edge e) const { return owner_.contains(key_of(e)); }
    Vertex owner(Edge e) const {
        auto it = owner_.find(key_of(e));
        if (it == owner_.end()) throw std::invalid_argument("edge not oriented: " + to_string(e));
        return it->second;
    }
    std::size_t load(Vertex x) const { return owned_[x].size(); }
    std::size_t max_load() const {
        std::size_t best = 0;
        for (const auto& l : owned_) best = std::max(best, l.size());
        return best;
    }
    const CircularList<1>& owned(Vertex x) const { return owned_[x]; }

    bool is_small(const DynBipartiteGraph& g, Vertex x) const {
        auto d = g.degree(x);
        return d * d < 4 * m_bar_;
    }
    bool is_heavy(Vertex x) const {
        auto l = load(x);
        return l * l > 4 * m_bar_;
    }
    bool within_load_bound(std::size_t l) const { return l * l <= 9 * m_bar_; }

    bool needs_rebuild(std::size_t m) const { return m > m_bar_ || (4 * m < m_bar_ && m_bar_ > 4); }

    /// `e` has just been inserted into `g`.
    OrientationDelta on_insert(const DynBipartiteGraph& g, Edge e) {
        if (!g.contains(e) || has(e)) {
            throw std::invalid_argument("orient_insert: edge not newly inserted: " + to_string(e));
        }
        if (needs_rebuild(g.edge_count())) return rebuild(g);

        OrientationDelta delta;
        Vertex l = space_.left_of(e);
        Vertex r = space_.right_of(e);
        Vertex own = choose_owner(g, l, r);
        attach(e, own);
        incident_[l].insert_behind(0, key_of(e));
        incident_[r].insert_behind(0, key_of(e));

        if (is_heavy(own)) {
            for (std::size_t i = 0; i < kScanBudget && !owned_[own].empty(); ++i) {
                Edge f = edge_of(*owned_[own].advance(0));
                Vertex y = space_.other(f, own);
                if (is_small(g, y)) flip(f, y, delta);
            }
        }
        return delta;
    }

    /// `e` has just been deleted from `g`.
    OrientationDelta on_delete(const DynBipartiteGraph& g, Edge e) {
        if (g.contains(e) || !has(e)) {
            throw std::invalid_argument("orient_delete: edge not being deleted: " + to_string(e));
        }
        Vertex l = space_.left_of(e);
        Vertex r = space_.right_of(e);
        detach(e);
        incident_[l].erase(key_of(e));
        incident_[r].erase(key_of(e));
        if (needs_rebuild(g.edge_count())) return rebuild(g);

        OrientationDelta delta;
        for (Vertex x : {l, r}) {
            if (!is_small(g, x)) continue;
            for (std::size_t i = 0; i < kScanBudget && !incident_[x].empty(); ++i) {
                Edge f = edge_of(*incident_[x].advance(0));
                if (owner(f) != x) flip(f, x, delta);
            }
        }
        return delta;
    }

    /// Recomputes every owner with the static rule and resets mBar to max(4, 2m).
    OrientationDelta rebuild(const DynBipartiteGraph& g) {
        OrientationDelta delta;
        delta.rebuilt = true;
        ++rebuilds_;
        auto previous = std::move(owner_);
        owner_.clear();
        for (auto& l : owned_) l.clear();
        for (auto& l : incident_) l.clear();
        m_bar_ = std::max<std::size_t>(4, 2 * g.edge_count());

        for (Edge e : g.edges()) {
            Vertex l = space_.left_of(e);
            Vertex r = space_.right_of(e);
            Vertex own = choose_owner(g, l, r);
            attach(e, own);
            incident_[l].insert_behind(0, key_of(e));
            incident_[r].insert_behind(0, key_of(e));
            auto it = previous.find(key_of(e));
            if (it != previous.end() && it->second != own) {
                delta.reassigned.push_back({e, space_.id(own)});
            }
        }
        return delta;
    }

    /// Full-state audit. Returns human-readable problems; empty means consistent.
    std::vector<std::string> audit(const DynBipartiteGraph& g) const {
        std::vector<std::string> problems;
        std::vector<std::size_t> recount(space_.size(), 0);
        if (owner_.size() != g.edge_count()) problems.push_back("owner map size differs from m");
        for (auto [k, own] : owner_) {
            Edge e = edge_of(k);
            if (!g.contains(e)) problems.push_back("owner recorded for absent edge " + to_string(e));
            if (own != space_.left_of(e) && own != space_.right_of(e)) {
                problems.push_back("owner is not an endpoint of " + to_string(e));
            }
            if (!owned_[own].contains(k)) problems.push_back("owned list misses " + to_string(e));
            ++recount[own];
        }
        for (Vertex x = 0; x < space_.size(); ++x) {
            if (recount[x] != owned_[x].size()) problems.push_back("load bookkeeping off at " + to_string(space_.id(x)));
            if (!within_load_bound(owned_[x].size())) {
                problems.push_back("load " + std::to_string(owned_[x].size()) + " above 3*sqrt(mBar) at " +
                                   to_string(space_.id(x)));
            }
        }
        // No vertex of load > 3 sqrt(mBar) owns an edge to a vertex of degree < sqrt(mBar).
        for (auto [k, own] : owner_) {
            auto l = owned_[own].size();
            if (l * l <= 9 * m_bar_) continue;
            Vertex y = space_.other(edge_of(k), own);
            auto d = g.degree(y);
            if (d * d < m_bar_) problems.push_back("overloaded owner holds edge to low-degree vertex");
        }
        return problems;
    }

private:
    Vertex choose_owner(const DynBipartiteGraph& g, Vertex l, Vertex r) const {
        bool sl = is_small(g, l);
        bool sr = is_small(g, r);
        if (sl != sr) return sl ? l : r;
        return load(r) < load(l) ? r : l;
    }

    void attach(Edge e, Vertex own) {
        owner_.emplace(key_of(e), own);
        owned_[own].insert_behind(0, key_of(e));
    }

    void detach(Edge e) {
        auto it = owner_.find(key_of(e));
        owned_[it->second].erase(key_of(e));
        owner_.erase(it);
    }

    void flip(Edge e, Vertex to, OrientationDelta& delta) {
        detach(e);
        attach(e, to);
        delta.flips.push_back({e, space_.id(to)});
    }

    VertexSpace space_;
    std::size_t m_bar_ = 4;
    std::size_t rebuilds_ = 0;
    std::unordered_map<EdgeKey, Vertex> owner_;
    std::vector<CircularList<1>> owned_;
    std::vector<CircularList<1>> incident_;
};

/// Default load cap for graphs of arboricity at most `alpha` on `n` vertices:
/// 4*alpha + 2*ceil(log2 n).
inline std::size_t default_arboricity_cap(std::size_t alpha, std::size_t n) {
    std::size_t lg = 0;
    while ((std::size_t{1} << lg) < n) ++lg;
    return 4 * alpha + 2 * lg;
}

/// Orientation with a hard load cap for bounded-arboricity graphs.
///
/// New edges go to the lower-load endpoint (ties to the left endpoint). If the owner
/// then exceeds the cap, one of its owned edges leading to a vertex below the cap is
/// flipped; failing that, a breadth-first search along owned edges finds a vertex below
/// the cap and the whole owner path is reversed. Deletions never flip.
class ArbOrientation {
public:
    ArbOrientation(VertexSpace space, std::size_t cap) : space_(space), cap_(cap), owned_(space.size()) {
        if (cap == 0) throw std::invalid_argument("arboricity load cap must be positive");
    }

    const VertexSpace& space() const { return space_; }
    std::size_t cap() const { return cap_; }
    bool has(Edge e) const { return owner_.contains(key_of(e)); }
    Vertex owner(Edge e) const {
        auto it = owner_.find(key_of(e));
        if (it == owner_.end()) throw std::invalid_argument("edge not oriented: " + to_string(e));
        return it->second;
    }
    std::size_t load(Vertex x) const { return owned_[x].size(); }
    std::size_t max_load() const {
        std::size_t best = 0;
        for (const auto& s : owned_) best = std::max(best, s.size());
        return best;
    }
    const std::set<EdgeKey>& owned(Vertex x) const { return owned_[x]; }

    OrientationDelta on_insert(const DynBipartiteGraph& g, Edge e) {
        if (!g.contains(e) || has(e)) {
            throw std::invalid_argument("arb_orient_insert: edge not newly inserted: " + to_string(e));
        }
        OrientationDelta delta;
        Vertex l = space_.left_of(e);
        Vertex r = space_.right_of(e);
        Vertex own = load(r) < load(l) ? r : l;
        attach(e, own);
        if (load(own) > cap_) relieve(own, delta);
        return delta;
    }

    OrientationDelta on_delete(const DynBipartiteGraph& g, Edge e) {
        if (g.contains(e) || !has(e)) {
            throw std::invalid_argument("arb_orient_delete: edge not being deleted: " + to_string(e));
        }
        detach(e);
        return {};
    }

    std::vector<std::string> audit(const DynBipartiteGraph& g) const {
        std::vector<std::string> problems;
        if (owner_.size() != g.edge_count()) problems.push_back("owner map size differs from m");
        for (auto [k, own] : owner_) {
            Edge e = edge_of(k);
            if (!g.contains(e)) problems.push_back("owner recorded for absent edge " + to_string(e));
            if (own != space_.left_of(e) && own != space_.right_of(e)) {
                problems.push_back("owner is not an endpoint of " + to_string(e));
            }
            if (!owned_[own].contains(k)) problems.push_back("owned set misses " + to_string(e));
        }
        for (Vertex x = 0; x < space_.size(); ++x) {
            if (owned_[x].size() > cap_) problems.push_back("load above cap at " + to_string(space_.id(x)));
        }
        return problems;
    }

private:
    void relieve(Vertex v, OrientationDelta& delta) {
        for (EdgeKey k : owned_[v]) {
            Edge f = edge_of(k);
            Vertex y = space_.other(f, v);
            if (load(y) < cap_) {
                flip(f, y, delta);
                return;
            }
        }
        // Reverse an owner path v -> ... -> t ending at a vertex below the cap.
        std::unordered_map<Vertex, EdgeKey> via;
        std::deque<Vertex> frontier{v};
        via.emplace(v, 0);
        while (!frontier.empty()) {
            Vertex x = frontier.front();
            frontier.pop_front();
            for (EdgeKey k : owned_[x]) {
                Vertex y = space_.other(edge_of(k), x);
                if (via.contains(y)) continue;
                via.emplace(y, k);
                if (load(y) < cap_) {
                    std::vector<Edge> path;
                    for (Vertex z = y; z != v;) {
                        Edge f = edge_of(via.at(z));
                        path.push_back(f);
                        z = space_.other(f, z);
                    }
                    for (Edge f : path) {
                        Vertex from = owner(f);
                        flip(f, space_.other(f, from), delta);
                    }
                    return;
                }
                frontier.push_back(y);
            }
        }
        throw CapacityExceeded("no reorientation keeps load <= " + std::to_string(cap_) + " at " +
                               to_string(space_.id(v)));
    }

    void attach(Edge e, Vertex own) {
        owner_.emplace(key_of(e), own);
        owned_[own].insert(key_of(e));
    }

    void detach(Edge e) {
        auto it = owner_.find(key_of(e));
        owned_[it->second].erase(key_of(e));
        owner_.erase(it);
    }

    void flip(Edge e, Vertex to, OrientationDelta& delta) {
        detach(e);
        attach(e, to);
        delta.flips.push_back({e, space_.id(to)});
    }

    VertexSpace space_;
    std::size_t cap_;
    std::unordered_map<EdgeKey, Vertex> owner_;
    std::vector<std::set<EdgeKey>> owned_;
};

}  // namespace edcs

#endif  // EDCS_ORIENTATION_HPP
