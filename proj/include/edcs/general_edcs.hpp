#ifndef EDCS_GENERAL_EDCS_HPP
#define EDCS_GENERAL_EDCS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "circular_list.hpp"
#include "graph.hpp"
#include "orientation.hpp"
#include "path.hpp"

namespace edcs {

/// Parameters of an unweighted EDCS(G, beta, beta(1 - lambda)).
///
/// lambda*beta must be a positive multiple of 6; ell = lambda*beta/6 is the width of a
/// range and of a bucket, and beta/ell = 6/lambda is the bucket count.
struct GeneralParams {
    int beta = 0;
    int ell = 0;

    static GeneralParams make(int beta, double lambda) {
        if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("lambda must lie in (0, 1)");
        double lb = lambda * beta;
        double rounded = std::round(lb);
        if (std::abs(lb - rounded) > 1e-9 || rounded < 6 || static_cast<long long>(rounded) % 6 != 0) {
            throw std::invalid_argument("lambda*beta must be a positive multiple of 6");
        }
        return from_ell(beta, static_cast<int>(rounded) / 6);
    }

    static GeneralParams from_ell(int beta, int ell) {
        if (ell < 1 || beta <= 6 * ell) throw std::invalid_argument("need 1 <= ell and 6*ell < beta");
        if (beta % ell != 0) throw std::invalid_argument("6/lambda = beta/ell must be integral");
        return {beta, ell};
    }

    double lambda() const { return 6.0 * ell / beta; }
    /// beta(1 - lambda): the P2 floor for unused edges.
    int floor() const { return beta - 6 * ell; }
    int bucket_count() const { return beta / ell; }
    /// 12/lambda + 1
    std::size_t max_path_length() const { return static_cast<std::size_t>(2 * beta / ell + 1); }
    /// 24/lambda + 2
    std::size_t max_changes_per_update() const { return static_cast<std::size_t>(4 * beta / ell + 2); }
};

/// Range label F0..F7 of an edge degree.
///
/// F0 below beta(1-lambda); F7 at beta and above; F1..F6 split [beta(1-lambda), beta] into
/// closed intervals of width ell, shared endpoints going to the lower index.
inline int range_of(const GeneralParams& p, int edge_degree) {
    if (edge_degree < 0 || edge_degree > 2 * p.beta) {
        throw std::out_of_range("edge degree " + std::to_string(edge_degree) + " outside [0, 2*beta]");
    }
    if (edge_degree < p.floor()) return 0;
    if (edge_degree >= p.beta) return 7;
    int offset = edge_degree - p.floor();
    return std::max(1, (offset + p.ell - 1) / p.ell);
}

struct HChange {
    Edge edge;
    bool inserted;

    friend bool operator==(const HChange&, const HChange&) = default;
};

/// Unweighted EDCS maintained over a 3*sqrt(mBar) orientation.
///
/// A vertex u keeps every unused edge (u, v) that v owns in a bucket keyed by u's estimate
/// of d_H(v). Owners push their exact degree to r = ceil(3 sqrt(mBar) / ell) owned edges per
/// degree change (information pointer) and re-examine r owned edges exactly when looking
/// for an augmentable edge fails in the buckets (repair pointer). Full edges are found by
/// scanning the at most beta H-edges of a vertex.
class GeneralEdcs {
public:
    static constexpr std::size_t kInfo = 0;
    static constexpr std::size_t kRepair = 1;
    static constexpr int kProbeWindow = 8;

    struct UpdateStats {
        std::vector<AlternatingPath> paths;
        std::size_t total_changes = 0;
    };

    /// Counters for the per-step consequences of the estimate/bucket invariants.
    struct AuditCounters {
        std::size_t window_misses = 0;      // augmentable held edge outside the probe window on a FAIL
        std::size_t pick_too_high = 0;      // bucket pick w with d(w) > d(v) + 3*ell for some held v
        std::size_t unsafe_decreases = 0;   // degree decrease while a held edge was augmentable in F1..F2
        std::size_t short_repair_scans = 0; // decrease not preceded by a repair scan of min(r, load)
    };

    GeneralEdcs(VertexSpace space, GeneralParams params)
        : space_(space), params_(params), degree_(space.size(), 0), h_adj_(space.size()),
          owned_(space.size()), buckets_(space.size()) {
        for (auto& b : buckets_) b.resize(params_.bucket_count());
        set_m_bar(4);
    }

    const VertexSpace& space() const { return space_; }
    const GeneralParams& params() const { return params_; }
    std::size_t r() const { return r_; }
    std::size_t m_bar() const { return m_bar_; }
    int degree(Vertex x) const { return degree_[x]; }
    bool knows(Edge e) const { return edges_.contains(key_of(e)); }
    bool used(Edge e) const {
        auto it = edges_.find(key_of(e));
        return it != edges_.end() && it->second.used;
    }
    int edge_degree(Edge e) const { return degree_[space_.left_of(e)] + degree_[space_.right_of(e)]; }
    int range(Edge e) const { return range_of(params_, edge_degree(e)); }
    bool augmentable(Edge e) const { return knows(e) && !used(e) && range(e) <= 5; }
    const UpdateStats& last_update() const { return stats_; }
    const AuditCounters& audit_counters() const { return audits_; }
    void set_auditing(bool on) { auditing_ = on; }
    const CircularList<2>& owned(Vertex x) const { return owned_[x]; }

    std::vector<Edge> used_edges() const {
        std::vector<Edge> out;
        for (Vertex l = 0; l < space_.n_left(); ++l) {
            for (Vertex r : h_adj_[l]) out.push_back(space_.between(l, r));
        }
        return out;
    }

    /// u's stored estimate of the owner's degree for edge e (u = the non-owner).
    int estimate(Edge e) const { return edges_.at(key_of(e)).estimate; }
    Vertex owner(Edge e) const { return edges_.at(key_of(e)).owner; }

    /// Moves index entries for flips; on a rebuild, re-derives owners, lists and buckets.
    void apply_orientation(const OrientationDelta& delta, const SqrtOrientation& orientation) {
        if (delta.rebuilt) {
            resync(orientation);
        } else {
            for (const auto& f : delta.flips) {
                if (knows(f.edge)) on_flip(f);
            }
        }
    }

    /// Ownership of a tracked edge moved; the H membership is left alone.
    void on_flip(const FlipEvent& flip) {
        auto& s = edges_.at(key_of(flip.edge));
        Vertex to = space_.flat(flip.new_owner);
        if (s.owner == to) return;
        detach(flip.edge);
        s.owner = to;
        attach(flip.edge);
    }

    /// Re-derives owners from the orientation and rebuilds lists and buckets with exact
    /// estimates. Edges unknown to the orientation keep their current owner.
    void resync(const SqrtOrientation& orientation) {
        set_m_bar(orientation.m_bar());
        for (auto& l : owned_) l.clear();
        for (auto& bs : buckets_) {
            for (auto& b : bs) b.clear();
        }
        std::vector<EdgeKey> keys;
        keys.reserve(edges_.size());
        for (const auto& [k, s] : edges_) keys.push_back(k);
        std::sort(keys.begin(), keys.end());
        for (EdgeKey k : keys) {
            auto& s = edges_.at(k);
            Edge e = edge_of(k);
            if (orientation.has(e)) s.owner = orientation.owner(e);
            attach(e);
        }
    }

    /// `e` was inserted into G and is owned by `owner`.
    std::vector<HChange> on_graph_insert(Edge e, Vertex owner) {
        if (knows(e)) throw std::invalid_argument("on_graph_insert: edge already tracked: " + to_string(e));
        begin_update();
        edges_.emplace(key_of(e), EdgeState{false, owner, 0});
        attach(e);
        if (edge_degree(e) < params_.floor()) {
            set_used(e, true);
            fix(space_.left_of(e), +1);
            fix(space_.right_of(e), +1);
        }
        return finish_update();
    }

    /// `e` was deleted from G.
    std::vector<HChange> on_graph_delete(Edge e) {
        if (!knows(e)) throw std::invalid_argument("on_graph_delete: edge not tracked: " + to_string(e));
        begin_update();
        bool was_used = used(e);
        if (was_used) set_used(e, false);
        detach(e);
        edges_.erase(key_of(e));
        if (was_used) {
            fix(space_.left_of(e), -1);
            fix(space_.right_of(e), -1);
        }
        return finish_update();
    }

    AlternatingPath fix_increase(Vertex x) { return fix(x, +1); }
    AlternatingPath fix_decrease(Vertex x) { return fix(x, -1); }

    /// An H-edge at x with edge degree exactly beta, by exact scan of x's H-edges.
    std::optional<Edge> find_full(Vertex x) const {
        for (Vertex y : h_adj_[x]) {
            if (degree_[x] + degree_[y] == params_.beta) return space_.between(x, y);
        }
        return std::nullopt;
    }

    /// Index of the bucket holding estimate `est`.
    int bucket_of(int est) const {
        return std::clamp(est / params_.ell, 0, params_.bucket_count() - 1);
    }

    /// First bucket probed for x: the one containing beta(1-lambda) - ell - d_H(x).
    int probe_start(Vertex x) const {
        int s = params_.floor() - params_.ell - degree_[x];
        return s < 0 ? 0 : bucket_of(s);
    }

    /// Picks the smallest neighbor in the first non-empty probed bucket and returns the
    /// edge only if it is augmentable by its exact degree. May miss existing augmentable
    /// edges when estimates are stale.
    std::optional<Edge> find_augmentable(Vertex x) {
        int first = probe_start(x);
        int last = std::min(first + kProbeWindow - 1, params_.bucket_count() - 1);
        for (int i = first; i <= last; ++i) {
            if (buckets_[x][i].empty()) continue;
            Vertex w = *buckets_[x][i].begin();
            Edge e = space_.between(x, w);
            if (auditing_) audit_pick(x, w);
            if (augmentable(e)) return e;
            break;
        }
        if (auditing_) audit_window(x, first, last);
        return std::nullopt;
    }

    /// Examines the next min(r, load) owned edges from the repair pointer.
    std::optional<Edge> repair_scan(Vertex x) {
        auto& list = owned_[x];
        std::size_t budget = std::min(r_, list.size());
        last_repair_scan_ = {x, budget};
        for (std::size_t i = 0; i < budget; ++i) {
            Edge e = edge_of(*list.advance(kRepair));
            if (augmentable(e)) return e;
        }
        return std::nullopt;
    }

    /// Pushes d_H(x) to the next min(r, load) owned edges from the information pointer.
    void information_update(Vertex x) {
        auto& list = owned_[x];
        std::size_t budget = std::min(r_, list.size());
        for (std::size_t i = 0; i < budget; ++i) {
            EdgeKey k = *list.advance(kInfo);
            auto& s = edges_.at(k);
            if (s.estimate == degree_[x]) continue;
            Vertex holder = space_.other(edge_of(k), x);
            if (!s.used) buckets_[holder][bucket_of(s.estimate)].erase(x);
            s.estimate = degree_[x];
            if (!s.used) buckets_[holder][bucket_of(s.estimate)].insert(x);
        }
    }

    /// x ends a path: its degree absorbs `delta`, then it informs its owned neighbors.
    void end_of_path(Vertex x, int delta) {
        if (auditing_ && delta < 0) audit_decrease(x);
        int after = degree_[x] + delta;
        if (after < 0 || after > params_.beta) {
            throw InvariantBreach("H-degree out of [0, beta] at " + to_string(space_.id(x)));
        }
        degree_[x] = after;
        information_update(x);
    }

    /// Number of owned edges whose stored estimate is off by more than ell.
    std::size_t estimate_violations() const {
        std::size_t bad = 0;
        for (const auto& [k, s] : edges_) {
            if (std::abs(s.estimate - degree_[s.owner]) > params_.ell) ++bad;
        }
        return bad;
    }

    /// Rebuilds degrees, H adjacency, owned-list membership and buckets from the per-edge
    /// records and compares them with the live structures.
    bool index_consistent() const {
        std::vector<int> deg(space_.size(), 0);
        std::vector<std::set<Vertex>> adj(space_.size());
        std::vector<std::vector<std::set<Vertex>>> buckets(space_.size());
        for (auto& b : buckets) b.resize(params_.bucket_count());
        std::vector<std::size_t> load(space_.size(), 0);
        for (const auto& [k, s] : edges_) {
            Edge e = edge_of(k);
            Vertex l = space_.left_of(e);
            Vertex r = space_.right_of(e);
            if (s.used) {
                ++deg[l];
                ++deg[r];
                adj[l].insert(r);
                adj[r].insert(l);
            } else {
                buckets[space_.other(e, s.owner)][bucket_of(s.estimate)].insert(s.owner);
            }
            if (!owned_[s.owner].contains(k)) return false;
            ++load[s.owner];
        }
        for (Vertex x = 0; x < space_.size(); ++x) {
            if (owned_[x].size() != load[x]) return false;
        }
        return deg == degree_ && adj == h_adj_ && buckets == buckets_;
    }

private:
    friend struct GeneralEdcsTestAccess;

    struct EdgeState {
        bool used = false;
        Vertex owner = 0;
        int estimate = 0;
    };

    void set_m_bar(std::size_t m_bar) {
        m_bar_ = m_bar;
        // smallest r with r*ell >= 3*sqrt(mBar)
        std::size_t r = 1;
        auto ell = static_cast<std::size_t>(params_.ell);
        while (r * ell * r * ell < 9 * m_bar_) ++r;
        r_ = r;
    }

    void begin_update() {
        stats_ = {};
        changes_.clear();
    }

    std::vector<HChange> finish_update() {
        stats_.total_changes = changes_.size();
        return std::move(changes_);
    }

    /// Adds e to its owner's list (behind the information pointer) with an exact estimate,
    /// and to the holder's bucket if unused.
    void attach(Edge e) {
        auto& s = edges_.at(key_of(e));
        s.estimate = degree_[s.owner];
        owned_[s.owner].insert_behind(kInfo, key_of(e));
        if (!s.used) buckets_[space_.other(e, s.owner)][bucket_of(s.estimate)].insert(s.owner);
    }

    void detach(Edge e) {
        const auto& s = edges_.at(key_of(e));
        owned_[s.owner].erase(key_of(e));
        if (!s.used) buckets_[space_.other(e, s.owner)][bucket_of(s.estimate)].erase(s.owner);
    }

    void set_used(Edge e, bool on) {
        auto& s = edges_.at(key_of(e));
        Vertex l = space_.left_of(e);
        Vertex r = space_.right_of(e);
        Vertex holder = space_.other(e, s.owner);
        if (on) {
            buckets_[holder][bucket_of(s.estimate)].erase(s.owner);
            h_adj_[l].insert(r);
            h_adj_[r].insert(l);
        } else {
            buckets_[holder][bucket_of(s.estimate)].insert(s.owner);
            h_adj_[l].erase(r);
            h_adj_[r].erase(l);
        }
        s.used = on;
        changes_.push_back({e, on});
    }

    AlternatingPath fix(Vertex x, int need) {
        AlternatingPath path;
        path.start_need = need;
        path.vertices.push_back(x);
        path.degrees.push_back(degree_[x]);
        Vertex cur = x;
        for (;;) {
            std::optional<Edge> next;
            if (need > 0) {
                next = find_full(cur);
            } else {
                last_repair_scan_ = {cur, SIZE_MAX};
                next = find_augmentable(cur);
                if (!next) next = repair_scan(cur);
            }
            if (!next) break;
            set_used(*next, need < 0);
            cur = space_.other(*next, cur);
            path.edges.push_back(*next);
            path.actions.push_back(need > 0 ? -1 : +1);
            path.vertices.push_back(cur);
            path.degrees.push_back(degree_[cur]);
            need = -need;
            if (path.edges.size() > params_.max_path_length()) {
                throw InvariantBreach("alternating path longer than 12/lambda + 1");
            }
        }
        path.end_delta = need;
        end_of_path(cur, need);
        stats_.paths.push_back(path);
        return path;
    }

    void audit_pick(Vertex u, Vertex w) {
        for (const auto& bucket : buckets_[u]) {
            for (Vertex v : bucket) {
                if (degree_[w] > degree_[v] + 3 * params_.ell) {
                    ++audits_.pick_too_high;
                    return;
                }
            }
        }
    }

    void audit_window(Vertex u, int first, int last) {
        for (int i = 0; i < params_.bucket_count(); ++i) {
            if (i >= first && i <= last) continue;
            for (Vertex v : buckets_[u][i]) {
                int rg = range(space_.between(u, v));
                if (rg >= 1 && rg <= 5) ++audits_.window_misses;
            }
        }
    }

    void audit_decrease(Vertex u) {
        for (const auto& bucket : buckets_[u]) {
            for (Vertex v : bucket) {
                int rg = range(space_.between(u, v));
                if (rg >= 1 && rg <= 2) ++audits_.unsafe_decreases;
            }
        }
        auto expected = std::min(r_, owned_[u].size());
        if (last_repair_scan_.vertex != u || last_repair_scan_.budget != expected) ++audits_.short_repair_scans;
    }

    struct RepairScan {
        Vertex vertex = 0;
        std::size_t budget = 0;
    };

    VertexSpace space_;
    GeneralParams params_;
    std::size_t m_bar_ = 4;
    std::size_t r_ = 1;
    std::vector<int> degree_;
    std::unordered_map<EdgeKey, EdgeState> edges_;
    std::vector<std::set<Vertex>> h_adj_;
    std::vector<CircularList<2>> owned_;
    std::vector<std::vector<std::set<Vertex>>> buckets_;
    std::vector<HChange> changes_;
    UpdateStats stats_;
    AuditCounters audits_;
    RepairScan last_repair_scan_;
    bool auditing_ = false;
};

}  // namespace edcs

#endif  // EDCS_GENERAL_EDCS_HPP
