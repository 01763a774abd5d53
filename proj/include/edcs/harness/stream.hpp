#ifndef EDCS_HARNESS_STREAM_HPP
#define EDCS_HARNESS_STREAM_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "../graph.hpp"
#include "../oracle.hpp"
#include "params.hpp"

namespace edcs::harness {

class ReplayError : public std::runtime_error {
public:
    ReplayError(std::size_t step, const std::string& what)
        : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}
    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

enum class Op { Insert, Delete };

struct Update {
    Op op;
    Edge edge;

    friend bool operator==(const Update&, const Update&) = default;
};

struct UpdateStream {
    std::uint32_t n_left = 0;
    std::uint32_t n_right = 0;
    std::vector<Update> updates;

    std::size_t size() const { return updates.size(); }
    bool empty() const { return updates.empty(); }
    friend bool operator==(const UpdateStream&, const UpdateStream&) = default;
};

enum class StreamKind { Random, SlidingWindow, ForestUnion, FourBlock, ThreeBlock };

inline const char* to_string(StreamKind k) {
    switch (k) {
        case StreamKind::Random: return "random";
        case StreamKind::SlidingWindow: return "sliding_window";
        case StreamKind::ForestUnion: return "forest_union";
        case StreamKind::FourBlock: return "four_block";
        case StreamKind::ThreeBlock: return "three_block";
    }
    return "?";
}

inline StreamKind parse_stream_kind(const std::string& s) {
    for (auto k : {StreamKind::Random, StreamKind::SlidingWindow, StreamKind::ForestUnion, StreamKind::FourBlock,
                   StreamKind::ThreeBlock}) {
        if (s == to_string(k)) return k;
    }
    throw ConfigError("unknown stream kind '" + s + "'");
}

struct StreamSpec {
    StreamKind kind = StreamKind::Random;
    std::uint32_t n_left = 60;
    std::uint32_t n_right = 60;
    std::size_t steps = 1000;
    /// random: target fraction of the n_left*n_right pairs present.
    /// sliding_window: window length as a fraction of n_left*n_right.
    /// forest_union: target fraction of alpha*(n-1) edges present.
    double density = 0.5;
    std::size_t alpha = 1;       // forest_union
    int beta_hint = 12;          // three_block: beta of the planted EDCS
    double lambda_hint = 0.5;    // three_block
    std::uint64_t seed = 1;
};

// ---------------------------------------------------------------------------
// Text format: one update per line, "+ L<i> R<j>" or "- L<i> R<j>".

inline std::string format_update(const Update& u) {
    return std::string(u.op == Op::Insert ? "+" : "-") + " L" + std::to_string(u.edge.left) + " R" +
           std::to_string(u.edge.right);
}

inline void write_stream(std::ostream& out, const UpdateStream& s) {
    for (const auto& u : s.updates) out << format_update(u) << '\n';
}

inline void write_stream_file(const std::string& path, const UpdateStream& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_stream(out, s);
    if (!out) throw std::runtime_error("write failed: " + path);
}

namespace detail {
inline bool parse_index(const std::string& tok, char tag, std::uint32_t& out) {
    if (tok.size() < 2 || tok[0] != tag) return false;
    std::uint64_t v = 0;
    for (std::size_t i = 1; i < tok.size(); ++i) {
        if (tok[i] < '0' || tok[i] > '9') return false;
        v = v * 10 + static_cast<std::uint64_t>(tok[i] - '0');
        if (v > UINT32_MAX) return false;
    }
    out = static_cast<std::uint32_t>(v);
    return true;
}
}  // namespace detail

/// Parses a stream. Vertex ranges are taken from the arguments; a zero side size is
/// inferred from the largest index seen. Malformed lines raise ReplayError with the
/// 1-based line number as the step.
inline UpdateStream read_stream(std::istream& in, std::uint32_t n_left = 0, std::uint32_t n_right = 0) {
    UpdateStream s;
    std::string line;
    std::size_t lineno = 0;
    std::uint32_t max_l = 0, max_r = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string op, a, b, extra;
        ls >> op >> a >> b;
        Edge e{};
        if ((op != "+" && op != "-") || !detail::parse_index(a, 'L', e.left) || !detail::parse_index(b, 'R', e.right) ||
            (ls >> extra)) {
            throw ReplayError(lineno, "malformed update line '" + line + "'");
        }
        max_l = std::max(max_l, e.left + 1);
        max_r = std::max(max_r, e.right + 1);
        s.updates.push_back({op == "+" ? Op::Insert : Op::Delete, e});
    }
    s.n_left = n_left ? n_left : max_l;
    s.n_right = n_right ? n_right : max_r;
    return s;
}

inline UpdateStream read_stream_file(const std::string& path, std::uint32_t n_left = 0, std::uint32_t n_right = 0) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open stream file " + path);
    return read_stream(in, n_left, n_right);
}

/// Replays the stream against an empty edge set. Throws ReplayError naming the first
/// offending (1-based) step. Returns the maximum edge count over all prefixes.
inline std::size_t validate_replay(const UpdateStream& s) {
    std::unordered_set<EdgeKey> present;
    std::size_t peak = 0;
    for (std::size_t i = 0; i < s.updates.size(); ++i) {
        const auto& u = s.updates[i];
        if (u.edge.left >= s.n_left || u.edge.right >= s.n_right) {
            throw ReplayError(i + 1, "vertex out of range in " + format_update(u));
        }
        if (u.op == Op::Insert) {
            if (!present.insert(key_of(u.edge)).second) throw ReplayError(i + 1, "insert of present edge " + to_string(u.edge));
        } else {
            if (present.erase(key_of(u.edge)) == 0) throw ReplayError(i + 1, "delete of absent edge " + to_string(u.edge));
        }
        peak = std::max(peak, present.size());
    }
    return peak;
}

// ---------------------------------------------------------------------------
// Generators. All randomness comes from one mt19937_64 seeded with spec.seed. Bounded
// draws reduce the raw 64-bit output directly instead of going through a standard
// distribution, so streams match across standard libraries.

namespace detail {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    std::uint64_t below(std::uint64_t n) {
        return gen_() % n;
    }
    bool chance(unsigned percent) { return below(100) < percent; }
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 gen_;
};

/// Present-edge set with O(1) uniform sampling.
class EdgePool {
public:
    bool contains(Edge e) const { return pos_.contains(key_of(e)); }
    std::size_t size() const { return items_.size(); }
    void insert(Edge e) {
        pos_.emplace(key_of(e), items_.size());
        items_.push_back(e);
    }
    void erase(Edge e) {
        auto it = pos_.find(key_of(e));
        std::size_t i = it->second;
        pos_.erase(it);
        if (i + 1 != items_.size()) {
            items_[i] = items_.back();
            pos_[key_of(items_[i])] = i;
        }
        items_.pop_back();
    }
    Edge sample(Rng& rng) const { return items_[rng.below(items_.size())]; }

private:
    std::vector<Edge> items_;
    std::unordered_map<EdgeKey, std::size_t> pos_;
};

struct Recorder {
    UpdateStream stream;
    EdgePool present;

    void insert(Edge e) {
        present.insert(e);
        stream.updates.push_back({Op::Insert, e});
    }
    void erase(Edge e) {
        present.erase(e);
        stream.updates.push_back({Op::Delete, e});
    }
};

inline Edge random_absent(Rng& rng, const EdgePool& present, std::uint32_t nl, std::uint32_t nr) {
    for (;;) {
        Edge e{static_cast<std::uint32_t>(rng.below(nl)), static_cast<std::uint32_t>(rng.below(nr))};
        if (!present.contains(e)) return e;
    }
}

inline UpdateStream gen_random(const StreamSpec& s, Rng& rng) {
    Recorder rec;
    const std::size_t total = static_cast<std::size_t>(s.n_left) * s.n_right;
    const double target = s.density * static_cast<double>(total);
    for (std::size_t i = 0; i < s.steps; ++i) {
        std::size_t m = rec.present.size();
        bool insert;
        if (m == 0) insert = true;
        else if (m == total) insert = false;
        else insert = rng.chance(static_cast<double>(m) < target ? 70 : 30);
        if (insert) rec.insert(random_absent(rng, rec.present, s.n_left, s.n_right));
        else rec.erase(rec.present.sample(rng));
    }
    return std::move(rec.stream);
}

inline UpdateStream gen_sliding_window(const StreamSpec& s, Rng& rng) {
    Recorder rec;
    const std::size_t total = static_cast<std::size_t>(s.n_left) * s.n_right;
    const auto window = std::clamp<std::size_t>(static_cast<std::size_t>(s.density * static_cast<double>(total)), 1, total);
    std::deque<Edge> fifo;
    for (std::size_t i = 0; i < s.steps; ++i) {
        if (fifo.size() < window) {
            Edge e = random_absent(rng, rec.present, s.n_left, s.n_right);
            rec.insert(e);
            fifo.push_back(e);
        } else {
            rec.erase(fifo.front());
            fifo.pop_front();
        }
    }
    return std::move(rec.stream);
}

/// Up to alpha edge-disjoint forests; an edge joins the first forest in which its
/// endpoints are disconnected, so arboricity never exceeds alpha.
inline UpdateStream gen_forest_union(const StreamSpec& s, Rng& rng) {
    if (s.alpha == 0) throw ConfigError("forest_union needs alpha >= 1");
    VertexSpace space(s.n_left, s.n_right);
    const std::size_t n = space.size();
    std::vector<std::vector<std::unordered_set<Vertex>>> forest(s.alpha, std::vector<std::unordered_set<Vertex>>(n));
    std::unordered_map<EdgeKey, std::size_t> which;

    auto connected = [&](const std::vector<std::unordered_set<Vertex>>& f, Vertex a, Vertex b) {
        std::vector<Vertex> stack{a};
        std::unordered_set<Vertex> seen{a};
        while (!stack.empty()) {
            Vertex x = stack.back();
            stack.pop_back();
            if (x == b) return true;
            // Deterministic order regardless of hash layout.
            std::vector<Vertex> nb(f[x].begin(), f[x].end());
            std::sort(nb.begin(), nb.end());
            for (Vertex y : nb) {
                if (seen.insert(y).second) stack.push_back(y);
            }
        }
        return false;
    };

    Recorder rec;
    const double target = s.density * static_cast<double>(s.alpha) * static_cast<double>(n - 1);
    constexpr int kTries = 64;
    for (std::size_t i = 0; i < s.steps; ++i) {
        std::size_t m = rec.present.size();
        bool insert = m == 0 || rng.chance(static_cast<double>(m) < target ? 70 : 30);
        bool done = false;
        if (insert) {
            for (int t = 0; t < kTries && !done; ++t) {
                Edge e{static_cast<std::uint32_t>(rng.below(s.n_left)), static_cast<std::uint32_t>(rng.below(s.n_right))};
                if (rec.present.contains(e)) continue;
                Vertex a = space.left_of(e), b = space.right_of(e);
                for (std::size_t f = 0; f < s.alpha; ++f) {
                    if (connected(forest[f], a, b)) continue;
                    forest[f][a].insert(b);
                    forest[f][b].insert(a);
                    which[key_of(e)] = f;
                    rec.insert(e);
                    done = true;
                    break;
                }
            }
        }
        if (!done) {
            if (m == 0) break;  // nothing can be inserted or deleted
            Edge e = rec.present.sample(rng);
            std::size_t f = which.at(key_of(e));
            forest[f][space.left_of(e)].erase(space.right_of(e));
            forest[f][space.right_of(e)].erase(space.left_of(e));
            which.erase(key_of(e));
            rec.erase(e);
        }
    }
    return std::move(rec.stream);
}

/// Complete L x R minus L2 x R2 with |L1| = |L2| = |R1| = |R2| = b, inserted in random
/// order, then churned by delete/reinsert pairs inside the family.
inline UpdateStream gen_four_block(const StreamSpec& s, Rng& rng) {
    if (s.n_left != s.n_right || s.n_left < 2 || s.n_left % 2 != 0) {
        throw ConfigError("four_block needs n_left == n_right, even and >= 2");
    }
    const std::uint32_t b = s.n_left / 2;
    std::vector<Edge> family;
    for (std::uint32_t l = 0; l < 2 * b; ++l) {
        for (std::uint32_t r = 0; r < 2 * b; ++r) {
            if (l >= b && r >= b) continue;
            family.push_back({l, r});
        }
    }
    rng.shuffle(family);
    Recorder rec;
    for (Edge e : family) rec.insert(e);
    std::vector<Edge> removed;
    const std::size_t churn = s.steps > family.size() ? s.steps - family.size() : 0;
    for (std::size_t i = 0; i < churn; ++i) {
        if (removed.empty() || (rec.present.size() > 0 && rng.chance(50))) {
            Edge e = rec.present.sample(rng);
            rec.erase(e);
            removed.push_back(e);
        } else {
            std::size_t j = rng.below(removed.size());
            Edge e = removed[j];
            removed[j] = removed.back();
            removed.pop_back();
            rec.insert(e);
        }
    }
    return std::move(rec.stream);
}

}  // namespace detail

/// Planted family with mu(H) / mu(G) = 2/3 for a valid EDCS H.
///
/// Each side is split into three pieces of k vertices. H holds the matchings L1-R1 and
/// L3-R3 plus (beta/2 - 1)-regular circulants on L1 x R2 and L2 x R3; G adds the matching
/// L2-R2. The returned pair is (H, G \ H).
struct ThreeBlockInstance {
    std::vector<Edge> h;
    std::vector<Edge> extra;
};

inline ThreeBlockInstance three_block_instance(std::uint32_t k, int beta) {
    if (beta < 4 || beta % 2 != 0) throw ConfigError("three_block needs an even beta >= 4");
    const auto d = static_cast<std::uint32_t>(beta / 2 - 1);
    if (d > k) throw ConfigError("three_block needs pieces of at least beta/2 - 1 vertices");
    ThreeBlockInstance out;
    for (std::uint32_t i = 0; i < k; ++i) {
        out.h.push_back({i, i});                  // L1-R1
        out.h.push_back({2 * k + i, 2 * k + i});  // L3-R3
        for (std::uint32_t j = 0; j < d; ++j) {
            out.h.push_back({i, k + (i + j) % k});          // L1 x R2
            out.h.push_back({k + i, 2 * k + (i + j) % k});  // L2 x R3
        }
        out.extra.push_back({k + i, k + i});  // L2-R2
    }
    std::sort(out.h.begin(), out.h.end());
    std::sort(out.extra.begin(), out.extra.end());
    return out;
}

namespace detail {
inline UpdateStream gen_three_block(const StreamSpec& s, Rng& rng) {
    if (s.n_left != s.n_right || s.n_left % 3 != 0 || s.n_left == 0) {
        throw ConfigError("three_block needs n_left == n_right, a positive multiple of 3");
    }
    const std::uint32_t k = s.n_left / 3;
    auto inst = three_block_instance(k, s.beta_hint);
    DynBipartiteGraph g(s.n_left, s.n_right);
    for (Edge e : inst.h) g.insert_edge(e);
    for (Edge e : inst.extra) g.insert_edge(e);
    if (!oracle::validate_edcs_unweighted(g, inst.h, s.beta_hint, s.lambda_hint).ok) {
        throw ConfigError("three_block: planted subgraph is not an EDCS for the given beta/lambda");
    }
    auto h = inst.h;
    rng.shuffle(h);
    Recorder rec;
    for (Edge e : h) rec.insert(e);
    auto extra = inst.extra;
    rng.shuffle(extra);
    for (Edge e : extra) rec.insert(e);
    // Churn the L2-R2 matching.
    const std::size_t built = rec.stream.size();
    for (std::size_t i = built; i < s.steps; ++i) {
        Edge e = inst.extra[rng.below(inst.extra.size())];
        if (rec.present.contains(e)) rec.erase(e);
        else rec.insert(e);
    }
    return std::move(rec.stream);
}
}  // namespace detail

/// Deterministic in (spec, seed).
inline UpdateStream generate_stream(const StreamSpec& spec) {
    if (spec.n_left == 0 || spec.n_right == 0) throw ConfigError("stream needs at least one vertex per side");
    if (!(spec.density > 0.0 && spec.density <= 1.0)) throw ConfigError("density must lie in (0, 1]");
    detail::Rng rng(spec.seed);
    UpdateStream out;
    switch (spec.kind) {
        case StreamKind::Random: out = detail::gen_random(spec, rng); break;
        case StreamKind::SlidingWindow: out = detail::gen_sliding_window(spec, rng); break;
        case StreamKind::ForestUnion: out = detail::gen_forest_union(spec, rng); break;
        case StreamKind::FourBlock: out = detail::gen_four_block(spec, rng); break;
        case StreamKind::ThreeBlock: out = detail::gen_three_block(spec, rng); break;
    }
    out.n_left = spec.n_left;
    out.n_right = spec.n_right;
    return out;
}

}  // namespace edcs::harness

#endif  // EDCS_HARNESS_STREAM_HPP
