#ifndef EDCS_GRAPH_HPP
#define EDCS_GRAPH_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace edcs {

enum class Side : std::uint8_t { Left, Right };

/// A vertex named by its side of the bipartition and its index on that side.
struct VertexId {
    Side side = Side::Left;
    std::uint32_t index = 0;

    friend constexpr auto operator<=>(const VertexId&, const VertexId&) = default;
};

constexpr VertexId left_vertex(std::uint32_t i) { return {Side::Left, i}; }
constexpr VertexId right_vertex(std::uint32_t i) { return {Side::Right, i}; }

/// An edge of the bipartite graph: always (left index, right index).
struct Edge {
    std::uint32_t left = 0;
    std::uint32_t right = 0;

    friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

using EdgeKey = std::uint64_t;

constexpr EdgeKey key_of(Edge e) {
    return (static_cast<EdgeKey>(e.left) << 32) | static_cast<EdgeKey>(e.right);
}

constexpr Edge edge_of(EdgeKey k) {
    return {static_cast<std::uint32_t>(k >> 32), static_cast<std::uint32_t>(k & 0xffffffffu)};
}

inline std::string to_string(VertexId v) {
    return (v.side == Side::Left ? "L" : "R") + std::to_string(v.index);
}

inline std::string to_string(Edge e) {
    return "(L" + std::to_string(e.left) + ",R" + std::to_string(e.right) + ")";
}

/// Flat vertex handle used by the internal tables: left i -> i, right j -> nLeft + j.
using Vertex = std::uint32_t;

/// Maps between VertexId / Edge and flat vertex handles for a fixed bipartition.
class VertexSpace {
public:
    VertexSpace() = default;
    VertexSpace(std::uint32_t n_left, std::uint32_t n_right) : n_left_(n_left), n_right_(n_right) {}

    std::uint32_t n_left() const { return n_left_; }
    std::uint32_t n_right() const { return n_right_; }
    std::uint32_t size() const { return n_left_ + n_right_; }

    bool valid(VertexId v) const {
        return v.side == Side::Left ? v.index < n_left_ : v.index < n_right_;
    }
    bool valid(Edge e) const { return e.left < n_left_ && e.right < n_right_; }

    Vertex flat(VertexId v) const { return v.side == Side::Left ? v.index : n_left_ + v.index; }
    VertexId id(Vertex x) const {
        return x < n_left_ ? left_vertex(x) : right_vertex(x - n_left_);
    }
    bool is_left(Vertex x) const { return x < n_left_; }

    Vertex left_of(Edge e) const { return e.left; }
    Vertex right_of(Edge e) const { return n_left_ + e.right; }

    Vertex other(Edge e, Vertex x) const { return x == left_of(e) ? right_of(e) : left_of(e); }

    /// Edge between two flat vertices on opposite sides.
    Edge between(Vertex a, Vertex b) const {
        return is_left(a) ? Edge{a, b - n_left_} : Edge{b, a - n_left_};
    }

private:
    std::uint32_t n_left_ = 0;
    std::uint32_t n_right_ = 0;
};

class GraphError : public std::invalid_argument {
public:
    enum class Kind { DuplicateEdge, MissingEdge, InvalidVertex, SameSide };

    GraphError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// The dynamic input graph G. Vertex counts are fixed at construction.
class DynBipartiteGraph {
public:
    DynBipartiteGraph() = default;
    DynBipartiteGraph(std::uint32_t n_left, std::uint32_t n_right)
        : space_(n_left, n_right), adjacency_(space_.size()) {}

    const VertexSpace& space() const { return space_; }
    std::uint32_t n_left() const { return space_.n_left(); }
    std::uint32_t n_right() const { return space_.n_right(); }
    std::size_t edge_count() const { return m_; }

    /// Builds an edge from two vertex ids; rejects same-side or out-of-range endpoints.
    Edge make_edge(VertexId a, VertexId b) const {
        if (a.side == b.side) {
            throw GraphError(GraphError::Kind::SameSide,
                             "same-side edge " + to_string(a) + "-" + to_string(b));
        }
        if (!space_.valid(a) || !space_.valid(b)) {
            throw GraphError(GraphError::Kind::InvalidVertex,
                             "vertex out of range in " + to_string(a) + "-" + to_string(b));
        }
        return a.side == Side::Left ? Edge{a.index, b.index} : Edge{b.index, a.index};
    }

    bool contains(Edge e) const {
        if (!space_.valid(e)) return false;
        return adjacency_[space_.left_of(e)].contains(space_.right_of(e));
    }

    void insert_edge(Edge e) {
        check_endpoints(e);
        auto l = space_.left_of(e);
        auto r = space_.right_of(e);
        if (!adjacency_[l].insert(r).second) {
            throw GraphError(GraphError::Kind::DuplicateEdge, "duplicate edge " + to_string(e));
        }
        adjacency_[r].insert(l);
        ++m_;
    }

    void delete_edge(Edge e) {
        check_endpoints(e);
        auto l = space_.left_of(e);
        auto r = space_.right_of(e);
        if (adjacency_[l].erase(r) == 0) {
            throw GraphError(GraphError::Kind::MissingEdge, "missing edge " + to_string(e));
        }
        adjacency_[r].erase(l);
        --m_;
    }

    std::size_t degree(VertexId v) const {
        if (!space_.valid(v)) {
            throw GraphError(GraphError::Kind::InvalidVertex, "invalid vertex " + to_string(v));
        }
        return adjacency_[space_.flat(v)].size();
    }
    std::size_t degree(Vertex x) const { return adjacency_[x].size(); }

    const std::unordered_set<Vertex>& neighbors(Vertex x) const { return adjacency_[x]; }

    /// All edges, sorted.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(m_);
        for (Vertex l = 0; l < space_.n_left(); ++l) {
            for (Vertex r : adjacency_[l]) out.push_back(space_.between(l, r));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const DynBipartiteGraph& a, const DynBipartiteGraph& b) {
        return a.n_left() == b.n_left() && a.n_right() == b.n_right() && a.m_ == b.m_ &&
               a.adjacency_ == b.adjacency_;
    }

private:
    void check_endpoints(Edge e) const {
        if (!space_.valid(e)) {
            throw GraphError(GraphError::Kind::InvalidVertex, "endpoint out of range in " + to_string(e));
        }
    }

    VertexSpace space_;
    std::vector<std::unordered_set<Vertex>> adjacency_;
    std::size_t m_ = 0;
};

}  // namespace edcs

template <>
struct std::hash<edcs::Edge> {
    std::size_t operator()(const edcs::Edge& e) const noexcept {
        return std::hash<edcs::EdgeKey>{}(edcs::key_of(e));
    }
};

#endif  // EDCS_GRAPH_HPP
