#ifndef EDCS_PATH_HPP
#define EDCS_PATH_HPP

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "graph.hpp"

namespace edcs {

/// Raised when an internal EDCS invariant is found broken (a bug, not bad input).
class InvariantBreach : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A fix-up path: starts at a vertex that owes a degree change of `start_need` (+1 or -1),
/// alternates removing a unit from a full edge and adding a unit to a deficient or
/// augmentable edge, and ends at a vertex whose degree absorbs `end_delta`.
///
/// `vertices[i]` and `degrees[i]` are the path vertices and their H-degrees at the time the
/// path was built; `edges[i]` joins vertices[i] and vertices[i+1] and `actions[i]` is the
/// weight change applied to it.
struct AlternatingPath {
    int start_need = 0;
    int end_delta = 0;
    std::vector<Vertex> vertices;
    std::vector<int> degrees;
    std::vector<Edge> edges;
    std::vector<int> actions;

    std::size_t length() const { return edges.size(); }
    Vertex start() const { return vertices.front(); }
    Vertex end() const { return vertices.back(); }
};

inline bool path_is_simple(const AlternatingPath& p) {
    std::set<Vertex> seen(p.vertices.begin(), p.vertices.end());
    return seen.size() == p.vertices.size();
}

/// Vertices on the same side of the bipartition (same index parity) have pairwise
/// distinct degrees.
inline bool path_degrees_distinct_per_side(const AlternatingPath& p) {
    for (std::size_t parity = 0; parity < 2; ++parity) {
        std::set<int> seen;
        for (std::size_t i = parity; i < p.degrees.size(); i += 2) {
            if (!seen.insert(p.degrees[i]).second) return false;
        }
    }
    return true;
}

/// Path edges alternate between removals and additions.
inline bool path_alternates(const AlternatingPath& p) {
    for (std::size_t i = 0; i < p.actions.size(); ++i) {
        int expected = (p.start_need > 0) == (i % 2 == 0) ? -1 : +1;
        if (p.actions[i] != expected) return false;
    }
    return true;
}

}  // namespace edcs

#endif  // EDCS_PATH_HPP
