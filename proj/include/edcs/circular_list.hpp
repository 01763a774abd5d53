#ifndef EDCS_CIRCULAR_LIST_HPP
#define EDCS_CIRCULAR_LIST_HPP

#include <array>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "graph.hpp"

namespace edcs {

/// Doubly-linked circular list of edge keys with `Cursors` round-robin scan pointers.
///
/// A cursor names the next element it will visit. New elements are inserted
/// immediately behind a chosen cursor, so that cursor reaches them last.
/// Erasing the element under a cursor moves the cursor to the successor.
/// Each cursor carries an odometer counting the positions it has advanced.
template <std::size_t Cursors>
class CircularList {
    static_assert(Cursors >= 1);

public:
    std::size_t size() const { return links_.size(); }
    bool empty() const { return links_.empty(); }
    bool contains(EdgeKey k) const { return links_.contains(k); }

    void insert_behind(std::size_t cursor, EdgeKey k) {
        assert(cursor < Cursors);
        assert(!contains(k));
        if (links_.empty()) {
            links_.emplace(k, Links{k, k});
            cursors_.fill(k);
            return;
        }
        EdgeKey next = *cursors_[cursor];
        EdgeKey prev = links_.at(next).prev;
        links_.emplace(k, Links{prev, next});
        links_.at(prev).next = k;
        links_.at(next).prev = k;
    }

    void erase(EdgeKey k) {
        auto it = links_.find(k);
        assert(it != links_.end());
        Links l = it->second;
        links_.erase(it);
        if (links_.empty()) {
            cursors_.fill(std::nullopt);
            return;
        }
        links_.at(l.prev).next = l.next;
        links_.at(l.next).prev = l.prev;
        for (auto& c : cursors_) {
            if (c == k) c = l.next;
        }
    }

    /// Element under the cursor, if any.
    std::optional<EdgeKey> peek(std::size_t cursor) const { return cursors_[cursor]; }

    /// Returns the element under the cursor and moves the cursor one step forward.
    std::optional<EdgeKey> advance(std::size_t cursor) {
        auto& c = cursors_[cursor];
        if (!c) return std::nullopt;
        EdgeKey current = *c;
        c = links_.at(current).next;
        ++odometer_[cursor];
        return current;
    }

    std::uint64_t odometer(std::size_t cursor) const { return odometer_[cursor]; }

    /// Elements in list order starting at the given cursor.
    std::vector<EdgeKey> from(std::size_t cursor) const {
        std::vector<EdgeKey> out;
        if (!cursors_[cursor]) return out;
        out.reserve(links_.size());
        EdgeKey k = *cursors_[cursor];
        do {
            out.push_back(k);
            k = links_.at(k).next;
        } while (k != *cursors_[cursor]);
        return out;
    }

    void clear() {
        links_.clear();
        cursors_.fill(std::nullopt);
    }

private:
    struct Links {
        EdgeKey prev;
        EdgeKey next;
    };

    std::unordered_map<EdgeKey, Links> links_;
    std::array<std::optional<EdgeKey>, Cursors> cursors_{};
    std::array<std::uint64_t, Cursors> odometer_{};
};

}  // namespace edcs

#endif  // EDCS_CIRCULAR_LIST_HPP
