#ifndef DLSMC_VERTEX_SET_HPP
#define DLSMC_VERTEX_SET_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"

namespace dlsmc {

// Set over the ids [0, capacity) with O(1) add, remove, membership and
// uniform sampling. `members_` holds the elements densely; `position_` maps
// an id to its slot in `members_`, or kAbsent. Removal overwrites the slot
// with the last member, so iteration order is not stable across removals.
class IndexedVertexSet {
public:
    static constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();

    IndexedVertexSet() = default;
    explicit IndexedVertexSet(std::size_t capacity) : position_(capacity, kAbsent) { members_.reserve(capacity); }

    std::size_t capacity() const noexcept { return position_.size(); }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }

    bool contains(Vertex v) const {
        check_range(v);
        return position_[v] != kAbsent;
    }

    void add(Vertex v) {
        check_range(v);
        if (position_[v] != kAbsent) throw std::logic_error("IndexedVertexSet::add: vertex " + std::to_string(v) + " already present");
        position_[v] = static_cast<std::uint32_t>(members_.size());
        members_.push_back(v);
    }

    void remove(Vertex v) {
        check_range(v);
        const std::uint32_t slot = position_[v];
        if (slot == kAbsent) throw std::logic_error("IndexedVertexSet::remove: vertex " + std::to_string(v) + " not present");
        const Vertex last = members_.back();
        members_[slot] = last;
        position_[last] = slot;
        members_.pop_back();
        position_[v] = kAbsent;
    }

    // Element at dense slot i (i < size()).
    Vertex operator[](std::size_t i) const noexcept { return members_[i]; }

    template <class Rng>
    Vertex random_member(Rng& rng) const {
        if (members_.empty()) throw std::logic_error("IndexedVertexSet::random_member: empty set");
        std::uniform_int_distribution<std::size_t> pick(0, members_.size() - 1);
        return members_[pick(rng)];
    }

    // O(size): only occupied slots are reset.
    void clear() noexcept {
        for (Vertex v : members_) position_[v] = kAbsent;
        members_.clear();
    }

    std::span<const Vertex> members() const noexcept { return members_; }
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

private:
    void check_range(Vertex v) const {
        if (v >= position_.size())
            throw std::out_of_range("IndexedVertexSet: vertex " + std::to_string(v) + " exceeds capacity " +
                                    std::to_string(position_.size()));
    }

    std::vector<Vertex> members_;
    std::vector<std::uint32_t> position_;
};

} // namespace dlsmc

#endif // DLSMC_VERTEX_SET_HPP
