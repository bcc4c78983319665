#ifndef DLSMC_CLIQUE_STATE_HPP
#define DLSMC_CLIQUE_STATE_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "graph.hpp"
#include "vertex_set.hpp"

namespace dlsmc {

// Current clique C together with its improving set NI (vertices outside C
// adjacent to every member) and level set NL (vertices outside C adjacent
// to all members but one). adj_count_[v] counts members of C adjacent to v
// and is kept for every vertex, including members of C.
class CliqueState {
public:
    explicit CliqueState(const Graph& g)
        : graph_(&g), clique_(g.order()), improving_(g.order()), level_(g.order()), adj_count_(g.order(), 0) {
        recompute();
    }

    const Graph& graph() const noexcept { return *graph_; }
    const IndexedVertexSet& clique() const noexcept { return clique_; }
    const IndexedVertexSet& improving() const noexcept { return improving_; }
    const IndexedVertexSet& level() const noexcept { return level_; }
    std::size_t size() const noexcept { return clique_.size(); }
    int adj_count(Vertex v) const noexcept { return adj_count_[v]; }

    void reset_to(Vertex v) {
        if (v >= graph_->order()) throw std::out_of_range("CliqueState::reset_to: vertex out of range");
        clique_.clear();
        clique_.add(v);
        recompute();
    }

    // Replaces C wholesale. Throws if `members` is not a clique.
    void restore_to(std::span<const Vertex> members) {
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (members[i] >= graph_->order()) throw std::out_of_range("CliqueState::restore_to: vertex out of range");
            for (std::size_t j = 0; j < i; ++j)
                if (!graph_->adjacent(members[i], members[j]))
                    throw std::invalid_argument("CliqueState::restore_to: vertex set is not a clique");
        }
        clique_.clear();
        for (Vertex v : members) clique_.add(v);
        recompute();
    }

    void add_vertex(Vertex v) {
        if (v >= graph_->order() || !improving_.contains(v))
            throw std::logic_error("CliqueState::add_vertex: vertex is not in the improving set");
        for (Vertex w : graph_->neighbours(v)) ++adj_count_[w];
        improving_.remove(v);
        clique_.add(v);

        // Level members missing v now miss two members of C.
        for (std::size_t i = level_.size(); i-- > 0;) {
            const Vertex x = level_[i];
            if (!graph_->adjacent(x, v)) level_.remove(x);
        }
        // Improving members missing v drop to level. Iterating backwards keeps
        // swap-removal from skipping anything.
        for (std::size_t i = improving_.size(); i-- > 0;) {
            const Vertex x = improving_[i];
            if (!graph_->adjacent(x, v)) {
                improving_.remove(x);
                level_.add(x);
            }
        }
    }

    // Swaps v (from NL) into C, evicting the single member not adjacent to
    // v. Returns the evicted vertex.
    Vertex swap_in(Vertex v) {
        if (v >= graph_->order() || !level_.contains(v))
            throw std::logic_error("CliqueState::swap_in: vertex is not in the level set");
        Vertex out = v;
        for (Vertex c : clique_) {
            if (!graph_->adjacent(c, v)) {
                out = c;
                break;
            }
        }
        clique_.remove(out);
        clique_.add(v);
        for (Vertex w : graph_->neighbours(out)) --adj_count_[w];
        for (Vertex w : graph_->neighbours(v)) ++adj_count_[w];

        // |C| is unchanged, so only vertices whose count moved can change
        // membership.
        refresh(out);
        refresh(v);
        for (Vertex w : graph_->neighbours(out)) refresh(w);
        for (Vertex w : graph_->neighbours(v)) refresh(w);
        return out;
    }

private:
    void recompute() {
        std::fill(adj_count_.begin(), adj_count_.end(), 0);
        for (Vertex c : clique_)
            for (Vertex w : graph_->neighbours(c)) ++adj_count_[w];
        improving_.clear();
        level_.clear();
        for (Vertex v = 0; v < graph_->order(); ++v) refresh(v);
    }

    void refresh(Vertex v) {
        const int k = static_cast<int>(clique_.size());
        const bool outside = !clique_.contains(v);
        const bool want_improving = outside && adj_count_[v] == k;
        const bool want_level = outside && adj_count_[v] == k - 1;
        if (want_improving != improving_.contains(v)) want_improving ? improving_.add(v) : improving_.remove(v);
        if (want_level != level_.contains(v)) want_level ? level_.add(v) : level_.remove(v);
    }

    const Graph* graph_;
    IndexedVertexSet clique_;
    IndexedVertexSet improving_;
    IndexedVertexSet level_;
    std::vector<int> adj_count_;
};

} // namespace dlsmc

#endif // DLSMC_CLIQUE_STATE_HPP
