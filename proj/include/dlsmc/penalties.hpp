#ifndef DLSMC_PENALTIES_HPP
#define DLSMC_PENALTIES_HPP

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "graph.hpp"
#include "vertex_set.hpp"

namespace dlsmc {

// Per-vertex penalty counters with delayed decay, plus the per-round
// availability flags consulted by select_min_penalty.
class PenaltyState {
public:
    static constexpr int kPenaltyCap = 10;

    PenaltyState(std::size_t n, int penalty_delay)
        : pd_(penalty_delay), penalty_(n, 0), available_(n, 1), penalised_(n) {
        if (penalty_delay < 1) throw std::invalid_argument("penalty delay must be >= 1");
        taken_.reserve(n);
    }

    void init() {
        for (Vertex v : penalised_) penalty_[v] = 0;
        penalised_.clear();
        update_cycles_ = 0;
        clear_availability();
    }

    int penalty_delay() const noexcept { return pd_; }
    int penalty(Vertex v) const noexcept { return penalty_[v]; }
    bool available(Vertex v) const noexcept { return available_[v] != 0; }
    std::size_t update_cycles() const noexcept { return update_cycles_; }
    std::size_t penalised_count() const noexcept { return penalised_.size(); }
    std::size_t order() const noexcept { return penalty_.size(); }

    // Test hook: sets a raw penalty value without touching the cycle count.
    void set_penalty(Vertex v, int value) {
        if (value < 0) throw std::invalid_argument("penalties are non-negative");
        penalty_[v] = value;
        if ((value > 0) != penalised_.contains(v)) value > 0 ? penalised_.add(v) : penalised_.remove(v);
    }

    // Uniform choice among the available candidates of minimum penalty, with
    // penalties above the cap excluded. The chosen vertex becomes
    // unavailable until the next clear_availability().
    template <class Rng>
    std::optional<Vertex> select_min_penalty(std::span<const Vertex> candidates, Rng& rng) {
        auto chosen = select(candidates, rng, true);
        if (chosen) {
            available_[*chosen] = 0;
            taken_.push_back(*chosen);
        }
        return chosen;
    }

    // Same rule with availability neither consulted nor updated.
    template <class Rng>
    std::optional<Vertex> select_min_penalty_ignoring_availability(std::span<const Vertex> candidates, Rng& rng) {
        return select(candidates, rng, false);
    }

    template <class Rng>
    std::optional<Vertex> select_min_penalty(const IndexedVertexSet& candidates, Rng& rng) {
        return select_min_penalty(candidates.members(), rng);
    }

    // +1 for every member of `clique`; on every pd-th call, additionally -1
    // for every vertex with a non-zero penalty (after the increment).
    void update(std::span<const Vertex> clique) {
        ++update_cycles_;
        for (Vertex v : clique) {
            if (penalty_[v]++ == 0) penalised_.add(v);
        }
        if (update_cycles_ % static_cast<std::size_t>(pd_) != 0) return;
        for (std::size_t i = penalised_.size(); i-- > 0;) {
            const Vertex v = penalised_[i];
            if (--penalty_[v] == 0) penalised_.remove(v);
        }
    }

    void clear_availability() noexcept {
        for (Vertex v : taken_) available_[v] = 1;
        taken_.clear();
    }

private:
    template <class Rng>
    std::optional<Vertex> select(std::span<const Vertex> candidates, Rng& rng, bool honour_availability) {
        ties_.clear();
        int best = kPenaltyCap;
        for (Vertex v : candidates) {
            if (honour_availability && !available_[v]) continue;
            const int p = penalty_[v];
            if (p > best) continue;
            if (p < best) {
                best = p;
                ties_.clear();
            }
            ties_.push_back(v);
        }
        if (ties_.empty()) return std::nullopt;
        if (ties_.size() == 1) return ties_.front();
        std::uniform_int_distribution<std::size_t> pick(0, ties_.size() - 1);
        return ties_[pick(rng)];
    }

    int pd_;
    std::size_t update_cycles_ = 0;
    std::vector<int> penalty_;
    std::vector<char> available_;
    IndexedVertexSet penalised_;
    std::vector<Vertex> taken_;
    std::vector<Vertex> ties_;
};

} // namespace dlsmc

#endif // DLSMC_PENALTIES_HPP
