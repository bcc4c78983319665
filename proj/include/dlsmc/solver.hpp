#ifndef DLSMC_SOLVER_HPP
#define DLSMC_SOLVER_HPP

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "clique_state.hpp"
#include "graph.hpp"
#include "penalties.hpp"

namespace dlsmc {

struct SolverConfig {
    std::size_t target_size = 1;          // tcs
    int penalty_delay = 1;                // pd
    std::uint64_t max_steps = 100'000'000;
    std::uint64_t seed = 0;
    // When false, expansion ignores (and does not set) availability flags;
    // plateau selections always honour them.
    bool availability_in_expand = true;
    bool instrument = false;
};

enum class SolveStatus { found, failed };

// Snapshot taken once per round, after the penalty update and before the
// perturbation.
struct PerturbationEvent {
    std::uint64_t improving_steps = 0;
    std::uint64_t plateau_swaps = 0;
    std::vector<Vertex> clique;           // sorted, 0-based
    std::size_t penalised_vertices = 0;
    std::optional<double> relative_mobility;
};

struct SolverResult {
    SolveStatus status = SolveStatus::failed;
    std::vector<Vertex> clique;           // sorted, 0-based
    std::size_t best_size = 0;
    std::uint64_t steps = 0;
    std::uint64_t rounds = 0;
    double elapsed_seconds = 0.0;
    std::vector<PerturbationEvent> trace;

    bool found() const noexcept { return status == SolveStatus::found; }
};

enum class StepKind { expand, swap };

// Default observer; the search checks for each hook with a requires-expression
// so an observer only needs the hooks it cares about:
//   on_step(StepKind, Vertex added, std::optional<Vertex> removed, const CliqueState&, const PenaltyState&)
//   on_round_end(const CliqueState&, const PenaltyState&)      (after the penalty update)
//   on_perturbed(const CliqueState&, const PenaltyState&)
struct NoObserver {};

inline double relative_mobility(const std::vector<Vertex>& previous, const std::vector<Vertex>& current,
                                std::size_t target_size) {
    std::size_t diff = 0;
    auto a = previous.begin();
    auto b = current.begin();
    while (a != previous.end() && b != current.end()) {
        if (*a < *b) { ++diff; ++a; }
        else if (*b < *a) { ++diff; ++b; }
        else { ++a; ++b; }
    }
    diff += static_cast<std::size_t>(std::distance(a, previous.end()) + std::distance(b, current.end()));
    return static_cast<double>(diff) / (2.0 * static_cast<double>(target_size));
}

// One DLS-MC run: owns its clique state, penalties and generator. The phase
// methods are public so they can be driven step by step.
template <class Rng = std::mt19937_64, class Observer = NoObserver>
class Search {
public:
    Search(const Graph& g, const SolverConfig& cfg, Observer observer = {})
        : graph_(&g), cfg_(cfg), rng_(cfg.seed), state_(g), penalties_(g.order(), cfg.penalty_delay),
          observer_(std::move(observer)) {
        if (g.order() == 0) throw std::invalid_argument("solve: graph has no vertices");
        if (cfg.target_size < 1 || cfg.target_size > g.order())
            throw std::invalid_argument("solve: target clique size must lie in [1, " + std::to_string(g.order()) + "]");
    }

    CliqueState& state() noexcept { return state_; }
    PenaltyState& penalties() noexcept { return penalties_; }
    Rng& rng() noexcept { return rng_; }
    Observer& observer() noexcept { return observer_; }
    std::uint64_t steps() const noexcept { return steps_; }
    bool budget_exhausted() const noexcept { return steps_ >= cfg_.max_steps; }
    bool target_reached() const noexcept { return state_.size() >= cfg_.target_size; }

    // Adds minimum-penalty improving vertices until none is selectable, the
    // target is met, or the step budget runs out.
    std::optional<Vertex> expand() {
        std::optional<Vertex> last;
        while (!target_reached() && !budget_exhausted() && !state_.improving().empty()) {
            const auto v = cfg_.availability_in_expand
                               ? penalties_.select_min_penalty(state_.improving(), rng_)
                               : penalties_.select_min_penalty_ignoring_availability(state_.improving().members(), rng_);
            if (!v) break;
            state_.add_vertex(*v);
            ++steps_;
            ++round_improving_;
            last = v;
            note_size();
            if constexpr (requires { observer_.on_step(StepKind::expand, *v, std::optional<Vertex>{}, state_, penalties_); })
                observer_.on_step(StepKind::expand, *v, std::optional<Vertex>{}, state_, penalties_);
        }
        return last;
    }

    // Swaps minimum-penalty level vertices into C while NI is empty.
    // `swap_budget` stands in for |C ∩ C'| and is decremented per swap.
    std::optional<Vertex> plateau_search(std::size_t& swap_budget) {
        std::optional<Vertex> last;
        while (state_.improving().empty() && !state_.level().empty() && swap_budget > 0 && !budget_exhausted()) {
            const auto v = penalties_.select_min_penalty(state_.level(), rng_);
            if (!v) break;
            const Vertex out = state_.swap_in(*v);
            ++steps_;
            ++round_swaps_;
            --swap_budget;
            last = v;
            if constexpr (requires { observer_.on_step(StepKind::swap, *v, std::optional<Vertex>{out}, state_, penalties_); })
                observer_.on_step(StepKind::swap, *v, std::optional<Vertex>{out}, state_, penalties_);
        }
        return last;
    }

    // pd > 1: restart from the last added vertex. pd = 1: splice in a
    // uniformly drawn vertex, dropping members not adjacent to it.
    void perturb(std::optional<Vertex> last_added) {
        if (cfg_.penalty_delay > 1) {
            state_.reset_to(last_added.value_or(state_.clique()[0]));
        } else {
            std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(graph_->order() - 1));
            perturb_with(pick(rng_));
        }
        penalties_.clear_availability();
        if constexpr (requires { observer_.on_perturbed(state_, penalties_); }) observer_.on_perturbed(state_, penalties_);
    }

    // The pd = 1 splice with a given vertex (no availability reset).
    void perturb_with(Vertex v) {
        if (state_.clique().contains(v)) return;
        scratch_.clear();
        for (Vertex u : state_.clique())
            if (graph_->adjacent(u, v)) scratch_.push_back(u);
        scratch_.push_back(v);
        state_.restore_to(scratch_);
    }

    SolverResult run() {
        const auto start = std::chrono::steady_clock::now();
        SolverResult result;
        std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(graph_->order() - 1));
        state_.reset_to(pick(rng_));
        penalties_.init();
        steps_ = 0;
        best_.clear();
        note_size();
        std::vector<Vertex> previous_clique;
        bool have_previous = false;

        auto finish = [&](SolveStatus status) {
            result.status = status;
            if (status == SolveStatus::found) {
                result.clique.assign(state_.clique().begin(), state_.clique().end());
                std::sort(result.clique.begin(), result.clique.end());
            } else {
                result.clique = best_;
            }
            result.best_size = best_.size();
            result.steps = steps_;
            result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return result;
        };

        if (target_reached()) return finish(SolveStatus::found);
        while (!budget_exhausted()) {
            ++result.rounds;
            round_improving_ = 0;
            round_swaps_ = 0;
            std::optional<Vertex> last = expand();
            if (target_reached()) return finish(SolveStatus::found);

            std::size_t swap_budget = state_.size();
            if (auto v = plateau_search(swap_budget)) last = v;
            while (!state_.improving().empty() && !budget_exhausted()) {
                auto added = expand();
                if (target_reached()) return finish(SolveStatus::found);
                if (!added) break;
                last = added;
                if (auto v = plateau_search(swap_budget)) last = v;
            }

            penalties_.update(state_.clique().members());
            if constexpr (requires { observer_.on_round_end(state_, penalties_); }) observer_.on_round_end(state_, penalties_);
            if (cfg_.instrument) {
                PerturbationEvent ev;
                ev.improving_steps = round_improving_;
                ev.plateau_swaps = round_swaps_;
                ev.clique.assign(state_.clique().begin(), state_.clique().end());
                std::sort(ev.clique.begin(), ev.clique.end());
                ev.penalised_vertices = penalties_.penalised_count();
                if (have_previous) ev.relative_mobility = relative_mobility(previous_clique, ev.clique, cfg_.target_size);
                previous_clique = ev.clique;
                have_previous = true;
                result.trace.push_back(std::move(ev));
            }
            perturb(last);
        }
        return finish(SolveStatus::failed);
    }

private:
    void note_size() {
        if (state_.size() <= best_.size()) return;
        best_.assign(state_.clique().begin(), state_.clique().end());
        std::sort(best_.begin(), best_.end());
    }

    const Graph* graph_;
    SolverConfig cfg_;
    Rng rng_;
    CliqueState state_;
    PenaltyState penalties_;
    Observer observer_;
    std::uint64_t steps_ = 0;
    std::uint64_t round_improving_ = 0;
    std::uint64_t round_swaps_ = 0;
    std::vector<Vertex> best_;
    std::vector<Vertex> scratch_;
};

inline SolverResult solve(const Graph& g, const SolverConfig& cfg) { return Search<>(g, cfg).run(); }

template <class Observer>
SolverResult solve(const Graph& g, const SolverConfig& cfg, Observer observer) {
    return Search<std::mt19937_64, Observer>(g, cfg, std::move(observer)).run();
}

inline SolverResult solve_instrumented(const Graph& g, SolverConfig cfg) {
    cfg.instrument = true;
    return solve(g, cfg);
}

} // namespace dlsmc

#endif // DLSMC_SOLVER_HPP
