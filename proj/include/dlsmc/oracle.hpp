#ifndef DLSMC_ORACLE_HPP
#define DLSMC_ORACLE_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "graph.hpp"

namespace dlsmc {

inline bool verify_clique(const Graph& g, std::span<const Vertex> s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] >= g.order()) throw GraphError("verify_clique: vertex id out of range");
        for (std::size_t j = 0; j < i; ++j)
            if (!g.adjacent(s[i], s[j])) return false;
    }
    return true;
}

struct ExactClique {
    std::size_t size = 0;
    std::vector<Vertex> witness;  // sorted
};

namespace detail {

// Branch and bound with a greedy-colouring bound (after Tomita's MCQ). In
// enumeration mode it collects every clique of exactly `target` vertices
// instead of chasing the incumbent.
class CliqueSearch {
public:
    explicit CliqueSearch(const Graph& g) : g_(g) {}

    ExactClique maximum() {
        enumerate_ = false;
        best_.clear();
        run();
        ExactClique out{best_.size(), best_};
        std::sort(out.witness.begin(), out.witness.end());
        return out;
    }

    std::vector<std::vector<Vertex>> all_of_size(std::size_t target) {
        enumerate_ = true;
        target_ = target;
        found_.clear();
        if (target == 0) return {{}};
        run();
        for (auto& c : found_) std::sort(c.begin(), c.end());
        std::sort(found_.begin(), found_.end());
        return found_;
    }

private:
    void run() {
        std::vector<Vertex> candidates(g_.order());
        for (Vertex v = 0; v < g_.order(); ++v) candidates[v] = v;
        // Non-increasing degree order tends to give tighter colourings.
        std::stable_sort(candidates.begin(), candidates.end(),
                         [&](Vertex a, Vertex b) { return g_.degree(a) > g_.degree(b); });
        current_.clear();
        expand(candidates);
    }

    // Colours `p` greedily; returns vertices ordered by colour class with
    // the matching (1-based) colour numbers.
    void colour_sort(const std::vector<Vertex>& p, std::vector<Vertex>& order, std::vector<std::size_t>& colour) const {
        std::vector<std::vector<Vertex>> classes;
        for (Vertex v : p) {
            std::size_t k = 0;
            for (; k < classes.size(); ++k) {
                bool clash = false;
                for (Vertex u : classes[k])
                    if (g_.adjacent(u, v)) { clash = true; break; }
                if (!clash) break;
            }
            if (k == classes.size()) classes.emplace_back();
            classes[k].push_back(v);
        }
        order.clear();
        colour.clear();
        for (std::size_t k = 0; k < classes.size(); ++k)
            for (Vertex v : classes[k]) {
                order.push_back(v);
                colour.push_back(k + 1);
            }
    }

    bool prune(std::size_t bound) const {
        return enumerate_ ? current_.size() + bound < target_ : current_.size() + bound <= best_.size();
    }

    void expand(std::vector<Vertex> p) {
        std::vector<Vertex> order;
        std::vector<std::size_t> colour;
        colour_sort(p, order, colour);
        for (std::size_t i = order.size(); i-- > 0;) {
            if (prune(colour[i])) return;
            const Vertex v = order[i];
            current_.push_back(v);
            std::vector<Vertex> next;
            for (std::size_t j = 0; j < i; ++j)
                if (g_.adjacent(order[j], v)) next.push_back(order[j]);
            if (enumerate_ && current_.size() == target_) {
                found_.push_back(current_);
            } else if (next.empty()) {
                if (!enumerate_ && current_.size() > best_.size()) best_ = current_;
            } else {
                expand(std::move(next));
            }
            current_.pop_back();
        }
    }

    const Graph& g_;
    bool enumerate_ = false;
    std::size_t target_ = 0;
    std::vector<Vertex> current_;
    std::vector<Vertex> best_;
    std::vector<std::vector<Vertex>> found_;
};

} // namespace detail

// Exact maximum clique. Exponential in the worst case; meant for test-sized
// graphs.
inline ExactClique max_clique_exact(const Graph& g) { return detail::CliqueSearch(g).maximum(); }

// Every distinct maximum clique, each sorted, in lexicographic order.
inline std::vector<std::vector<Vertex>> enumerate_maximum_cliques(const Graph& g) {
    detail::CliqueSearch search(g);
    const auto omega = search.maximum().size;
    return search.all_of_size(omega);
}

} // namespace dlsmc

#endif // DLSMC_ORACLE_HPP
