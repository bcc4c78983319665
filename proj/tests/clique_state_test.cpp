#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include <dlsmc/clique_state.hpp>
#include <dlsmc/oracle.hpp>

#include "support/test_graphs.hpp"

using namespace dlsmc;
using namespace dlsmc::testing;

namespace {

std::set<Vertex> as_set(const IndexedVertexSet& s) { return {s.begin(), s.end()}; }

} // namespace

TEST(CliqueState, ResetTo) {
    const Graph k5 = complete(5);
    CliqueState s(k5);
    s.reset_to(0);
    EXPECT_EQ(as_set(s.improving()), (std::set<Vertex>{1, 2, 3, 4}));
    EXPECT_TRUE(s.level().empty());

    const Graph p3 = path3();
    CliqueState t(p3);
    t.reset_to(1);
    EXPECT_EQ(as_set(t.improving()), (std::set<Vertex>{0, 2}));
    EXPECT_TRUE(t.level().empty());
    t.reset_to(0);
    EXPECT_EQ(as_set(t.improving()), (std::set<Vertex>{1}));
    EXPECT_EQ(as_set(t.level()), (std::set<Vertex>{2}));
    EXPECT_EQ(check_state(t), "");
    EXPECT_THROW(t.reset_to(3), std::out_of_range);
}

TEST(CliqueState, AddVertex) {
    const Graph k5 = complete(5);
    CliqueState s(k5);
    s.reset_to(0);
    s.add_vertex(1);
    EXPECT_EQ(as_set(s.improving()), (std::set<Vertex>{2, 3, 4}));
    EXPECT_TRUE(s.level().empty());
    EXPECT_EQ(s.size(), 2u);

    const Graph st = star(3);
    CliqueState t(st);
    t.reset_to(0);
    t.add_vertex(1);
    EXPECT_TRUE(t.improving().empty());
    EXPECT_EQ(as_set(t.level()), (std::set<Vertex>{2, 3}));
    EXPECT_EQ(check_state(t), "");

    const Graph p3 = path3();
    CliqueState u(p3);
    u.reset_to(1);
    u.add_vertex(0);
    EXPECT_TRUE(u.improving().empty());
    EXPECT_EQ(as_set(u.level()), (std::set<Vertex>{2}));
    EXPECT_EQ(check_state(u), "");
    EXPECT_THROW(u.add_vertex(2), std::logic_error);
}

TEST(CliqueState, SwapIn) {
    const Graph p3 = path3();
    CliqueState s(p3);
    const std::vector<Vertex> c01{0, 1};
    s.restore_to(c01);
    EXPECT_EQ(s.swap_in(2), 0u);
    EXPECT_EQ(as_set(s.clique()), (std::set<Vertex>{1, 2}));
    EXPECT_EQ(check_state(s), "");

    // K4 without the edge {0,3}.
    const Graph k4m(4, EdgeList{{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
    CliqueState t(k4m);
    const std::vector<Vertex> c012{0, 1, 2};
    t.restore_to(c012);
    EXPECT_EQ(t.swap_in(3), 0u);
    EXPECT_EQ(as_set(t.clique()), (std::set<Vertex>{1, 2, 3}));
    EXPECT_EQ(check_state(t), "");

    // Triangle plus an isolated vertex.
    const Graph tri(4, EdgeList{{0, 1}, {0, 2}, {1, 2}});
    CliqueState u(tri);
    u.restore_to(c012);
    EXPECT_THROW(u.swap_in(3), std::logic_error);
}

TEST(CliqueState, RestoreTo) {
    const Graph p3 = path3();
    CliqueState s(p3);
    s.restore_to({});
    EXPECT_EQ(s.size(), 0u);
    EXPECT_EQ(as_set(s.improving()), (std::set<Vertex>{0, 1, 2}));
    s.add_vertex(1);
    s.add_vertex(2);
    EXPECT_EQ(check_state(s), "");

    const std::vector<Vertex> bad{0, 2};
    EXPECT_THROW(s.restore_to(bad), std::invalid_argument);
    EXPECT_EQ(as_set(s.clique()), (std::set<Vertex>{1, 2}));  // unchanged on error

    const std::vector<Vertex> same(s.clique().begin(), s.clique().end());
    const auto ni = as_set(s.improving()), nl = as_set(s.level());
    s.restore_to(same);
    EXPECT_EQ(as_set(s.clique()), (std::set<Vertex>{1, 2}));
    EXPECT_EQ(as_set(s.improving()), ni);
    EXPECT_EQ(as_set(s.level()), nl);
}

// Random valid operation sequences checked against a from-scratch
// recomputation after every operation.
TEST(CliqueState, MatchesRecomputationOnRandomSequences) {
    std::mt19937_64 rng(31337);
    const double densities[] = {0.2, 0.5, 0.9};
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng() % 49;
        const Graph g = random_graph(n, densities[trial % 3], rng);
        CliqueState s(g);
        s.reset_to(static_cast<Vertex>(rng() % n));
        for (int op = 0; op < 10'000; ++op) {
            const std::size_t before = s.size();
            const auto choice = rng() % 10;
            if (choice < 5 && !s.improving().empty()) {
                const Vertex v = s.improving().random_member(rng);
                std::vector<Vertex> grown(s.clique().begin(), s.clique().end());
                grown.push_back(v);
                ASSERT_TRUE(verify_clique(g, grown));
                s.add_vertex(v);
                ASSERT_EQ(s.size(), before + 1);
            } else if (choice < 9 && !s.level().empty()) {
                const Vertex v = s.level().random_member(rng);
                const Vertex out = s.swap_in(v);
                ASSERT_FALSE(g.is_edge(out, v));
                ASSERT_EQ(s.size(), before);
            } else if (choice == 9 && rng() % 4 == 0) {
                s.reset_to(static_cast<Vertex>(rng() % n));
            } else {
                // Drop a random subset of C via restore_to.
                std::vector<Vertex> keep;
                for (Vertex c : s.clique())
                    if (rng() % 3 != 0) keep.push_back(c);
                s.restore_to(keep);
            }
            const std::string problem = check_state(s);
            ASSERT_EQ(problem, "") << "trial " << trial << " op " << op;
        }
    }
}
