#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <dlsmc/oracle.hpp>

#include "support/test_graphs.hpp"

using namespace dlsmc;
using namespace dlsmc::testing;

namespace {

using Cliques = std::vector<std::vector<Vertex>>;

// Independent reference: every subset of an n <= 20 vertex graph as a bit
// mask, using per-vertex neighbour masks.
struct Brute {
    std::size_t omega = 0;
    Cliques maximum;
};

Brute brute_force(const Graph& g) {
    const std::size_t n = g.order();
    std::vector<std::uint32_t> nb(n, 0);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (g.is_edge(u, v)) nb[u] |= 1u << v;
    // is_clique[mask] built from mask without its lowest bit.
    std::vector<char> is_clique(std::size_t{1} << n, 0);
    is_clique[0] = 1;
    Brute b;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const int low = std::countr_zero(mask);
        const std::uint32_t rest = mask & (mask - 1);
        is_clique[mask] = is_clique[rest] && (rest & ~nb[low]) == 0;
        if (!is_clique[mask]) continue;
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        if (size < b.omega) continue;
        if (size > b.omega) {
            b.omega = size;
            b.maximum.clear();
        }
        std::vector<Vertex> c;
        for (Vertex v = 0; v < n; ++v)
            if (mask >> v & 1) c.push_back(v);
        b.maximum.push_back(c);
    }
    std::sort(b.maximum.begin(), b.maximum.end());
    return b;
}

} // namespace

TEST(VerifyClique, Examples) {
    const std::vector<Vertex> all{0, 1, 2, 3, 4};
    EXPECT_TRUE(verify_clique(complete(5), all));
    const std::vector<Vertex> ends{0, 2};
    EXPECT_FALSE(verify_clique(path3(), ends));
    for (Vertex v = 0; v < 3; ++v) EXPECT_TRUE(verify_clique(path3(), std::vector<Vertex>{v}));
    EXPECT_TRUE(verify_clique(path3(), std::vector<Vertex>{}));
    EXPECT_THROW(verify_clique(path3(), std::vector<Vertex>{0, 3}), GraphError);
}

TEST(MaxCliqueExact, Examples) {
    EXPECT_EQ(max_clique_exact(complete(5)).size, 5u);
    EXPECT_EQ(max_clique_exact(cycle(5)).size, 2u);
    EXPECT_EQ(max_clique_exact(empty(4)).size, 1u);
    EXPECT_EQ(max_clique_exact(Graph(0, EdgeList{})).size, 0u);
}

TEST(MaxCliqueExact, MatchesBitmaskEnumeration) {
    std::mt19937_64 rng(18);
    const Graph g18 = random_graph(18, 0.5, rng);
    const auto exact = max_clique_exact(g18);
    const auto brute = brute_force(g18);
    EXPECT_EQ(exact.size, brute.omega);
    EXPECT_TRUE(verify_clique(g18, exact.witness));

    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + rng() % 16;
        const Graph g = random_graph(n, 0.1 + 0.02 * trial, rng);
        const auto e = max_clique_exact(g);
        const auto b = brute_force(g);
        ASSERT_EQ(e.size, b.omega) << "trial " << trial;
        ASSERT_EQ(e.witness.size(), e.size);
        ASSERT_TRUE(verify_clique(g, e.witness));
        ASSERT_EQ(enumerate_maximum_cliques(g), b.maximum) << "trial " << trial;
    }
}

TEST(EnumerateMaximumCliques, Examples) {
    EXPECT_EQ(enumerate_maximum_cliques(complete(4)), (Cliques{{0, 1, 2, 3}}));
    EXPECT_EQ(enumerate_maximum_cliques(cycle(5)), (Cliques{{0, 1}, {0, 4}, {1, 2}, {2, 3}, {3, 4}}));
    const Graph two_triangles(6, EdgeList{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    EXPECT_EQ(enumerate_maximum_cliques(two_triangles), (Cliques{{0, 1, 2}, {3, 4, 5}}));
}

TEST(Oracle, WitnessIsIndependentInComplement) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 5 + rng() % 40;
        const Graph g = random_graph(n, 0.3 + 0.02 * trial, rng);
        const auto e = max_clique_exact(g);
        const Graph c = complement(g);
        for (std::size_t i = 0; i < e.witness.size(); ++i)
            for (std::size_t j = 0; j < i; ++j) ASSERT_FALSE(c.is_edge(e.witness[i], e.witness[j]));
        const auto all = enumerate_maximum_cliques(g);
        EXPECT_TRUE(std::binary_search(all.begin(), all.end(), e.witness));
        for (const auto& clique : all) {
            EXPECT_EQ(clique.size(), e.size);
            EXPECT_TRUE(verify_clique(g, clique));
        }
        EXPECT_TRUE(std::adjacent_find(all.begin(), all.end()) == all.end());
    }
}

TEST(Oracle, DimacsFamilyOptima) {
    EXPECT_EQ(max_clique_exact(hamming(6, 4)).size, 4u);
    EXPECT_EQ(max_clique_exact(johnson(8, 2, 4)).size, 4u);
}
