#ifndef DLSMC_GRAPH_HPP
#define DLSMC_GRAPH_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <iterator>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dlsmc {

using Vertex = std::uint32_t;

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public GraphError {
public:
    ParseError(std::size_t line, const std::string& what)
        : GraphError(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Undirected simple graph, immutable once built. Adjacency is kept twice:
// a packed bit matrix for O(1) edge tests and sorted neighbour lists.
class Graph {
public:
    Graph() = default;

    // Builds from 0-based edge pairs. Duplicates (in either orientation) are
    // merged; self-loops and out-of-range ids throw.
    Graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges)
        : n_(n), words_((n + 63) / 64), bits_(n * words_, 0), adj_(n) {
        for (auto [u, v] : edges) {
            if (u >= n || v >= n) throw GraphError("edge endpoint out of range");
            if (u == v) throw GraphError("self-loop on vertex " + std::to_string(u + 1));
            if (test(u, v)) continue;
            set(u, v);
            set(v, u);
            ++m_;
        }
        build_lists();
    }

    std::size_t order() const noexcept { return n_; }
    std::size_t size() const noexcept { return m_; }

    bool is_edge(Vertex u, Vertex v) const {
        if (u >= n_ || v >= n_) throw GraphError("vertex id out of range");
        return test(u, v);
    }

    // Unchecked variant for inner loops.
    bool adjacent(Vertex u, Vertex v) const noexcept { return test(u, v); }

    std::span<const Vertex> neighbours(Vertex v) const noexcept { return adj_[v]; }
    std::size_t degree(Vertex v) const noexcept { return adj_[v].size(); }

    std::vector<std::pair<Vertex, Vertex>> edges() const {
        std::vector<std::pair<Vertex, Vertex>> out;
        out.reserve(m_);
        for (Vertex u = 0; u < n_; ++u)
            for (Vertex v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.m_ == b.m_ && a.bits_ == b.bits_;
    }

private:
    friend Graph complement(const Graph& g);

    bool test(Vertex u, Vertex v) const noexcept {
        return (bits_[u * words_ + (v >> 6)] >> (v & 63)) & 1u;
    }
    void set(Vertex u, Vertex v) noexcept { bits_[u * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63); }

    void build_lists() {
        for (Vertex u = 0; u < n_; ++u) {
            auto& list = adj_[u];
            list.clear();
            for (std::size_t w = 0; w < words_; ++w) {
                std::uint64_t word = bits_[u * words_ + w];
                while (word) {
                    list.push_back(static_cast<Vertex>(w * 64 + std::countr_zero(word)));
                    word &= word - 1;
                }
            }
        }
    }

    std::size_t n_ = 0;
    std::size_t m_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
    std::vector<std::vector<Vertex>> adj_;
};

inline bool is_edge(const Graph& g, Vertex u, Vertex v) { return g.is_edge(u, v); }

inline Graph complement(const Graph& g) {
    Graph c;
    c.n_ = g.n_;
    c.words_ = g.words_;
    c.bits_.assign(g.bits_.size(), 0);
    c.adj_.resize(g.n_);
    for (Vertex u = 0; u < g.n_; ++u) {
        for (std::size_t w = 0; w < g.words_; ++w) {
            std::uint64_t mask = ~std::uint64_t{0};
            if (w + 1 == g.words_ && g.n_ % 64 != 0) mask = (std::uint64_t{1} << (g.n_ % 64)) - 1;
            c.bits_[u * g.words_ + w] = ~g.bits_[u * g.words_ + w] & mask;
        }
        c.bits_[u * g.words_ + (u >> 6)] &= ~(std::uint64_t{1} << (u & 63));
    }
    c.m_ = g.n_ * (g.n_ - (g.n_ > 0 ? 1 : 0)) / 2 - g.m_;
    c.build_lists();
    return c;
}

struct DegreeStats {
    double mean;
    double stddev;
};

// Population mean and standard deviation of degree over `subset` (all
// vertices when omitted).
inline DegreeStats degree_stats(const Graph& g, std::optional<std::span<const Vertex>> subset = std::nullopt) {
    std::vector<Vertex> all;
    if (!subset) {
        all.resize(g.order());
        for (Vertex v = 0; v < g.order(); ++v) all[v] = v;
        subset = std::span<const Vertex>(all);
    }
    if (subset->empty()) throw GraphError("degree_stats: empty vertex subset");
    double sum = 0;
    for (Vertex v : *subset) {
        if (v >= g.order()) throw GraphError("degree_stats: vertex id out of range");
        sum += static_cast<double>(g.degree(v));
    }
    const double mean = sum / static_cast<double>(subset->size());
    double sq = 0;
    for (Vertex v : *subset) {
        const double d = static_cast<double>(g.degree(v)) - mean;
        sq += d * d;
    }
    return {mean, std::sqrt(sq / static_cast<double>(subset->size()))};
}

// Uniform G(n, p) sampler.
template <class Rng>
Graph random_graph(std::size_t n, double p, Rng& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng)) edges.emplace_back(u, v);
    return Graph(n, edges);
}

// ---------------------------------------------------------------------------
// DIMACS I/O. Files use 1-based vertex ids; everything in memory is 0-based.

using WarningSink = std::function<void(const std::string&)>;

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

struct ProblemLine {
    std::size_t n;
    std::size_t m;
};

inline ProblemLine parse_problem_line(std::string_view line, std::size_t lineno) {
    std::istringstream in{std::string(line)};
    std::string p, format;
    long long n = -1, m = -1;
    if (!(in >> p >> format >> n >> m) || p != "p" || n < 0 || m < 0)
        throw ParseError(lineno, "malformed problem line");
    // "col" is the colouring-challenge spelling of the same format.
    if (format != "edge" && format != "col") throw ParseError(lineno, "unsupported problem format '" + format + "'");
    std::string extra;
    if (in >> extra) throw ParseError(lineno, "trailing tokens on problem line");
    return {static_cast<std::size_t>(n), static_cast<std::size_t>(m)};
}

} // namespace detail

inline Graph parse_dimacs_ascii(std::istream& in, const WarningSink& warn = {}) {
    std::optional<detail::ProblemLine> problem;
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto line = detail::trim(raw);
        if (line.empty() || line.front() == 'c') continue;
        if (line.front() == 'p') {
            if (problem) throw ParseError(lineno, "duplicate problem line");
            problem = detail::parse_problem_line(line, lineno);
            edges.reserve(problem->m);
            continue;
        }
        if (line.front() == 'e') {
            if (!problem) throw ParseError(lineno, "edge line before problem line");
            std::istringstream fields{std::string(line.substr(1))};
            long long u = 0, v = 0;
            std::string extra;
            if (!(fields >> u >> v) || (fields >> extra)) throw ParseError(lineno, "malformed edge line");
            const auto n = static_cast<long long>(problem->n);
            if (u < 1 || v < 1 || u > n || v > n) throw ParseError(lineno, "vertex index out of range");
            if (u == v) throw ParseError(lineno, "self-loop on vertex " + std::to_string(u));
            edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
            continue;
        }
        throw ParseError(lineno, "unrecognised line");
    }
    if (!problem) throw ParseError(0, "missing problem line");
    Graph g(problem->n, edges);
    if (g.size() != problem->m && warn)
        warn("problem line declares " + std::to_string(problem->m) + " edges, found " + std::to_string(g.size()) +
             " distinct edges");
    return g;
}

inline Graph parse_dimacs_ascii(std::string_view text, const WarningSink& warn = {}) {
    std::istringstream in{std::string(text)};
    return parse_dimacs_ascii(in, warn);
}

// Binary layout: a decimal preamble length on the first line, the preamble
// (which carries the `p` line), then one row per vertex i holding
// floor(i/8)+1 bytes; bit (7 - j%8) of byte j/8 is set iff {i,j} is an edge,
// for j <= i.
inline Graph parse_dimacs_binary(std::istream& in, const WarningSink& warn = {}) {
    std::string first;
    if (!std::getline(in, first)) throw ParseError(0, "truncated stream: missing preamble length");
    std::size_t preamble_len = 0;
    try {
        std::size_t used = 0;
        const auto t = std::string(detail::trim(first));
        preamble_len = std::stoul(t, &used);
        if (used != t.size()) throw std::invalid_argument("junk");
    } catch (const std::exception&) {
        throw ParseError(1, "malformed preamble length");
    }
    std::string preamble(preamble_len, '\0');
    in.read(preamble.data(), static_cast<std::streamsize>(preamble_len));
    if (static_cast<std::size_t>(in.gcount()) != preamble_len) throw ParseError(0, "truncated stream: short preamble");

    std::optional<detail::ProblemLine> problem;
    std::istringstream pre(preamble);
    std::string raw;
    while (std::getline(pre, raw)) {
        const auto line = detail::trim(raw);
        if (!line.empty() && line.front() == 'p') {
            if (problem) throw ParseError(0, "duplicate problem line in preamble");
            problem = detail::parse_problem_line(line, 0);
        }
    }
    if (!problem) throw ParseError(0, "preamble without problem line");

    const std::size_t n = problem->n;
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(problem->m);
    std::vector<unsigned char> row((n + 7) / 8);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t len = i / 8 + 1;
        in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(len));
        if (static_cast<std::size_t>(in.gcount()) != len)
            throw ParseError(0, "truncated stream: expected " + std::to_string(n) + " rows, got " + std::to_string(i));
        for (std::size_t j = 0; j <= i; ++j) {
            if (!((row[j / 8] >> (7 - j % 8)) & 1u)) continue;
            if (j == i) throw ParseError(0, "self-loop on vertex " + std::to_string(i + 1));
            edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
        }
    }
    Graph g(n, edges);
    if (g.size() != problem->m && warn)
        warn("problem line declares " + std::to_string(problem->m) + " edges, found " + std::to_string(g.size()));
    return g;
}

inline Graph parse_dimacs_binary(std::span<const std::byte> bytes, const WarningSink& warn = {}) {
    std::istringstream in(std::string(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
    return parse_dimacs_binary(in, warn);
}

inline void write_dimacs_ascii(std::ostream& out, const Graph& g) {
    out << "p edge " << g.order() << ' ' << g.size() << '\n';
    for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

inline void write_dimacs_binary(std::ostream& out, const Graph& g) {
    const std::string preamble = "p edge " + std::to_string(g.order()) + " " + std::to_string(g.size()) + "\n";
    out << preamble.size() << '\n' << preamble;
    std::vector<char> row;
    for (Vertex i = 0; i < g.order(); ++i) {
        row.assign(i / 8 + 1, 0);
        for (Vertex j : g.neighbours(i)) {
            if (j > i) break;
            row[j / 8] = static_cast<char>(row[j / 8] | (1 << (7 - j % 8)));
        }
        out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
}

// Loads an instance file, picking the binary parser for `.b` suffixes unless
// told otherwise.
inline Graph load_dimacs(const std::string& path, std::optional<bool> binary = std::nullopt, const WarningSink& warn = {}) {
    const bool as_binary = binary.value_or(path.size() >= 2 && path.ends_with(".b"));
    std::ifstream in(path, as_binary ? std::ios::binary : std::ios::in);
    if (!in) throw GraphError("cannot open instance file '" + path + "'");
    return as_binary ? parse_dimacs_binary(in, warn) : parse_dimacs_ascii(in, warn);
}

} // namespace dlsmc

#endif // DLSMC_GRAPH_HPP
