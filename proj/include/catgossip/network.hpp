#pragma once

// Communication graphs and the random wake-up law: a uniform agent V, then a
// uniform neighbour W of V.

#include <cstddef>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace catgossip {

using Rng = std::mt19937_64;

using Edge = std::pair<std::size_t, std::size_t>;

/// Simple undirected connected graph. Immutable after construction.
class Graph {
public:
    static Graph complete(std::size_t n);
    static Graph path(std::size_t n);
    /// Throws InvalidEdge (self-loop, duplicate, out-of-range) or DisconnectedGraph.
    static Graph from_edge_list(std::size_t n, const std::vector<Edge>& edges);

    std::size_t size() const { return adjacency_.size(); }
    const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_[v]; }
    std::size_t degree(std::size_t v) const { return adjacency_[v].size(); }
    std::size_t max_degree() const { return max_degree_; }
    /// Hop diameter (BFS from every vertex).
    std::size_t diameter() const { return diameter_; }
    bool adjacent(std::size_t v, std::size_t w) const;
    /// Each undirected edge once, as (v, w) with v < w, sorted.
    const std::vector<Edge>& edges() const { return edges_; }

private:
    explicit Graph(std::vector<std::vector<std::size_t>> adjacency);

    std::vector<std::vector<std::size_t>> adjacency_;
    std::vector<Edge> edges_;
    std::size_t max_degree_ = 0;
    std::size_t diameter_ = 0;
};

/// Edge-list text: one "u v" pair per line, 0-indexed, '#' starts a comment.
/// The agent count is 1 + the largest index unless `n` is given.
Graph load_edge_list(const std::filesystem::path& file, std::size_t n = 0);
std::vector<Edge> parse_edge_list(const std::string& text);

/// P[{V,W} = {v,w}] = (1/N)(1/deg v + 1/deg w) for adjacent v, w; 0 otherwise.
double edge_probability(const Graph& g, std::size_t v, std::size_t w);

/// Ordered draw (V, W): V uniform over agents, W uniform over N(V).
Edge sample_pair(const Graph& g, Rng& rng);

/// (N - 1) * max_degree * diameter
double c_g_constant(const Graph& g);

}  // namespace catgossip
