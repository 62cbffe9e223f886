#include "catgossip/network.hpp"

#include "catgossip/errors.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>

namespace catgossip {

namespace {

std::size_t bfs_eccentricity(const std::vector<std::vector<std::size_t>>& adj, std::size_t src,
                             std::size_t& reached) {
    std::vector<std::size_t> dist(adj.size(), static_cast<std::size_t>(-1));
    std::queue<std::size_t> queue;
    dist[src] = 0;
    queue.push(src);
    std::size_t ecc = 0;
    reached = 1;
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop();
        for (std::size_t w : adj[v]) {
            if (dist[w] != static_cast<std::size_t>(-1)) continue;
            dist[w] = dist[v] + 1;
            ecc = std::max(ecc, dist[w]);
            ++reached;
            queue.push(w);
        }
    }
    return ecc;
}

}  // namespace

Graph::Graph(std::vector<std::vector<std::size_t>> adjacency) : adjacency_(std::move(adjacency)) {
    if (adjacency_.size() < 2) throw GraphError("graph: at least 2 agents are required");
    for (std::size_t v = 0; v < adjacency_.size(); ++v) {
        auto& nb = adjacency_[v];
        std::sort(nb.begin(), nb.end());
        max_degree_ = std::max(max_degree_, nb.size());
        for (std::size_t w : nb) {
            if (v < w) edges_.emplace_back(v, w);
        }
    }
    for (std::size_t v = 0; v < adjacency_.size(); ++v) {
        std::size_t reached = 0;
        diameter_ = std::max(diameter_, bfs_eccentricity(adjacency_, v, reached));
        if (reached != adjacency_.size()) throw DisconnectedGraph("graph: not connected");
    }
}

Graph Graph::complete(std::size_t n) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t w = 0; w < n; ++w) {
            if (v != w) adj[v].push_back(w);
        }
    }
    return Graph(std::move(adj));
}

Graph Graph::path(std::size_t n) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t v = 0; v + 1 < n; ++v) {
        adj[v].push_back(v + 1);
        adj[v + 1].push_back(v);
    }
    return Graph(std::move(adj));
}

Graph Graph::from_edge_list(std::size_t n, const std::vector<Edge>& edges) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& [v, w] : edges) {
        if (v >= n || w >= n) {
            throw InvalidEdge("edge (" + std::to_string(v) + "," + std::to_string(w) + ") out of range");
        }
        if (v == w) throw InvalidEdge("self-loop at vertex " + std::to_string(v));
        if (std::find(adj[v].begin(), adj[v].end(), w) != adj[v].end()) {
            throw InvalidEdge("duplicate edge (" + std::to_string(v) + "," + std::to_string(w) + ")");
        }
        adj[v].push_back(w);
        adj[w].push_back(v);
    }
    return Graph(std::move(adj));
}

bool Graph::adjacent(std::size_t v, std::size_t w) const {
    if (v >= size() || w >= size()) return false;
    return std::binary_search(adjacency_[v].begin(), adjacency_[v].end(), w);
}

std::vector<Edge> parse_edge_list(const std::string& text) {
    std::vector<Edge> edges;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        long long u = 0;
        long long v = 0;
        if (!(fields >> u)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw InvalidEdge("edge list line " + std::to_string(lineno) + ": expected two indices");
        }
        std::string rest;
        if (!(fields >> v) || (fields >> rest) || u < 0 || v < 0) {
            throw InvalidEdge("edge list line " + std::to_string(lineno) + ": expected two nonnegative indices");
        }
        edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    }
    return edges;
}

Graph load_edge_list(const std::filesystem::path& file, std::size_t n) {
    std::ifstream in(file);
    if (!in) throw GraphError("cannot open edge list " + file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    const auto edges = parse_edge_list(buf.str());
    if (n == 0) {
        for (const auto& [u, v] : edges) n = std::max({n, u + 1, v + 1});
    }
    return Graph::from_edge_list(n, edges);
}

double edge_probability(const Graph& g, std::size_t v, std::size_t w) {
    if (v == w || !g.adjacent(v, w)) return 0.0;
    const double n = static_cast<double>(g.size());
    return (1.0 / n) * (1.0 / static_cast<double>(g.degree(v)) + 1.0 / static_cast<double>(g.degree(w)));
}

Edge sample_pair(const Graph& g, Rng& rng) {
    std::uniform_int_distribution<std::size_t> pick_v(0, g.size() - 1);
    const std::size_t v = pick_v(rng);
    const auto& nb = g.neighbors(v);
    std::uniform_int_distribution<std::size_t> pick_w(0, nb.size() - 1);
    return {v, nb[pick_w(rng)]};
}

double c_g_constant(const Graph& g) {
    return static_cast<double>(g.size() - 1) * static_cast<double>(g.max_degree()) *
           static_cast<double>(g.diameter());
}

}  // namespace catgossip
