#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hz4 {

// Canonical undirected edge, u < v.
struct Edge {
    int u = -1;
    int v = -1;
    Edge() = default;
    Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}
    bool operator==(const Edge& o) const { return u == o.u && v == o.v; }
    bool operator<(const Edge& o) const { return u != o.u ? u < o.u : v < o.v; }
};

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, std::size_t byte)
        : std::runtime_error(msg + " (byte " + std::to_string(byte) + ")"), offset(byte) {}
    std::size_t offset;
};

// Simple undirected graph over dense vertex ids 0..n-1.
// Immutable once built; construct through GraphBuilder.
class Graph {
public:
    Graph() = default;

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int idx) const { return edges_[idx]; }

    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    int max_degree() const;

    // Neighbors with their edge index, sorted by neighbor id.
    const std::vector<std::pair<int, int>>& inc(int v) const { return adj_[v]; }

    bool has_edge(int u, int v) const;
    // Index into edges() or -1.
    int edge_index(int u, int v) const;

    // Adjacency bitmask; only valid while n <= 64.
    uint64_t mask(int v) const { return mask_[v]; }

    bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
    friend class GraphBuilder;
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
    std::vector<uint64_t> mask_;
};

class GraphBuilder {
public:
    explicit GraphBuilder(int n);
    GraphBuilder& add_edge(int u, int v);
    bool has_edge(int u, int v) const;
    int n() const { return n_; }
    Graph build() const;

private:
    int n_;
    std::vector<Edge> edges_;
};

// graph6 interchange. Optional ">>graph6<<" header tolerated on input, never emitted.
Graph parse_graph6(const std::string& line);
std::string emit_graph6(const Graph& g);

// Whitespace-separated "u v" pairs, one edge per line, 0-based ids.
Graph parse_edge_list(const std::string& text);
std::string emit_edge_list(const Graph& g);

int degree(const Graph& g, int v);
int max_degree(const Graph& g);

// Subgraph induced by the maximum-degree vertices, plus the map from
// core vertex ids back to ids in g. Throws on edgeless input.
std::pair<Graph, std::vector<int>> core(const Graph& g);

bool is_overfull(const Graph& g);  // throws on edgeless input

std::vector<std::vector<int>> connected_components(const Graph& g);
bool is_connected(const Graph& g);

bool is_k5_minus_e(const Graph& g);

// g minus one edge (by index).
Graph remove_edge(const Graph& g, int edge_idx);
// Subgraph induced by the given vertex set (ids remapped in given order).
Graph induced_subgraph(const Graph& g, const std::vector<int>& verts);

}  // namespace hz4
