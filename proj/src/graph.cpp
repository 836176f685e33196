#include "hz4/graph.hpp"

#include <algorithm>
#include <sstream>

namespace hz4 {

int Graph::max_degree() const {
    int d = 0;
    for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
}

bool Graph::has_edge(int u, int v) const {
    if (u == v) return false;
    if (n_ <= 64) return (mask_[u] >> v) & 1u;
    return edge_index(u, v) >= 0;
}

int Graph::edge_index(int u, int v) const {
    Edge e(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it != edges_.end() && *it == e) return static_cast<int>(it - edges_.begin());
    return -1;
}

GraphBuilder::GraphBuilder(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
}

GraphBuilder& GraphBuilder::add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("self-loop");
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::invalid_argument("vertex out of range");
    edges_.emplace_back(u, v);
    return *this;
}

bool GraphBuilder::has_edge(int u, int v) const {
    Edge e(u, v);
    return std::find(edges_.begin(), edges_.end(), e) != edges_.end();
}

Graph GraphBuilder::build() const {
    Graph g;
    g.n_ = n_;
    g.edges_ = edges_;
    std::sort(g.edges_.begin(), g.edges_.end());
    g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());
    g.adj_.assign(n_, {});
    for (int i = 0; i < static_cast<int>(g.edges_.size()); ++i) {
        g.adj_[g.edges_[i].u].emplace_back(g.edges_[i].v, i);
        g.adj_[g.edges_[i].v].emplace_back(g.edges_[i].u, i);
    }
    for (auto& a : g.adj_) std::sort(a.begin(), a.end());
    if (n_ <= 64) {
        g.mask_.assign(std::max(n_, 1), 0);
        for (const auto& e : g.edges_) {
            g.mask_[e.u] |= uint64_t(1) << e.v;
            g.mask_[e.v] |= uint64_t(1) << e.u;
        }
    }
    return g;
}

namespace {

constexpr int kG6Min = 63;   // '?'
constexpr int kG6Max = 126;  // '~'

void check_printable(const std::string& s, std::size_t i) {
    if (i >= s.size()) throw parse_error("graph6 payload too short", s.size());
    int c = static_cast<unsigned char>(s[i]);
    if (c < kG6Min || c > kG6Max) throw parse_error("non-printable graph6 byte", i);
}

}  // namespace

Graph parse_graph6(const std::string& raw) {
    std::string s = raw;
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    std::size_t base = 0;
    const std::string header = ">>graph6<<";
    if (s.rfind(header, 0) == 0) {
        s = s.substr(header.size());
        base = header.size();
    }
    if (s.empty()) throw parse_error("empty graph6 string", base);

    std::size_t i = 0;
    long long n = 0;
    check_printable(s, i);
    int c0 = static_cast<unsigned char>(s[i]) - kG6Min;
    if (static_cast<unsigned char>(s[i]) == 126) {
        ++i;
        check_printable(s, i);
        if (static_cast<unsigned char>(s[i]) == 126)
            throw parse_error("graph6 n >= 258048 unsupported", base + i);
        for (int k = 0; k < 3; ++k) {
            check_printable(s, i + k);
            n = (n << 6) | (static_cast<unsigned char>(s[i + k]) - kG6Min);
        }
        i += 3;
        if (n < 63) throw parse_error("malformed graph6 length byte", base);
    } else {
        n = c0;
        ++i;
    }
    if (n > 4096) throw parse_error("graph6 n too large for this tool", base);

    long long bits = n * (n - 1) / 2;
    long long need = (bits + 5) / 6;
    if (static_cast<long long>(s.size()) - static_cast<long long>(i) < need)
        throw parse_error("graph6 payload too short", base + s.size());
    if (static_cast<long long>(s.size()) - static_cast<long long>(i) > need)
        throw parse_error("graph6 payload too long", base + i + need);

    // Bits run over the upper triangle in column order: (0,1), (0,2), (1,2), ...
    GraphBuilder b(static_cast<int>(n));
    long long bit = 0;
    int u = 0, v = 1;
    for (long long k = 0; k < need; ++k) {
        check_printable(s, i + k);
        int val = static_cast<unsigned char>(s[i + k]) - kG6Min;
        for (int t = 5; t >= 0 && bit < bits; --t, ++bit) {
            if ((val >> t) & 1) b.add_edge(u, v);
            if (++u == v) {
                u = 0;
                ++v;
            }
        }
    }
    return b.build();
}

std::string emit_graph6(const Graph& g) {
    std::string out;
    int n = g.n();
    if (n <= 62) {
        out.push_back(static_cast<char>(n + kG6Min));
    } else {
        out.push_back(126);
        out.push_back(static_cast<char>(((n >> 12) & 63) + kG6Min));
        out.push_back(static_cast<char>(((n >> 6) & 63) + kG6Min));
        out.push_back(static_cast<char>((n & 63) + kG6Min));
    }
    long long bits = static_cast<long long>(n) * (n - 1) / 2;
    int acc = 0, filled = 0;
    for (int v = 1; v < n; ++v) {
        for (int u = 0; u < v; ++u) {
            acc = (acc << 1) | (g.has_edge(u, v) ? 1 : 0);
            if (++filled == 6) {
                out.push_back(static_cast<char>(acc + kG6Min));
                acc = 0;
                filled = 0;
            }
        }
    }
    if (bits % 6 != 0) {
        acc <<= (6 - bits % 6);
        out.push_back(static_cast<char>(acc + kG6Min));
    }
    return out;
}

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::pair<int, int>> es;
    int u, v, maxv = -1;
    while (in >> u >> v) {
        if (u < 0 || v < 0) throw std::invalid_argument("negative vertex id in edge list");
        es.emplace_back(u, v);
        maxv = std::max({maxv, u, v});
    }
    if (!in.eof()) throw std::invalid_argument("malformed edge list");
    GraphBuilder b(maxv + 1);
    for (auto [a, c] : es) b.add_edge(a, c);
    return b.build();
}

std::string emit_edge_list(const Graph& g) {
    std::ostringstream out;
    for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
    return out.str();
}

int degree(const Graph& g, int v) {
    if (v < 0 || v >= g.n()) throw std::out_of_range("vertex out of range");
    return g.degree(v);
}

int max_degree(const Graph& g) { return g.max_degree(); }

std::pair<Graph, std::vector<int>> core(const Graph& g) {
    if (g.m() == 0) throw std::domain_error("core undefined for edgeless graph");
    int d = g.max_degree();
    std::vector<int> verts;
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) == d) verts.push_back(v);
    return {induced_subgraph(g, verts), verts};
}

bool is_overfull(const Graph& g) {
    if (g.m() == 0) throw std::domain_error("overfull undefined for edgeless graph");
    return static_cast<long long>(g.m()) >
           static_cast<long long>(g.max_degree()) * (g.n() / 2);
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
    std::vector<std::vector<int>> parts;
    std::vector<char> seen(g.n(), 0);
    for (int s = 0; s < g.n(); ++s) {
        if (seen[s]) continue;
        std::vector<int> stack{s}, part;
        seen[s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            part.push_back(v);
            for (auto [w, idx] : g.inc(v)) {
                (void)idx;
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        std::sort(part.begin(), part.end());
        parts.push_back(std::move(part));
    }
    return parts;
}

bool is_connected(const Graph& g) {
    if (g.n() == 0) return true;
    return connected_components(g).size() == 1;
}

bool is_k5_minus_e(const Graph& g) {
    if (g.n() != 5 || g.m() != 9) return false;
    std::vector<int> threes;
    for (int v = 0; v < 5; ++v) {
        int d = g.degree(v);
        if (d == 3)
            threes.push_back(v);
        else if (d != 4)
            return false;
    }
    return threes.size() == 2 && !g.has_edge(threes[0], threes[1]);
}

Graph remove_edge(const Graph& g, int edge_idx) {
    GraphBuilder b(g.n());
    for (int i = 0; i < g.m(); ++i)
        if (i != edge_idx) b.add_edge(g.edge(i).u, g.edge(i).v);
    return b.build();
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& verts) {
    std::vector<int> rev(g.n(), -1);
    for (int i = 0; i < static_cast<int>(verts.size()); ++i) rev[verts[i]] = i;
    GraphBuilder b(static_cast<int>(verts.size()));
    for (const auto& e : g.edges())
        if (rev[e.u] >= 0 && rev[e.v] >= 0) b.add_edge(rev[e.u], rev[e.v]);
    return b.build();
}

}  // namespace hz4
