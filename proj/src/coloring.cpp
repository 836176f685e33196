#include "hz4/coloring.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hz4 {

bool KempeChain::contains_vertex(int v) const {
    return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

bool KempeChain::contains_edge(int e) const {
    return std::find(edge_ids.begin(), edge_ids.end(), e) != edge_ids.end();
}

int KempeChain::other_end(int from) const {
    if (shape != ChainShape::Path) throw std::logic_error("other_end on a cycle chain");
    if (vertices.front() == from) return vertices.back();
    if (vertices.back() == from) return vertices.front();
    throw std::logic_error("vertex is not a chain endpoint");
}

EdgeColoring::EdgeColoring(const Graph& g, int k) : g_(&g), k_(k) {
    if (k < 1 || k > 30) throw std::invalid_argument("bad color count");
    all_ = (ColorMask(1) << k) - 1;
    color_.assign(g.m(), -1);
    seen_.assign(std::max(g.n(), 1), 0);
}

int EdgeColoring::color_of(int u, int v) const {
    int idx = g_->edge_index(u, v);
    if (idx < 0) throw std::invalid_argument("no such edge");
    return color_[idx];
}

void EdgeColoring::set(int edge_id, int c) {
    if (c < 0 || c >= k_) throw std::invalid_argument("color out of range");
    if (color_[edge_id] == c) return;
    if (color_[edge_id] != -1)
        throw std::logic_error("edge already colored; unset first");
    const Edge& e = g_->edge(edge_id);
    if (sees(e.u, c) || sees(e.v, c))
        throw std::logic_error("color clashes at an endpoint");
    color_[edge_id] = static_cast<int8_t>(c);
    seen_[e.u] |= ColorMask(1) << c;
    seen_[e.v] |= ColorMask(1) << c;
}

void EdgeColoring::unset(int edge_id) {
    int c = color_[edge_id];
    if (c == -1) return;
    const Edge& e = g_->edge(edge_id);
    color_[edge_id] = -1;
    seen_[e.u] &= ~(ColorMask(1) << c);
    seen_[e.v] &= ~(ColorMask(1) << c);
}

int EdgeColoring::edge_with_color(int v, int c) const {
    if (!sees(v, c)) return -1;
    for (auto [w, idx] : g_->inc(v)) {
        (void)w;
        if (color_[idx] == c) return idx;
    }
    return -1;
}

bool EdgeColoring::is_proper() const {
    for (int v = 0; v < g_->n(); ++v) {
        ColorMask seen = 0;
        for (auto [w, idx] : g_->inc(v)) {
            (void)w;
            int c = color_[idx];
            if (c == -1) continue;
            if ((seen >> c) & 1u) return false;
            seen |= ColorMask(1) << c;
        }
        if (seen != seen_[v]) return false;
    }
    return true;
}

bool EdgeColoring::is_total() const {
    return std::find(color_.begin(), color_.end(), -1) == color_.end();
}

int EdgeColoring::colors_used() const {
    ColorMask used = 0;
    for (int8_t c : color_)
        if (c != -1) used |= ColorMask(1) << c;
    return __builtin_popcount(used);
}

uint64_t EdgeColoring::hash() const {
    uint64_t h = 1469598103934665603ull;
    for (int8_t c : color_) {
        h ^= static_cast<uint64_t>(c + 2);
        h *= 1099511628211ull;
    }
    return h;
}

std::vector<int> missing_colors(const EdgeColoring& c, int v) {
    std::vector<int> out;
    ColorMask m = c.missing(v);
    for (int i = 0; i < c.k(); ++i)
        if ((m >> i) & 1u) out.push_back(i);
    return out;
}

namespace {

// Next chain edge at vertex v with color in {i,j}, excluding `avoid_edge`.
int next_chain_edge(const EdgeColoring& c, int v, int i, int j, int avoid_edge,
                    const std::vector<char>* excluded) {
    for (auto [w, idx] : c.graph().inc(v)) {
        (void)w;
        if (idx == avoid_edge) continue;
        if (excluded && (*excluded)[idx]) continue;
        int col = c.color(idx);
        if (col == i || col == j) return idx;
    }
    return -1;
}

}  // namespace

KempeChain kempe_chain(const EdgeColoring& c, int v, int i, int j,
                       const std::vector<char>* excluded) {
    if (i == j || i < 0 || j < 0 || i >= c.k() || j >= c.k())
        throw std::invalid_argument("bad color pair");
    KempeChain chain;
    chain.ci = std::min(i, j);
    chain.cj = std::max(i, j);

    int first = next_chain_edge(c, v, i, j, -1, excluded);
    if (first < 0) {
        chain.vertices = {v};
        return chain;
    }

    auto walk = [&](int start_edge, std::vector<int>& verts, std::vector<int>& eids) -> bool {
        // Walks away from v; returns true if it closed a cycle back at v.
        int prev = v, e = start_edge;
        while (true) {
            eids.push_back(e);
            const Edge& ed = c.graph().edge(e);
            int nxt = ed.u == prev ? ed.v : ed.u;
            verts.push_back(nxt);
            if (nxt == v) return true;
            int e2 = next_chain_edge(c, nxt, i, j, e, excluded);
            if (e2 < 0) return false;
            prev = nxt;
            e = e2;
        }
    };

    std::vector<int> fv, fe;
    bool cycle = walk(first, fv, fe);
    if (cycle) {
        chain.shape = ChainShape::EvenCycle;
        chain.vertices.push_back(v);
        chain.vertices.insert(chain.vertices.end(), fv.begin(), fv.end());
        chain.edge_ids = fe;
        if (chain.edge_ids.size() % 2 != 0)
            throw std::logic_error("odd cycle in kempe subgraph; coloring improper");
        return chain;
    }
    int second = next_chain_edge(c, v, i, j, first, excluded);
    if (second < 0) {
        chain.vertices.push_back(v);
        chain.vertices.insert(chain.vertices.end(), fv.begin(), fv.end());
        chain.edge_ids = fe;
        return chain;
    }
    std::vector<int> bv, be;
    walk(second, bv, be);
    std::reverse(bv.begin(), bv.end());
    std::reverse(be.begin(), be.end());
    chain.vertices = bv;  // far end ... back to neighbor of v
    chain.vertices.push_back(v);
    chain.vertices.insert(chain.vertices.end(), fv.begin(), fv.end());
    chain.edge_ids = be;
    chain.edge_ids.insert(chain.edge_ids.end(), fe.begin(), fe.end());
    return chain;
}

std::optional<std::pair<ChainEnd, ChainEnd>> chain_ends(const KempeChain& chain,
                                                        const std::vector<int>& tracked) {
    if (chain.shape == ChainShape::EvenCycle) return std::nullopt;
    auto mk = [&](int v) {
        ChainEnd e;
        e.vertex = v;
        e.at_infinity = std::find(tracked.begin(), tracked.end(), v) == tracked.end();
        return e;
    };
    return std::make_pair(mk(chain.vertices.front()), mk(chain.vertices.back()));
}

bool linked(const EdgeColoring& c, int v, int w, int i, int j) {
    if (v == w) throw std::invalid_argument("linked() needs distinct vertices");
    return kempe_chain(c, v, i, j).contains_vertex(w);
}

void swap_chain(EdgeColoring& c, const KempeChain& chain) {
    // Stale-chain detection: edges must still alternate the chain's colors.
    int expect = -1;
    for (std::size_t t = 0; t < chain.edge_ids.size(); ++t) {
        int col = c.color(chain.edge_ids[t]);
        if (col != chain.ci && col != chain.cj)
            throw std::logic_error("stale kempe chain: color drifted");
        if (t > 0 && col != expect)
            throw std::logic_error("stale kempe chain: alternation broken");
        expect = (col == chain.ci) ? chain.cj : chain.ci;
    }
    for (int e : chain.edge_ids) {
        int col = c.color(e);
        c.unset(e);
        c.set(e, col == chain.ci ? chain.cj : chain.ci);
    }
    // Properness at touched vertices; a violation means the caller swapped a
    // restricted chain against a clashing H-edge.
    for (int v : chain.vertices) {
        ColorMask seen = 0;
        for (auto [w, idx] : c.graph().inc(v)) {
            (void)w;
            int col = c.color(idx);
            if (col == -1) continue;
            if ((seen >> col) & 1u) throw std::logic_error("kempe swap broke properness");
            seen |= ColorMask(1) << col;
        }
    }
}

EdgeColoring swapped(const EdgeColoring& c, const KempeChain& chain) {
    EdgeColoring out = c;
    swap_chain(out, chain);
    return out;
}

bool is_proper(const EdgeColoring& c) { return c.is_proper(); }
bool is_total(const EdgeColoring& c) { return c.is_total(); }

EdgeColoring apply_color_permutation(const EdgeColoring& c, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != c.k())
        throw std::invalid_argument("permutation size mismatch");
    std::vector<char> hit(c.k(), 0);
    for (int p : perm) {
        if (p < 0 || p >= c.k() || hit[p]) throw std::invalid_argument("not a bijection");
        hit[p] = 1;
    }
    EdgeColoring out(c.graph(), c.k());
    for (int e = 0; e < c.graph().m(); ++e)
        if (c.color(e) != -1) out.set(e, perm[c.color(e)]);
    return out;
}

std::string coloring_json(const EdgeColoring& c) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (int e = 0; e < c.graph().m(); ++e) {
        if (c.color(e) == -1) continue;
        if (!first) out << ',';
        first = false;
        const Edge& ed = c.graph().edge(e);
        out << '"' << ed.u << '-' << ed.v << "\":" << c.color(e);
    }
    out << '}';
    return out.str();
}

}  // namespace hz4
