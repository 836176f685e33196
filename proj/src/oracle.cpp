#include "hz4/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "hz4/structure.hpp"

namespace hz4 {

namespace {

struct Searcher {
    const Graph& g;
    int k;
    const OracleBudget& budget;
    std::vector<int> order;     // edge ids in search order
    EdgeColoring col;
    long long nodes = 0;
    bool out_of_budget = false;
    int fixed_prefix_colors = 0;  // colors pinned at the symmetry vertex
    std::chrono::steady_clock::time_point t0;

    Searcher(const Graph& gg, int kk, const OracleBudget& b)
        : g(gg), k(kk), budget(b), col(gg, kk) {
        t0 = std::chrono::steady_clock::now();
    }

    bool budget_ok() {
        if (out_of_budget) return false;
        if (nodes > budget.node_limit) {
            out_of_budget = true;
            return false;
        }
        if ((nodes & 1023) == 0) {
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (secs > budget.time_limit) {
                out_of_budget = true;
                return false;
            }
        }
        return true;
    }

    bool dfs(std::size_t pos, int max_used) {
        ++nodes;
        if (!budget_ok()) return false;
        if (pos == order.size()) return true;
        int e = order[pos];
        const Edge& ed = g.edge(e);
        ColorMask avail = col.missing(ed.u) & col.missing(ed.v);
        int cap = std::min(k - 1, max_used + 1);
        for (int c = 0; c <= cap; ++c) {
            if (!((avail >> c) & 1u)) continue;
            col.set(e, c);
            // look-ahead: uncolored edges at the two endpoints must keep options
            bool feasible = true;
            for (int end : {ed.u, ed.v}) {
                for (auto [w, idx] : g.inc(end)) {
                    (void)w;
                    if (col.color(idx) != -1) continue;
                    const Edge& f = g.edge(idx);
                    if (!(col.missing(f.u) & col.missing(f.v))) {
                        feasible = false;
                        break;
                    }
                }
                if (!feasible) break;
            }
            if (feasible && dfs(pos + 1, std::max(max_used, c))) return true;
            col.unset(e);
            if (out_of_budget) return false;
        }
        return false;
    }
};

}  // namespace

SearchResult find_edge_coloring(const Graph& g, int k, const OracleBudget& budget) {
    int delta = g.max_degree();
    if (k < delta - 1) throw std::invalid_argument("k below Delta-1");
    SearchResult res;
    if (g.m() == 0) {
        res.outcome = SearchOutcome::Found;
        res.coloring = EdgeColoring(g, std::max(k, 1));
        return res;
    }
    if (k < delta) {
        res.outcome = SearchOutcome::NotFound;
        return res;
    }

    Searcher s(g, k, budget);
    s.order.resize(g.m());
    std::iota(s.order.begin(), s.order.end(), 0);
    auto degsum = [&](int e) { return g.degree(g.edge(e).u) + g.degree(g.edge(e).v); };
    std::stable_sort(s.order.begin(), s.order.end(), [&](int a, int b) {
        int da = degsum(a), db = degsum(b);
        if (da != db) return da > db;
        return g.edge(a) < g.edge(b);
    });

    // Symmetry breaking: pin the colors at the smallest max-degree vertex.
    int vstar = 0;
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) == delta) {
            vstar = v;
            break;
        }
    std::vector<int> pinned;
    for (auto [w, idx] : g.inc(vstar)) {
        (void)w;
        pinned.push_back(idx);
    }
    std::sort(pinned.begin(), pinned.end());
    int next = 0;
    for (int idx : pinned) s.col.set(idx, next++);
    s.fixed_prefix_colors = next;

    std::vector<int> rest;
    for (int e : s.order)
        if (std::find(pinned.begin(), pinned.end(), e) == pinned.end()) rest.push_back(e);
    s.order = rest;

    bool found = s.dfs(0, s.fixed_prefix_colors - 1);
    res.nodes = s.nodes;
    if (found) {
        res.outcome = SearchOutcome::Found;
        res.coloring = s.col;
    } else if (s.out_of_budget) {
        res.outcome = SearchOutcome::Exhausted;
    } else {
        res.outcome = SearchOutcome::NotFound;
    }
    return res;
}

ChromaticIndexResult chromatic_index(const Graph& g, const OracleBudget& budget) {
    if (g.m() == 0) throw std::domain_error("chromatic index needs at least one edge");
    int delta = g.max_degree();
    ChromaticIndexResult out;
    SearchResult at_delta = find_edge_coloring(g, delta, budget);
    if (at_delta.outcome == SearchOutcome::Exhausted) {
        out.exhausted = true;
        return out;
    }
    if (at_delta.outcome == SearchOutcome::Found) {
        out.value = delta;
        out.witness = at_delta.coloring;
        return out;
    }
    out.value = delta + 1;
    out.witness = vizing_color(g);
    if (!out.witness.is_total() || !out.witness.is_proper() ||
        out.witness.colors_used() != delta + 1)
        throw std::logic_error("vizing witness inconsistent with class-2 verdict");
    return out;
}

EdgeColoring vizing_color(const Graph& g) {
    int delta = std::max(g.max_degree(), 1);
    int k = delta + 1;
    EdgeColoring col(g, k);

    auto lowest_free = [&](int v) { return __builtin_ctz(col.missing(v)); };

    for (int eid = 0; eid < g.m(); ++eid) {
        int u = g.edge(eid).u;
        int v0 = g.edge(eid).v;

        // Maximal fan at u starting with the uncolored spoke; extend with the
        // lowest eligible neighbor each round.
        std::vector<int> fan{v0};
        std::vector<char> in_fan(g.n(), 0);
        in_fan[v0] = 1;
        bool grew = true;
        while (grew) {
            grew = false;
            for (auto [w, idx] : g.inc(u)) {
                if (in_fan[w] || col.color(idx) == -1) continue;
                if (!col.sees(fan.back(), col.color(idx))) {
                    fan.push_back(w);
                    in_fan[w] = 1;
                    grew = true;
                    break;
                }
            }
        }

        int c = lowest_free(u);
        int d = lowest_free(fan.back());
        if (c != d && col.sees(u, d)) swap_chain(col, kempe_chain(col, u, c, d));

        // First fan vertex with d free; rotate the prefix onto it.
        std::size_t w = 0;
        while (w < fan.size() && col.sees(fan[w], d)) ++w;
        if (w == fan.size()) throw std::logic_error("vizing fan invariant violated");

        std::vector<int> shifted;
        for (std::size_t i = 0; i <= w; ++i) shifted.push_back(g.edge_index(u, fan[i]));
        for (std::size_t i = 0; i + 1 <= w; ++i) {
            int cc = col.color(shifted[i + 1]);
            col.unset(shifted[i + 1]);
            if (col.color(shifted[i]) != -1) col.unset(shifted[i]);
            col.set(shifted[i], cc);
        }
        if (col.color(shifted[w]) != -1) col.unset(shifted[w]);
        col.set(shifted[w], d);
    }
    if (!col.is_total() || !col.is_proper())
        throw std::logic_error("vizing coloring failed");
    return col;
}

bool is_class1(const Graph& g, const OracleBudget& budget) {
    ChromaticIndexResult r = chromatic_index(g, budget);
    if (r.exhausted) throw std::runtime_error("oracle budget exhausted");
    return r.value == g.max_degree();
}

bool is_critical(const Graph& g, const OracleBudget& budget) {
    if (g.m() == 0) return false;
    int delta = g.max_degree();
    ChromaticIndexResult r = chromatic_index(g, budget);
    if (r.exhausted) throw std::runtime_error("oracle budget exhausted");
    if (r.value != delta + 1) return false;
    for (int e = 0; e < g.m(); ++e) {
        Graph h = remove_edge(g, e);
        if (h.m() == 0) continue;  // single-edge graph: deletion leaves chi'=0
        SearchResult sub = find_edge_coloring(h, delta, budget);
        if (sub.outcome == SearchOutcome::Exhausted)
            throw std::runtime_error("oracle budget exhausted");
        if (sub.outcome != SearchOutcome::Found) return false;
    }
    return true;
}

Graph critical_subgraph(const Graph& g, const OracleBudget& budget) {
    int delta = g.max_degree();
    {
        ChromaticIndexResult r = chromatic_index(g, budget);
        if (r.exhausted) throw std::runtime_error("oracle budget exhausted");
        if (r.value != delta + 1) throw std::domain_error("critical_subgraph needs class-2 input");
    }
    Graph h = g;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int e = 0; e < h.m(); ++e) {
            Graph cand = remove_edge(h, e);
            if (cand.max_degree() != delta) continue;
            SearchResult sub = find_edge_coloring(cand, delta, budget);
            if (sub.outcome == SearchOutcome::Exhausted)
                throw std::runtime_error("oracle budget exhausted");
            if (sub.outcome == SearchOutcome::NotFound) {
                h = cand;
                changed = true;
                break;
            }
        }
    }
    // Verify: same Delta, class 2, and every deletion drops to class 1.
    if (h.max_degree() != delta) throw std::logic_error("critical subgraph lost Delta");
    if (!is_critical(h, budget)) throw std::logic_error("greedy result not critical");
    return h;
}

bool check_val(const Graph& g) {
    int delta = g.max_degree();
    auto delta_neighbors = [&](int w) {
        int cnt = 0;
        for (auto [x, idx] : g.inc(w)) {
            (void)idx;
            if (g.degree(x) == delta) ++cnt;
        }
        return cnt;
    };
    for (const Edge& e : g.edges()) {
        int need_v = std::max(delta + 1 - g.degree(e.u), 2);
        if (delta_neighbors(e.v) < need_v) return false;
        int need_w = std::max(delta + 1 - g.degree(e.v), 2);
        if (delta_neighbors(e.u) < need_w) return false;
    }
    return true;
}

bool check_hz_lemma(const Graph& g, int k, const OracleBudget& budget) {
    if (!in_G_k(g, k)) throw std::domain_error("check_hz_lemma: graph not in G_k");
    ChromaticIndexResult r = chromatic_index(g, budget);
    if (r.exhausted) throw std::runtime_error("oracle budget exhausted");
    if (r.value <= k) throw std::domain_error("check_hz_lemma: chi' does not exceed k");
    return in_H_k(g, k) && is_critical(g, budget);
}

}  // namespace hz4
