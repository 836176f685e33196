#include "hz4/enumerate.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace hz4 {

namespace {

// --- component canonical code ---------------------------------------------
// Ordered-partition refinement plus individualization; leaves give vertex
// orders, the maximal adjacency code over all leaves is canonical.

struct CompCanon {
    int n;
    const std::vector<uint32_t>& adj;  // local masks
    uint64_t best = 0;
    bool have = false;

    CompCanon(int n_, const std::vector<uint32_t>& a) : n(n_), adj(a) {}

    static void refine(const std::vector<uint32_t>& adj, std::vector<std::vector<int>>& cells) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t t = 0; t < cells.size() && !changed; ++t) {
                uint32_t tm = 0;
                for (int v : cells[t]) tm |= uint32_t(1) << v;
                for (std::size_t c = 0; c < cells.size(); ++c) {
                    if (cells[c].size() <= 1) continue;
                    std::vector<std::pair<int, int>> keyed;
                    for (int v : cells[c])
                        keyed.emplace_back(__builtin_popcount(adj[v] & tm), v);
                    std::stable_sort(keyed.begin(), keyed.end(),
                                     [](auto& a, auto& b) { return a.first < b.first; });
                    if (keyed.front().first == keyed.back().first) continue;
                    // split
                    std::vector<std::vector<int>> pieces;
                    for (auto& [k, v] : keyed) {
                        if (pieces.empty() || __builtin_popcount(adj[pieces.back().front()] & tm) != k)
                            pieces.push_back({});
                        pieces.back().push_back(v);
                    }
                    cells.erase(cells.begin() + c);
                    cells.insert(cells.begin() + c, pieces.begin(), pieces.end());
                    changed = true;
                    break;
                }
            }
        }
    }

    uint64_t code_for(const std::vector<int>& order) const {
        std::array<int, 32> pos{};
        for (int i = 0; i < n; ++i) pos[order[i]] = i;
        uint64_t bits = 0;
        int b = 0;
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i, ++b)
                if ((adj[order[i]] >> order[j]) & 1u) bits |= uint64_t(1) << b;
        return bits;
    }

    void search(std::vector<std::vector<int>> cells) {
        refine(adj, cells);
        int target = -1;
        for (std::size_t c = 0; c < cells.size(); ++c)
            if (cells[c].size() > 1) {
                target = static_cast<int>(c);
                break;
            }
        if (target < 0) {
            std::vector<int> order;
            for (auto& c : cells) order.push_back(c.front());
            uint64_t code = code_for(order);
            if (!have || code > best) {
                best = code;
                have = true;
            }
            return;
        }
        for (int v : cells[target]) {
            std::vector<std::vector<int>> next(cells.begin(), cells.begin() + target);
            next.push_back({v});
            std::vector<int> rest;
            for (int w : cells[target])
                if (w != v) rest.push_back(w);
            next.push_back(rest);
            next.insert(next.end(), cells.begin() + target + 1, cells.end());
            search(std::move(next));
        }
    }

    uint64_t run() {
        std::vector<std::vector<int>> cells;
        // initial split by degree
        std::vector<std::pair<int, int>> keyed;
        for (int v = 0; v < n; ++v) keyed.emplace_back(__builtin_popcount(adj[v]), v);
        std::sort(keyed.begin(), keyed.end());
        for (auto& [d, v] : keyed) {
            if (cells.empty() || __builtin_popcount(adj[cells.back().front()]) != d)
                cells.push_back({});
            cells.back().push_back(v);
        }
        search(std::move(cells));
        return best;
    }
};

}  // namespace

std::pair<uint64_t, uint64_t> canonical_key(int n, const std::vector<uint32_t>& adj) {
    // components
    std::vector<char> seen(n, 0);
    std::vector<std::pair<int, uint64_t>> comps;  // (size, code); isolated -> (1, 0)
    int m_total = 0;
    for (int v = 0; v < n; ++v) m_total += __builtin_popcount(adj[v]);
    m_total /= 2;
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<int> verts{s};
        seen[s] = 1;
        for (std::size_t i = 0; i < verts.size(); ++i) {
            uint32_t ms = adj[verts[i]];
            while (ms) {
                int w = __builtin_ctz(ms);
                ms &= ms - 1;
                if (!seen[w]) {
                    seen[w] = 1;
                    verts.push_back(w);
                }
            }
        }
        std::sort(verts.begin(), verts.end());
        int c = static_cast<int>(verts.size());
        std::vector<int> local(n, -1);
        for (int i = 0; i < c; ++i) local[verts[i]] = i;
        std::vector<uint32_t> ladj(c, 0);
        for (int i = 0; i < c; ++i) {
            uint32_t ms = adj[verts[i]];
            while (ms) {
                int w = __builtin_ctz(ms);
                ms &= ms - 1;
                ladj[i] |= uint32_t(1) << local[w];
            }
        }
        CompCanon cc(c, ladj);
        comps.emplace_back(c, c == 1 ? 0 : cc.run());
    }
    std::sort(comps.begin(), comps.end(), [](auto& a, auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;
    });
    // Mix the ordered component codes into a 128-bit key.
    uint64_t h1 = 1469598103934665603ull ^ (static_cast<uint64_t>(n) << 32) ^ m_total;
    uint64_t h2 = 0x9e3779b97f4a7c15ull + n * 1315423911ull;
    for (auto& [c, code] : comps) {
        h1 ^= (static_cast<uint64_t>(c) << 56) ^ code;
        h1 *= 1099511628211ull;
        h2 = (h2 ^ code) * 0xff51afd7ed558ccdull + c;
    }
    return {h1, h2};
}

void for_each_graph(int max_n, const EnumOptions& opt,
                    const std::function<void(const Graph&)>& sink) {
    struct CG {
        uint8_t n;
        std::array<uint32_t, 12> adj;
    };
    auto as_graph = [](const CG& cg) {
        GraphBuilder b(cg.n);
        for (int v = 0; v < cg.n; ++v) {
            uint32_t ms = cg.adj[v];
            while (ms) {
                int w = __builtin_ctz(ms);
                ms &= ms - 1;
                if (w > v) b.add_edge(v, w);
            }
        }
        return b.build();
    };

    std::vector<CG> level;
    {
        CG one{};
        one.n = 1;
        level.push_back(one);
        sink(as_graph(one));
    }
    for (int k = 1; k < max_n; ++k) {
        std::vector<CG> next_level;
        std::set<std::pair<uint64_t, uint64_t>> keys;
        std::vector<uint32_t> scratch(k + 1);
        for (const CG& cg : level) {
            for (uint32_t mask = 0; mask < (uint32_t(1) << k); ++mask) {
                int newdeg = __builtin_popcount(mask);
                if (opt.max_degree && newdeg > opt.max_degree) continue;
                bool ok = true;
                if (opt.max_degree) {
                    uint32_t ms = mask;
                    while (ms) {
                        int v = __builtin_ctz(ms);
                        ms &= ms - 1;
                        if (__builtin_popcount(cg.adj[v]) + 1 > opt.max_degree) {
                            ok = false;
                            break;
                        }
                    }
                }
                if (!ok) continue;
                for (int v = 0; v < k; ++v)
                    scratch[v] = cg.adj[v] | (((mask >> v) & 1u) << k);
                scratch[k] = mask;
                if (opt.prune_core44) {
                    // reject when some 4-vertex already has three 4-neighbors
                    for (int v = 0; v <= k && ok; ++v) {
                        if (__builtin_popcount(scratch[v]) != 4) continue;
                        int heavy = 0;
                        uint32_t ms = scratch[v];
                        while (ms) {
                            int w = __builtin_ctz(ms);
                            ms &= ms - 1;
                            if (__builtin_popcount(scratch[w]) == 4) ++heavy;
                        }
                        if (heavy > 2) ok = false;
                    }
                    if (!ok) continue;
                }
                auto key = canonical_key(k + 1, scratch);
                if (!keys.insert(key).second) continue;
                CG nxt{};
                nxt.n = static_cast<uint8_t>(k + 1);
                for (int v = 0; v <= k; ++v) nxt.adj[v] = scratch[v];
                next_level.push_back(nxt);
                sink(as_graph(nxt));
            }
        }
        level = std::move(next_level);
    }
}

}  // namespace hz4
