#include "hz4/classify.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <set>

namespace hz4 {

namespace {

long long micros_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() -
                                                                 t0)
        .count();
}

bool core_max_degree_le2(const Graph& g) {
    if (g.m() == 0) return false;
    auto [c, map] = core(g);
    (void)map;
    return c.max_degree() <= 2;
}

// Translate a coloring of remove_edge(g, skip) back onto g.
EdgeColoring lift_coloring(const Graph& g, int skip, const EdgeColoring& sub) {
    EdgeColoring out(g, sub.k());
    for (int e = 0; e < g.m(); ++e) {
        if (e == skip) continue;
        int sube = e < skip ? e : e - 1;
        if (sub.color(sube) != -1) out.set(e, sub.color(sube));
    }
    return out;
}

}  // namespace

std::string certificate_name(Certificate c) {
    switch (c) {
        case Certificate::Overfull: return "overfull";
        case Certificate::K5MinusE: return "k5-minus-e";
        case Certificate::OracleProof: return "oracle-proof";
    }
    return "?";
}

EdgeColoring color_minus_e(const Graph& g, const Edge& e, const RunConfig& cfg) {
    int eidx = g.edge_index(e.u, e.v);
    if (eidx < 0) throw std::invalid_argument("color_minus_e: edge not in graph");

    // Greedy passes over seed-shuffled edge orders.
    std::vector<int> order;
    for (int i = 0; i < g.m(); ++i)
        if (i != eidx) order.push_back(i);
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::mt19937_64 rng(cfg.seed * 0x9e3779b97f4a7c15ull + attempt);
        std::vector<int> shuffled = order;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        EdgeColoring col(g, 4);
        bool ok = true;
        for (int idx : shuffled) {
            ColorMask avail = col.missing(g.edge(idx).u) & col.missing(g.edge(idx).v);
            if (!avail) {
                ok = false;
                break;
            }
            col.set(idx, __builtin_ctz(avail));
        }
        if (ok) return col;
    }
    // Exact fallback.
    Graph sub = remove_edge(g, eidx);
    SearchResult res = find_edge_coloring(sub, 4, cfg.budget);
    if (res.outcome == SearchOutcome::Exhausted)
        throw std::runtime_error("color_minus_e: oracle budget exhausted");
    if (res.outcome == SearchOutcome::NotFound)
        throw std::domain_error("color_minus_e: G-e is not 4-edge-colorable");
    return lift_coloring(g, eidx, res.coloring);
}

ClassificationResult classify(const Graph& g, const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    if (!is_connected(g)) throw std::invalid_argument("classify: input must be connected");
    if (g.max_degree() != 4) throw std::invalid_argument("classify: input must have Delta=4");
    if (!core_max_degree_le2(g))
        throw std::invalid_argument("classify: core max degree exceeds 2");

    ClassificationResult out;
    if (is_k5_minus_e(g)) {
        out.verdict = Verdict::Class2;
        out.certificate = Certificate::K5MinusE;
        out.total_micros = micros_since(t0);
        return out;
    }
    if (!in_H_k(g, 4)) {
        SearchResult res = find_edge_coloring(g, 4, cfg.budget);
        if (res.outcome == SearchOutcome::Exhausted)
            throw std::runtime_error("classify: oracle budget exhausted");
        if (res.outcome == SearchOutcome::NotFound)
            throw std::logic_error("classify: graph outside H_4 is not 4-colorable; bug");
        out.coloring = res.coloring;
    } else {
        ConfigMatch m = find_configuration(g);
        out.match = m;
        Edge e = m.designated_edge();
        auto t1 = std::chrono::steady_clock::now();
        EdgeColoring partial = color_minus_e(g, e, cfg);
        out.color_minus_e_micros = micros_since(t1);
        auto t2 = std::chrono::steady_clock::now();
        ExtensionTrace trace = extend_configuration(g, m, partial);
        out.extend_micros = micros_since(t2);
        out.coloring = trace.final;
        if (cfg.want_trace) out.trace = std::move(trace);
    }
    if (!out.coloring.is_total() || !out.coloring.is_proper() || out.coloring.colors_used() > 4)
        throw std::logic_error("classify: produced coloring failed re-verification");
    out.verdict = Verdict::Class1;
    out.total_micros = micros_since(t0);
    return out;
}

namespace {

// Count of compositions of n into parts >= 3.
std::vector<long long> composition_counts(int n) {
    std::vector<long long> c(n + 1, 0);
    c[0] = 1;
    for (int mstep = 1; mstep <= n; ++mstep)
        for (int p = 3; p <= mstep; ++p) c[mstep] += c[mstep - p];
    return c;
}

}  // namespace

Graph random_h4(int n, uint64_t seed) {
    if (n < 5) throw std::invalid_argument("random_h4 needs n >= 5");
    std::mt19937_64 rng(seed);

    std::vector<int> feasible_n4;
    for (int n4 = 3; n4 < n; ++n4) {
        int n3 = n - n4;
        if (n3 < 1 || n3 % 2 != 0) continue;
        if (2 * n4 < n3) continue;       // every 3-vertex needs a 4-neighbor
        if (3 * n3 < 2 * n4) continue;   // enough 3-side stubs
        feasible_n4.push_back(n4);
    }
    if (feasible_n4.empty()) throw std::invalid_argument("random_h4: no feasible split");

    for (int attempt = 0; attempt < 4000; ++attempt) {
        int n4 = feasible_n4[rng() % feasible_n4.size()];
        int n3 = n - n4;

        std::vector<int> ids(n);
        std::iota(ids.begin(), ids.end(), 0);
        std::shuffle(ids.begin(), ids.end(), rng);
        std::vector<int> fours(ids.begin(), ids.begin() + n4);
        std::vector<int> threes(ids.begin() + n4, ids.end());

        // Core cycles: a uniform composition of n4 into parts >= 3.
        std::vector<long long> cc = composition_counts(n4);
        std::vector<int> parts;
        int rem = n4;
        bool comp_ok = true;
        while (rem > 0) {
            long long total = cc[rem];
            if (total <= 0) {
                comp_ok = false;
                break;
            }
            long long pick = static_cast<long long>(rng() % static_cast<uint64_t>(total));
            int chosen = -1;
            for (int p = 3; p <= rem; ++p) {
                long long ways = cc[rem - p];
                if (pick < ways) {
                    chosen = p;
                    break;
                }
                pick -= ways;
            }
            if (chosen < 0) {
                comp_ok = false;
                break;
            }
            parts.push_back(chosen);
            rem -= chosen;
        }
        if (!comp_ok) continue;

        GraphBuilder b(n);
        std::shuffle(fours.begin(), fours.end(), rng);
        int at = 0;
        for (int len : parts) {
            for (int i = 0; i < len; ++i)
                b.add_edge(fours[at + i], fours[at + (i + 1) % len]);
            at += len;
        }

        // 3-4 stub allocation: every 3-vertex gets at least one 4-neighbor.
        std::vector<int> cap(n3, 1);
        int extra = 2 * n4 - n3;
        bool alloc_ok = true;
        for (int i = 0; i < extra; ++i) {
            int guard = 0;
            while (true) {
                int t = static_cast<int>(rng() % n3);
                if (cap[t] < 3) {
                    ++cap[t];
                    break;
                }
                if (++guard > 64 * n) {
                    alloc_ok = false;
                    break;
                }
            }
            if (!alloc_ok) break;
        }
        if (!alloc_ok) continue;

        std::vector<int> four_stubs, three_slots;
        for (int f : fours) {
            four_stubs.push_back(f);
            four_stubs.push_back(f);
        }
        for (int i = 0; i < n3; ++i)
            for (int c = 0; c < cap[i]; ++c) three_slots.push_back(threes[i]);

        bool matched = false;
        for (int tries = 0; tries < 32 && !matched; ++tries) {
            std::shuffle(three_slots.begin(), three_slots.end(), rng);
            bool clash = false;
            std::vector<std::pair<int, int>> picked;
            std::set<std::pair<int, int>> used;
            for (std::size_t i = 0; i < four_stubs.size(); ++i) {
                int a = four_stubs[i], c = three_slots[i];
                auto key = std::minmax(a, c);
                if (!used.insert({key.first, key.second}).second) {
                    clash = true;
                    break;
                }
                picked.emplace_back(a, c);
            }
            if (clash) continue;
            for (auto [a, c] : picked) b.add_edge(a, c);
            matched = true;
        }
        if (!matched) continue;

        // Remaining 3-3 stubs.
        std::vector<int> rest;
        for (int i = 0; i < n3; ++i)
            for (int c = cap[i]; c < 3; ++c) rest.push_back(threes[i]);
        bool paired = rest.empty();
        for (int tries = 0; tries < 32 && !paired; ++tries) {
            std::shuffle(rest.begin(), rest.end(), rng);
            bool clash = false;
            std::vector<std::pair<int, int>> picked;
            std::set<std::pair<int, int>> used;
            for (std::size_t i = 0; i + 1 < rest.size(); i += 2) {
                int a = rest[i], c = rest[i + 1];
                if (a == c) {
                    clash = true;
                    break;
                }
                auto key = std::minmax(a, c);
                if (b.has_edge(a, c) || !used.insert({key.first, key.second}).second) {
                    clash = true;
                    break;
                }
                picked.emplace_back(a, c);
            }
            if (clash) continue;
            for (auto [a, c] : picked) b.add_edge(a, c);
            paired = true;
        }
        if (!paired) continue;

        Graph g = b.build();
        if (g.m() != (4 * n4 + 3 * n3) / 2) continue;  // a clash slipped through
        if (!in_H_k(g, 4) || !is_connected(g)) continue;
        return g;
    }
    throw std::runtime_error("random_h4: retry bound exhausted for seed " + std::to_string(seed));
}

}  // namespace hz4
