#include "hz4/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "hz4/enumerate.hpp"

namespace hz4 {

namespace {

bool in_scope(const Graph& g) {
    if (g.m() == 0 || g.max_degree() != 4) return false;
    auto [c, map] = core(g);
    (void)map;
    return c.max_degree() <= 2 && is_connected(g);
}

std::string classify_line(const Graph& g, const std::string& g6, const SweepOptions& opt,
                          SweepStats& stats) {
    std::ostringstream out;
    out << "{\"graph6\":\"" << g6 << "\",\"n\":" << g.n() << ",\"m\":" << g.m();
    bool scoped = false;
    try {
        scoped = g.m() > 0 && g.max_degree() == 4 && core(g).first.max_degree() <= 2 &&
                 is_connected(g);
    } catch (const std::exception&) {
        scoped = false;
    }
    if (!scoped) {
        ++stats.skipped;
        out << ",\"verdict\":\"skipped\"}";
        return out.str();
    }
    auto t0 = std::chrono::steady_clock::now();
    try {
        ClassificationResult res = classify(g, opt.run);
        if (res.verdict == Verdict::Class1) {
            ++stats.class1;
            out << ",\"verdict\":\"class1\",\"coloring\":" << coloring_json(res.coloring);
            if (opt.run.want_trace && res.trace) out << ",\"trace\":" << res.trace->to_json();
        } else {
            ++stats.class2;
            out << ",\"verdict\":\"class2\",\"certificate\":\""
                << certificate_name(*res.certificate) << '"';
        }
        if (g.n() <= opt.oracle_cutoff) {
            ++stats.oracle_checked;
            ChromaticIndexResult ci = chromatic_index(g, opt.run.budget);
            bool agree = !ci.exhausted &&
                         ((res.verdict == Verdict::Class1 && ci.value == 4) ||
                          (res.verdict == Verdict::Class2 && ci.value == 5));
            if (!agree) {
                ++stats.oracle_mismatches;
                out << ",\"oracle_mismatch\":true";
            }
        }
    } catch (const std::exception& ex) {
        ++stats.failures;
        out << ",\"verdict\":\"skipped\",\"certificate\":\"error\"";
        std::cerr << "classify failure on " << g6 << ": " << ex.what() << "\n";
    }
    if (opt.timings) {
        long long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
        out << ",\"millis\":" << ms;
    }
    out << '}';
    return out.str();
}

}  // namespace

void sweep_stream(std::istream& in, std::ostream& out, const SweepOptions& opt,
                  SweepStats* stats_out) {
    SweepStats stats;
    std::string line;
    long long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        ++stats.lines;
        Graph g;
        try {
            g = parse_graph6(line);
        } catch (const std::exception& ex) {
            ++stats.parse_errors;
            out << "{\"line\":" << lineno << ",\"error\":\"" << ex.what() << "\"}\n";
            continue;
        }
        if (opt.per_component && !is_connected(g)) {
            for (const auto& part : connected_components(g)) {
                Graph sub = induced_subgraph(g, part);
                out << classify_line(sub, emit_graph6(sub), opt, stats) << '\n';
            }
            continue;
        }
        out << classify_line(g, emit_graph6(g), opt, stats) << '\n';
    }
    out << "{\"summary\":{\"lines\":" << stats.lines << ",\"parse_errors\":" << stats.parse_errors
        << ",\"skipped\":" << stats.skipped << ",\"class1\":" << stats.class1
        << ",\"class2\":" << stats.class2 << ",\"oracle_checked\":" << stats.oracle_checked
        << ",\"oracle_mismatches\":" << stats.oracle_mismatches
        << ",\"failures\":" << stats.failures << "}}\n";
    if (stats_out) *stats_out = stats;
}

Graph petersen() {
    GraphBuilder b(10);
    for (int i = 0; i < 5; ++i) {
        b.add_edge(i, (i + 1) % 5);          // outer cycle
        b.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
        b.add_edge(i, 5 + i);                // spokes
    }
    return b.build();
}

Graph petersen_minus_vertex() {
    Graph p = petersen();
    std::vector<int> keep;
    for (int v = 1; v < 10; ++v) keep.push_back(v);
    return induced_subgraph(p, keep);
}

// --------------------------------------------------------------------------
// verification suites
// --------------------------------------------------------------------------

namespace {

Graph random_graph(int n, double p, std::mt19937_64& rng) {
    GraphBuilder b(n);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng) < p) b.add_edge(u, v);
    return b.build();
}

EdgeColoring random_partial_coloring(const Graph& g, int k, std::mt19937_64& rng) {
    EdgeColoring col(g, k);
    std::vector<int> order(g.m());
    for (int i = 0; i < g.m(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (int idx : order) {
        if (rng() % 8 == 0) continue;  // leave some edges uncolored
        ColorMask avail = col.missing(g.edge(idx).u) & col.missing(g.edge(idx).v);
        if (!avail) continue;
        int pick = rng() % __builtin_popcount(avail);
        for (int c = 0; c < k; ++c)
            if ((avail >> c) & 1u) {
                if (pick-- == 0) {
                    col.set(idx, c);
                    break;
                }
            }
    }
    return col;
}

std::vector<int> uncolored_set(const EdgeColoring& c) {
    std::vector<int> out;
    for (int e = 0; e < c.graph().m(); ++e)
        if (c.color(e) == -1) out.push_back(e);
    return out;
}

}  // namespace

bool verify_kempe(long long trials, uint64_t seed, std::ostream& log) {
    std::mt19937_64 rng(seed);
    long long violations = 0;
    for (long long t = 0; t < trials; ++t) {
        int n = 2 + static_cast<int>(rng() % 11);
        double p = 0.1 + 0.8 * (rng() % 100) / 100.0;
        Graph g = random_graph(n, p, rng);
        int k = 4 + static_cast<int>(rng() % 2);
        EdgeColoring col = random_partial_coloring(g, k, rng);
        int v = static_cast<int>(rng() % n);
        int i = static_cast<int>(rng() % k);
        int j = static_cast<int>(rng() % k);
        if (i == j) j = (j + 1) % k;
        try {
            KempeChain chain = kempe_chain(col, v, i, j);
            if (chain.shape == ChainShape::EvenCycle && chain.edge_ids.size() % 2 != 0) {
                ++violations;
                continue;
            }
            if (chain.shape == ChainShape::Path && !chain.vertices.empty() &&
                chain.vertices.size() != chain.edge_ids.size() + 1) {
                ++violations;
                continue;
            }
            EdgeColoring after = swapped(col, chain);
            if (!after.is_proper() || uncolored_set(after) != uncolored_set(col)) {
                ++violations;
                continue;
            }
            KempeChain back = kempe_chain(after, v, i, j);
            EdgeColoring again = swapped(after, back);
            if (!(again == col)) {
                ++violations;
                continue;
            }
            // interior vertices keep their palette; path endpoints trade i/j
            auto ends = chain_ends(chain, {});
            for (int cv : chain.vertices) {
                bool endpoint = chain.shape == ChainShape::Path &&
                                (cv == chain.vertices.front() || cv == chain.vertices.back());
                if (!endpoint && after.seen(cv) != col.seen(cv)) ++violations;
            }
            (void)ends;
        } catch (const std::exception& ex) {
            log << "kempe trial " << t << " raised: " << ex.what() << "\n";
            ++violations;
        }
    }
    log << "kempe: " << trials << " trials, " << violations << " violations\n";
    return violations == 0;
}

bool verify_lemmas(int per_kind, uint64_t seed, std::ostream& log) {
    std::mt19937_64 rng(seed);
    std::map<ConfigKind, long long> ok, bfs_ok;
    std::map<ConfigKind, long long> want{{ConfigKind::A, per_kind},
                                         {ConfigKind::B, per_kind},
                                         {ConfigKind::C, per_kind}};
    long long failures = 0, produced = 0;
    long long guard = 0;
    while ((ok[ConfigKind::A] < want[ConfigKind::A] || ok[ConfigKind::B] < want[ConfigKind::B] ||
            ok[ConfigKind::C] < want[ConfigKind::C])) {
        if (++guard > 400000) {
            log << "lemmas: generator guard tripped\n";
            return false;
        }
        int n = 6 + static_cast<int>(rng() % 9);  // 6..14
        Graph g;
        try {
            g = random_h4(n, rng());
        } catch (const std::exception&) {
            continue;
        }
        if (is_k5_minus_e(g)) continue;
        std::vector<ConfigMatch> all = enumerate_configurations(g);
        if (all.empty()) {
            log << "lemmas: H_4 instance with no configuration: " << emit_graph6(g) << "\n";
            return false;
        }
        std::shuffle(all.begin(), all.end(), rng);
        for (const ConfigMatch& m0 : all) {
            if (ok[m0.kind] >= want[m0.kind]) continue;
            ConfigMatch m = m0;
            // random role-symmetry application (kind C: x <-> y)
            if (m.kind == ConfigKind::C && (rng() & 1)) {
                int x = m.role("x"), y = m.role("y");
                m.set_role("x", y);
                m.set_role("y", x);
            }
            Edge e = m.designated_edge();
            RunConfig rc;
            rc.seed = rng();
            EdgeColoring base;
            try {
                base = color_minus_e(g, e, rc);
            } catch (const std::exception& ex) {
                log << "lemmas: coloring G-e failed: " << ex.what() << "\n";
                return false;
            }
            // uniformly random color permutation
            std::vector<int> perm{0, 1, 2, 3};
            std::shuffle(perm.begin(), perm.end(), rng);
            EdgeColoring shuffled = apply_color_permutation(base, perm);
            ++produced;
            try {
                ExtensionTrace tr = extend_configuration(g, m, shuffled);
                if (!tr.final.is_total() || !tr.final.is_proper() || tr.final.colors_used() > 4)
                    throw std::logic_error("final coloring failed verification");
                replay_trace(g, shuffled, tr);
                ++ok[m.kind];
            } catch (const std::exception& ex) {
                ++failures;
                log << "lemmas: kind " << static_cast<int>(m.kind) << " failed on "
                    << emit_graph6(g) << " roles " << m.to_json() << ": " << ex.what() << "\n";
                if (failures > 5) return false;
                continue;
            }
            if (g.n() <= 14) {
                auto bfs = kempe_search_extend(g, e, shuffled, m.role_vertices());
                if (!bfs || !bfs->is_total() || !bfs->is_proper()) {
                    log << "lemmas: BFS oracle failed on " << emit_graph6(g) << "\n";
                    return false;
                }
                ++bfs_ok[m.kind];
            }
            break;  // one instance per generated graph
        }
    }
    log << "lemmas: A=" << ok[ConfigKind::A] << " B=" << ok[ConfigKind::B]
        << " C=" << ok[ConfigKind::C] << " extensions verified (bfs cross-checks: "
        << bfs_ok[ConfigKind::A] + bfs_ok[ConfigKind::B] + bfs_ok[ConfigKind::C] << "), "
        << failures << " failures, " << produced << " runs\n";
    return failures == 0;
}

bool verify_theorem(int max_n, int oracle_cutoff, std::ostream& log) {
    EnumOptions opt;
    opt.max_degree = 4;
    opt.prune_core44 = true;
    long long scoped = 0, class1 = 0, class2 = 0, mismatches = 0, wrong_class2 = 0;
    long long config_checked = 0, config_failures = 0;
    bool okall = true;
    RunConfig rc;
    for_each_graph(max_n, opt, [&](const Graph& g) {
        if (!in_scope(g)) return;
        ++scoped;
        ClassificationResult res;
        try {
            res = classify(g, rc);
        } catch (const std::exception& ex) {
            log << "theorem: classify failed on " << emit_graph6(g) << ": " << ex.what() << "\n";
            okall = false;
            return;
        }
        bool k5e = is_k5_minus_e(g);
        if (res.verdict == Verdict::Class2) {
            ++class2;
            if (!k5e) {
                ++wrong_class2;
                okall = false;
            }
        } else {
            ++class1;
            if (k5e) {
                ++wrong_class2;
                okall = false;
            }
            if (!res.coloring.is_total() || !res.coloring.is_proper() ||
                res.coloring.colors_used() > 4) {
                log << "theorem: unverified coloring on " << emit_graph6(g) << "\n";
                okall = false;
            }
        }
        if (g.n() <= oracle_cutoff) {
            ChromaticIndexResult ci = chromatic_index(g, rc.budget);
            bool agree = !ci.exhausted && ((res.verdict == Verdict::Class1 && ci.value == 4) ||
                                           (res.verdict == Verdict::Class2 && ci.value == 5));
            if (!agree) {
                ++mismatches;
                okall = false;
                log << "theorem: oracle mismatch on " << emit_graph6(g) << "\n";
            }
        }
        if (in_H_k(g, 4)) {
            ++config_checked;
            std::vector<ConfigMatch> all = enumerate_configurations(g);
            if (k5e) {
                if (!all.empty()) {
                    ++config_failures;
                    okall = false;
                    log << "theorem: K5-e contains a configuration?!\n";
                }
            } else {
                if (all.empty()) {
                    ++config_failures;
                    okall = false;
                    log << "theorem: no configuration in " << emit_graph6(g) << "\n";
                } else {
                    ConfigMatch f = find_configuration(g);
                    bool contained = false;
                    for (const ConfigMatch& m2 : all)
                        if (m2.kind == f.kind && m2.roles == f.roles) contained = true;
                    if (!contained) {
                        ++config_failures;
                        okall = false;
                        log << "theorem: find_configuration not in enumeration on "
                            << emit_graph6(g) << "\n";
                    }
                }
            }
        }
    });
    log << "theorem: n<=" << max_n << ": " << scoped << " in-scope graphs, " << class1
        << " class1, " << class2 << " class2, " << wrong_class2 << " verdict errors, "
        << mismatches << " oracle mismatches, " << config_checked << " H_4 members, "
        << config_failures << " configuration failures\n";
    return okall && class2 == 1;
}

bool verify_val_hz(int max_n, std::ostream& log) {
    long long criticals = 0, val_failures = 0, overfull_bad = 0, hz_checked = 0, hz_failures = 0;
    bool okall = true;
    EnumOptions opt;  // unrestricted
    for_each_graph(max_n, opt, [&](const Graph& g) {
        if (g.m() == 0) return;
        OracleBudget budget;
        ChromaticIndexResult ci = chromatic_index(g, budget);
        if (ci.exhausted) {
            okall = false;
            log << "valhz: oracle exhausted on " << emit_graph6(g) << "\n";
            return;
        }
        int delta = g.max_degree();
        if (is_overfull(g) && ci.value != delta + 1) {
            ++overfull_bad;
            okall = false;
            log << "valhz: overfull graph not class 2: " << emit_graph6(g) << "\n";
        }
        if (ci.value == delta + 1 && is_critical(g, budget)) {
            ++criticals;
            if (!check_val(g)) {
                ++val_failures;
                okall = false;
                log << "valhz: VAL fails on critical " << emit_graph6(g) << "\n";
            }
        }
        if (in_G_k(g, 4) && ci.value > 4) {
            ++hz_checked;
            if (!check_hz_lemma(g, 4, budget)) {
                ++hz_failures;
                okall = false;
                log << "valhz: HZ lemma fails on " << emit_graph6(g) << "\n";
            }
            if (!is_k5_minus_e(g)) {
                okall = false;
                log << "valhz: unexpected class-2 member of G_4: " << emit_graph6(g) << "\n";
            }
        }
    });
    // the Delta=3 exception: P* is class 2 with chi' = 4
    Graph pstar = petersen_minus_vertex();
    ChromaticIndexResult ci = chromatic_index(pstar);
    if (ci.exhausted || ci.value != 4) {
        okall = false;
        log << "valhz: chi'(P*) != 4\n";
    }
    if (!check_hz_lemma(pstar, 3)) {
        okall = false;
        log << "valhz: P* fails the HZ-lemma conclusions for k=3\n";
    }
    log << "valhz: n<=" << max_n << ": " << criticals << " critical graphs, " << val_failures
        << " VAL failures, " << overfull_bad << " overfull errors, " << hz_checked
        << " HZ-lemma cases, " << hz_failures << " HZ failures\n";
    return okall;
}

bool verify_configs(int random_count, int max_random_n, uint64_t seed, std::ostream& log) {
    std::mt19937_64 rng(seed);
    long long empty = 0, not_contained = 0, made = 0;
    for (int t = 0; t < random_count; ++t) {
        int n = 5 + static_cast<int>(rng() % std::max(1, max_random_n - 4));
        Graph g;
        try {
            g = random_h4(n, rng());
        } catch (const std::exception&) {
            continue;
        }
        ++made;
        bool k5e = is_k5_minus_e(g);
        std::vector<ConfigMatch> all = enumerate_configurations(g);
        if (k5e) {
            if (!all.empty()) ++empty;  // K5-e must have none
            continue;
        }
        if (all.empty()) {
            ++empty;
            log << "configs: no configuration in " << emit_graph6(g) << "\n";
            continue;
        }
        ConfigMatch f = find_configuration(g);
        bool contained = false;
        for (const ConfigMatch& m2 : all)
            if (m2.kind == f.kind && m2.roles == f.roles) contained = true;
        if (!contained) {
            ++not_contained;
            log << "configs: find result missing from enumeration on " << emit_graph6(g) << "\n";
        }
    }
    log << "configs: " << made << " random H_4 instances, " << empty << " empty enumerations, "
        << not_contained << " containment failures\n";
    return empty == 0 && not_contained == 0 && made > 0;
}

bool verify_format(std::ostream& log) {
    long long count = 0, bad = 0;
    EnumOptions opt;
    for_each_graph(7, opt, [&](const Graph& g) {
        ++count;
        std::string enc = emit_graph6(g);
        Graph back = parse_graph6(enc);
        if (!(back == g) || emit_graph6(back) != enc) ++bad;
    });
    // JSONL determinism: identical sweeps byte-for-byte
    std::string corpus;
    {
        std::mt19937_64 rng(7);
        for (int i = 0; i < 25; ++i) corpus += emit_graph6(random_h4(8 + (i % 5), rng())) + "\n";
        corpus += emit_graph6(parse_graph6("D~{")) + "\n";  // K5: out of scope
    }
    SweepOptions opt2;
    std::ostringstream out1, out2;
    {
        std::istringstream in(corpus);
        sweep_stream(in, out1, opt2);
    }
    {
        std::istringstream in(corpus);
        sweep_stream(in, out2, opt2);
    }
    bool det = out1.str() == out2.str();
    log << "format: " << count << " graphs round-tripped, " << bad
        << " mismatches; deterministic sweep: " << (det ? "yes" : "no") << "\n";
    return bad == 0 && det;
}

}  // namespace hz4
