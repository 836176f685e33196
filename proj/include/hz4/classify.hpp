#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hz4/graph.hpp"
#include "hz4/oracle.hpp"
#include "hz4/reducibility.hpp"
#include "hz4/structure.hpp"

namespace hz4 {

enum class Verdict { Class1, Class2 };
enum class Certificate { Overfull, K5MinusE, OracleProof };

struct ClassificationResult {
    Verdict verdict = Verdict::Class1;
    EdgeColoring coloring;  // present iff Class1
    std::optional<Certificate> certificate;
    std::optional<ConfigMatch> match;      // configuration used, when one was
    std::optional<ExtensionTrace> trace;   // extension steps, when requested
    long long color_minus_e_micros = 0;
    long long extend_micros = 0;
    long long total_micros = 0;
};

struct RunConfig {
    uint64_t seed = 1;
    OracleBudget budget;
    bool want_trace = false;
};

// Constructive classification for connected graphs with Delta=4 whose core
// has maximum degree at most 2. Class 2 exactly on K5-e.
ClassificationResult classify(const Graph& g, const RunConfig& cfg = {});

// Proper total 4-coloring of g minus the given edge: a seed-randomized greedy
// pass first, exact search as fallback. Deterministic per (graph, seed).
EdgeColoring color_minus_e(const Graph& g, const Edge& e, const RunConfig& cfg = {});

// Random connected member of H_4 on n vertices. Throws when n < 5 or no
// instance is found within the retry bound.
Graph random_h4(int n, uint64_t seed);

std::string certificate_name(Certificate c);

}  // namespace hz4
