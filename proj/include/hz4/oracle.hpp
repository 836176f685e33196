#pragma once

#include <optional>

#include "hz4/coloring.hpp"
#include "hz4/graph.hpp"

namespace hz4 {

struct OracleBudget {
    long long node_limit = 10'000'000;
    double time_limit = 30.0;  // seconds per oracle call
};

enum class SearchOutcome { Found, NotFound, Exhausted };

struct SearchResult {
    SearchOutcome outcome = SearchOutcome::Exhausted;
    EdgeColoring coloring;
    long long nodes = 0;
};

// Exact backtracking search for a total proper k-edge-coloring.
// Deterministic: edges ordered by descending endpoint degree sum then lex,
// lowest feasible color first, colors of one max-degree vertex fixed.
SearchResult find_edge_coloring(const Graph& g, int k, const OracleBudget& budget = {});

struct ChromaticIndexResult {
    int value = -1;  // -1 when exhausted
    EdgeColoring witness;
    bool exhausted = false;
};

ChromaticIndexResult chromatic_index(const Graph& g, const OracleBudget& budget = {});

// Constructive Delta+1 coloring (Misra-Gries style fans), polynomial time.
EdgeColoring vizing_color(const Graph& g);

bool is_class1(const Graph& g, const OracleBudget& budget = {});

// Class 2 and every single-edge deletion is class 1 (with Delta fixed).
bool is_critical(const Graph& g, const OracleBudget& budget = {});

// Greedy canonical-order edge deletion to a critical subgraph with the same
// maximum degree; result is verified by oracle calls. Throws on class-1 input
// or budget exhaustion.
Graph critical_subgraph(const Graph& g, const OracleBudget& budget = {});

// Vizing's Adjacency Lemma statement as a checkable property.
bool check_val(const Graph& g);

// For g in G_k with chi' > k: checks that g lands in H_k and is critical.
// Throws std::domain_error when the preconditions fail.
bool check_hz_lemma(const Graph& g, int k, const OracleBudget& budget = {});

}  // namespace hz4
