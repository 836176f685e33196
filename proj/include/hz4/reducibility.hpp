#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hz4/coloring.hpp"
#include "hz4/graph.hpp"
#include "hz4/structure.hpp"

namespace hz4 {

enum class StepAction { Swap, Assign, Unassign, Permute };

struct TraceStep {
    std::string label;  // paper case name driving this step
    StepAction action = StepAction::Assign;
    KempeChain chain;          // Swap
    bool restricted = false;   // chain taken in G - E(H)
    int eu = -1, ev = -1;      // Assign / Unassign endpoints
    int color = -1;            // Assign
    std::vector<int> perm;     // Permute
};

struct ExtensionTrace {
    std::vector<TraceStep> steps;
    EdgeColoring final;
    std::string to_json() const;
};

// Raised when the case analysis reaches a state the proof says is impossible.
struct extension_error : std::logic_error {
    explicit extension_error(const std::string& why) : std::logic_error(why) {}
};

struct NormalizeResult {
    bool direct = false;  // endpoints of e already share a missing color
    int direct_color = -1;
    EdgeColoring coloring;
    std::vector<int> perm;
};

// Permute colors so the lemma entry convention holds at the designated edge:
// the degree-3 endpoint sees {0,1}, the degree-4 endpoint sees {0,2,3}.
NormalizeResult normalize(const EdgeColoring& c, const ConfigMatch& m);

ExtensionTrace extend_a(const Graph& g, const ConfigMatch& m, const EdgeColoring& c);
ExtensionTrace extend_b(const Graph& g, const ConfigMatch& m, const EdgeColoring& c);
ExtensionTrace extend_c(const Graph& g, const ConfigMatch& m, const EdgeColoring& c);
// Dispatch on m.kind.
ExtensionTrace extend_configuration(const Graph& g, const ConfigMatch& m, const EdgeColoring& c);

// Replays the steps from `initial`, checking properness after each one;
// throws if the result differs from t.final.
EdgeColoring replay_trace(const Graph& g, const EdgeColoring& initial, const ExtensionTrace& t);

// Independent oracle: breadth-first search over colorings reachable by Kempe
// swaps started at tracked vertices, stopping when e's endpoints share a
// missing color (which is then assigned). nullopt = budget exhausted.
std::optional<EdgeColoring> kempe_search_extend(const Graph& g, const Edge& e,
                                                const EdgeColoring& c,
                                                const std::vector<int>& tracked,
                                                long long node_limit = 2'000'000);

}  // namespace hz4
