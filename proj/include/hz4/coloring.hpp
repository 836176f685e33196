#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hz4/graph.hpp"

namespace hz4 {

using ColorMask = unsigned;

enum class ChainShape { Path, EvenCycle };

// The (i,j)-bicolored component at a vertex. A snapshot: swapping validates
// alternation again, so a stale chain is rejected loudly.
struct KempeChain {
    int ci = 0, cj = 0;
    std::vector<int> vertices;  // ordered; for a cycle, first == last
    std::vector<int> edge_ids;  // ordered, alternating ci/cj
    ChainShape shape = ChainShape::Path;

    bool contains_vertex(int v) const;
    bool contains_edge(int e) const;
    // For a path chain that starts at `from`, the vertex at the other end.
    int other_end(int from) const;
};

struct ChainEnd {
    bool at_infinity = false;  // endpoint lies outside the tracked set
    int vertex = -1;
};

// Partial proper edge coloring with colors 0..k-1; -1 marks uncolored.
class EdgeColoring {
public:
    EdgeColoring() = default;
    EdgeColoring(const Graph& g, int k);

    const Graph& graph() const { return *g_; }
    int k() const { return k_; }

    int color(int edge_id) const { return color_[edge_id]; }
    int color_of(int u, int v) const;

    // Assign; the edge must be uncolored or already carry c. Throws if the
    // color clashes at an endpoint.
    void set(int edge_id, int c);
    void unset(int edge_id);

    ColorMask seen(int v) const { return seen_[v]; }
    ColorMask missing(int v) const { return ~seen_[v] & all_; }
    bool sees(int v, int c) const { return (seen_[v] >> c) & 1u; }
    // Incident edge carrying color c, or -1.
    int edge_with_color(int v, int c) const;

    bool is_proper() const;
    bool is_total() const;
    int colors_used() const;

    bool operator==(const EdgeColoring& o) const { return color_ == o.color_; }
    const std::vector<int8_t>& raw() const { return color_; }
    uint64_t hash() const;

private:
    const Graph* g_ = nullptr;
    int k_ = 0;
    ColorMask all_ = 0;
    std::vector<int8_t> color_;
    std::vector<ColorMask> seen_;
};

std::vector<int> missing_colors(const EdgeColoring& c, int v);

// Full (i,j)-component containing v. With `excluded` non-null, edges flagged
// there are invisible (chains in G - E(H)).
KempeChain kempe_chain(const EdgeColoring& c, int v, int i, int j,
                       const std::vector<char>* excluded = nullptr);

// nullopt for a cycle chain; otherwise both endpoint descriptors relative to
// the tracked vertex set.
std::optional<std::pair<ChainEnd, ChainEnd>> chain_ends(const KempeChain& chain,
                                                        const std::vector<int>& tracked);

bool linked(const EdgeColoring& c, int v, int w, int i, int j);

// In-place Kempe swap. Re-validates alternation (stale chains throw) and
// properness at every touched vertex afterwards.
void swap_chain(EdgeColoring& c, const KempeChain& chain);
EdgeColoring swapped(const EdgeColoring& c, const KempeChain& chain);

bool is_proper(const EdgeColoring& c);
bool is_total(const EdgeColoring& c);

// perm must be a bijection on {0..k-1}.
EdgeColoring apply_color_permutation(const EdgeColoring& c, const std::vector<int>& perm);

// {"u-v": color} rendering for JSONL output.
std::string coloring_json(const EdgeColoring& c);

}  // namespace hz4
