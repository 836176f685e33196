#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "hz4/graph.hpp"

namespace hz4 {

struct EnumOptions {
    int max_degree = 0;       // 0 = unbounded
    bool prune_core44 = false;  // drop graphs where a 4-vertex has >2 4-neighbors
};

// Canonical 128-bit key for graphs on at most 11 vertices, supplied as
// per-vertex adjacency bitmasks. Computed component-wise (an
// individualization-refinement search per component), so highly symmetric
// disconnected graphs stay cheap.
std::pair<uint64_t, uint64_t> canonical_key(int n, const std::vector<uint32_t>& adj);

// Isomorph-free enumeration by vertex augmentation with canonical-key
// deduplication; sink sees one representative per isomorphism class for
// every vertex count 1..max_n, disconnected graphs included.
void for_each_graph(int max_n, const EnumOptions& opt,
                    const std::function<void(const Graph&)>& sink);

}  // namespace hz4
