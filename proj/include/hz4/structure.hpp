#pragma once

#include <array>
#include <string>
#include <vector>

#include "hz4/graph.hpp"

namespace hz4 {

// Max degree k and every k-vertex has at most two k-neighbors.
bool in_G_k(const Graph& g, int k);

// Max degree k, min degree k-1, core a disjoint union of cycles, and every
// vertex has a k-neighbor.
bool in_H_k(const Graph& g, int k);

enum class ConfigKind { A, B, C };

// An embedding of one of the three reducible configurations as a role map.
// Role order by kind:
//   A: v z w x y      (e = vz;  degrees 4 3 4 3 3)
//   B: u v w x y z    (e = ux;  degrees 3 4 3 4 4 3)
//   C: s t u v w x y z (e = st; degrees 4 3 3 4 4 3 3 3)
struct ConfigMatch {
    ConfigKind kind = ConfigKind::A;
    std::array<int, 8> roles{};

    int role_count() const;
    const char* role_name(int i) const;
    int role(const std::string& name) const;
    void set_role(const std::string& name, int vertex);

    Edge designated_edge() const;
    std::vector<int> role_vertices() const;
    // Vertex pairs of the configuration edges, designated edge first.
    std::vector<Edge> config_edges() const;
    // Degree stamps parallel to the role order.
    std::vector<int> degree_stamps() const;

    std::string to_json() const;
};

// Checks role distinctness, required edges, and degree stamps.
bool match_valid(const Graph& g, const ConfigMatch& m);

// Constructive case analysis from the proof of the main theorem. Requires a
// connected member of H_4 other than K5-e; always succeeds there.
ConfigMatch find_configuration(const Graph& g);

// Independent brute-force oracle: every embedding of the three patterns
// (kind C canonicalized with x < y).
std::vector<ConfigMatch> enumerate_configurations(const Graph& g);

}  // namespace hz4
