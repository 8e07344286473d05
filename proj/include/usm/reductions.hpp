#pragma once

// Instance generators built from hard combinatorial problems. They double as
// adversarial fixtures for the solvers.

#include "usm/models.hpp"
#include "usm/twosat.hpp"

#include <array>
#include <utility>
#include <vector>

namespace usm {

/// Exact cover by 3-sets over elements 0..universe-1.
struct X3cInstance {
    int universe = 0;
    std::vector<std::array<int, 3>> triples;
};

/// Simple undirected graph over vertices 0..vertices-1.
struct Graph {
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;
};

struct GeneratedInstance {
    Instance instance;
    Matching matching;
};

/// Lottery instance with 4n agents per side (universe of 3n elements) and a
/// designated matching that is stable with non-zero probability iff the
/// triples contain an exact cover. Men are a_0..a_{n-1} then one agent per
/// element; women likewise. Throws InvalidInput on an empty triple list, a
/// universe not divisible by three, or malformed triples.
GeneratedInstance x3c_to_lottery(const X3cInstance& problem);

/// Lottery instance in which every uncertain agent holds two equally likely
/// orders, one per truth value. Each variable is represented by four agents,
/// two per side, tied into a cycle of implications that forces them equal;
/// clauses become blocking conditions between an x copy and a y copy. The
/// designated matching is stable with probability (number of models) / 2^{4n}.
GeneratedInstance count2sat_to_lottery(const TwoSatInstance& formula);

/// Joint instance over 3|V| men and 3|V| women, uniform over 1 + 3|E|
/// profiles, that admits a certainly stable matching iff the graph is
/// 3-colorable. Agent (v, j) has index 3v + j.
Instance three_color_to_joint(const Graph& graph);

/// Certainly stable matching of the joint instance for a proper coloring
/// (colors 0..2); block v pairs man j with woman j + color(v) mod 3.
Matching coloring_matching(const Graph& graph, const std::vector<int>& coloring);

} // namespace usm
