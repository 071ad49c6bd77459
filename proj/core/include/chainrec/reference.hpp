#pragma once

#include <cstdint>
#include <vector>

#include "chainrec/graph.hpp"

namespace chainrec {

/// Reference shortest-path implementations used to cross-check the Dijkstra
/// engine. Deliberately independent of the engine's code path.

struct EdgeList {
    int n = 0;
    std::vector<TransitionGraph::Edge> edges;
};

/// Minimum-cost walk with at least one edge from `source` to every node
/// (Bellman-Ford style relaxation; +inf where unreachable).
std::vector<double> bellman_ford_min_walk(const EdgeList& g, int source);

/// Exhaustive enumeration of all walks with 1..max_edges edges.
std::vector<double> enumerate_min_walk(const EdgeList& g, int source, int max_edges);

/// Random instance with weights in [0,1); self-loops allowed. Deterministic
/// in the seed across platforms.
EdgeList random_instance(std::uint64_t seed, int n, double edge_prob, double self_loop_prob);

EdgeList to_edge_list(const TransitionGraph& g);

} // namespace chainrec
