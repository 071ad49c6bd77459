#pragma once

#include <limits>
#include <queue>
#include <vector>

#include "chainrec/graph.hpp"

namespace chainrec {

inline constexpr double kInfCost = std::numeric_limits<double>::infinity();

/// Reusable Dijkstra state; one per worker thread.
class DijkstraWorkspace {
public:
    void prepare(int node_count);

    std::vector<double> dist;
    std::vector<int> stamp;
    int epoch = -1;
    using HeapEntry = std::pair<double, std::int32_t>;
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>> heap;
};

/// Discretized chain costs from one source: single-source shortest paths over
/// the transition graph, truncated beyond `budget`. By the n >= 1 chain
/// convention the value at the source itself is the cheapest nontrivial
/// cycle, not 0. Entries beyond the budget are +inf.
struct CostTable {
    int source = -1;
    double budget = 0.0;
    std::vector<double> values;
};

CostTable chain_cost(const TransitionGraph& g, int source, double budget,
                     DijkstraWorkspace& ws);

/// Cheapest cycle through `node` (its chain cost back to itself), or +inf if
/// none exists within `budget`.
double recurrence_value(const TransitionGraph& g, int node, double budget,
                        DijkstraWorkspace& ws);

/// recurrence_value for every node, in parallel.
std::vector<double> recurrence_values(const TransitionGraph& g, double budget,
                                      int parallelism);

/// Nodes whose recurrence value is <= eps.
std::vector<std::uint8_t> a_t_set(const std::vector<double>& recurrence, double eps);

/// Intersection of per-T membership bitmaps.
std::vector<std::uint8_t> intersect_bitmaps(const std::vector<std::vector<std::uint8_t>>& maps);

/// Chain-recurrent nodes at resolution eps: keep edges with w <= eps, then a
/// node is included iff its strongly connected component carries a cycle
/// (size > 1 or a self-loop <= eps).
std::vector<std::uint8_t> cr_estimate(const TransitionGraph& g, double eps);

/// Strongly connected components of an explicit digraph (Tarjan, iterative).
/// Returns one label per node, numbered in order of first appearance by
/// lowest node index.
std::vector<int> scc_labels(int n, const std::vector<std::int64_t>& offsets,
                            const std::vector<std::int32_t>& targets);

/// Strong chain transitive component labels. Two SCR nodes are equivalent iff
/// for every T-graph each reaches the other at chain cost <= eps; computed as
/// SCCs of the bounded-reachability digraph restricted to SCR nodes,
/// intersected across the graphs. Non-SCR nodes get label -1.
std::vector<int> transitive_components(const std::vector<const TransitionGraph*>& graphs,
                                       const std::vector<std::uint8_t>& scr, double eps,
                                       int parallelism);

/// Chain costs from every source (guarded to <= 2048 nodes).
struct CostMatrix {
    int n = 0;
    double budget = 0.0;
    std::vector<double> values;  // values[source * n + target]
    double at(int s, int t) const { return values[static_cast<std::size_t>(s) * n + static_cast<std::size_t>(t)]; }
};
CostMatrix full_cost_matrix(const TransitionGraph& g, double budget, int parallelism);

} // namespace chainrec
