#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "chainrec/flow.hpp"
#include "chainrec/space.hpp"

namespace chainrec {

/// Admissible segment durations for one chain step: a sorted list in
/// [T, 2T] including both endpoints.
struct TimeGrid {
    double T = 1.0;
    std::vector<double> steps;

    static TimeGrid uniform(double T, int count = 9);
    /// Steps T, T+spacing, ..., 2T. Requires T to be a multiple of spacing.
    static TimeGrid with_spacing(double T, double spacing);
};

/// Directed weighted graph over grid samples. Edge p -> q carries
/// w = min over admissible durations t of d(phi_t(p), q), kept iff w <= budget.
/// Adjacency is CSR, targets sorted ascending per node.
struct TransitionGraph {
    int node_count = 0;
    double budget = 0.0;
    TimeGrid timegrid;
    std::vector<std::int64_t> offsets;   // node_count + 1
    std::vector<std::int32_t> targets;
    std::vector<double> weights;
    int isolated_nodes = 0;              // nodes with empty adjacency

    std::int64_t edge_count() const { return static_cast<std::int64_t>(targets.size()); }
    double self_edge_weight(int node) const;  // +inf if absent

    struct Edge { int u, v; double w; };
    static TransitionGraph from_edges(int node_count, const std::vector<Edge>& edges,
                                      double budget = std::numeric_limits<double>::infinity());
};

/// Builds the transition graph from cached flow images over the time grid.
TransitionGraph build_graph(const SampleGrid& grid, const FlowImageTable& images,
                            const TimeGrid& timegrid, double budget, int parallelism);

/// Convenience overload that computes the image table itself.
TransitionGraph build_graph(const SampleGrid& grid, const FlowMap& map,
                            const TimeGrid& timegrid, double budget, int parallelism);

} // namespace chainrec
