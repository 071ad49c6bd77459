#include "chainrec/graph.hpp"

#include <algorithm>
#include <cmath>

#include "chainrec/errors.hpp"
#include "chainrec/parallel.hpp"

namespace chainrec {

TimeGrid TimeGrid::uniform(double T, int count) {
    if (T <= 0) throw ConfigError("time grid requires T > 0");
    if (count < 2) throw ConfigError("time grid needs at least the two endpoints");
    TimeGrid g;
    g.T = T;
    g.steps.resize(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k)
        g.steps[static_cast<std::size_t>(k)] = T + T * static_cast<double>(k) / (count - 1);
    return g;
}

TimeGrid TimeGrid::with_spacing(double T, double spacing) {
    if (T <= 0 || spacing <= 0) throw ConfigError("time grid requires positive T and spacing");
    const double ratio = T / spacing;
    const long k = std::lround(ratio);
    if (k < 1 || std::fabs(ratio - static_cast<double>(k)) > 1e-9)
        throw ConfigError("time grid spacing must divide T");
    TimeGrid g;
    g.T = T;
    g.steps.resize(static_cast<std::size_t>(k + 1));
    for (long i = 0; i <= k; ++i) g.steps[static_cast<std::size_t>(i)] = T + spacing * static_cast<double>(i);
    return g;
}

double TransitionGraph::self_edge_weight(int node) const {
    for (std::int64_t e = offsets[static_cast<std::size_t>(node)];
         e < offsets[static_cast<std::size_t>(node) + 1]; ++e) {
        if (targets[static_cast<std::size_t>(e)] == node) return weights[static_cast<std::size_t>(e)];
        if (targets[static_cast<std::size_t>(e)] > node) break;
    }
    return std::numeric_limits<double>::infinity();
}

TransitionGraph TransitionGraph::from_edges(int node_count, const std::vector<Edge>& edges,
                                            double budget) {
    std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(node_count));
    for (const auto& e : edges) {
        if (e.w <= budget) adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.w);
    }
    TransitionGraph g;
    g.node_count = node_count;
    g.budget = budget;
    g.offsets.assign(static_cast<std::size_t>(node_count) + 1, 0);
    for (int u = 0; u < node_count; ++u) {
        auto& list = adj[static_cast<std::size_t>(u)];
        std::sort(list.begin(), list.end());
        // Keep the cheapest parallel edge per target.
        std::vector<std::pair<int, double>> dedup;
        for (const auto& [v, w] : list) {
            if (!dedup.empty() && dedup.back().first == v)
                dedup.back().second = std::min(dedup.back().second, w);
            else
                dedup.emplace_back(v, w);
        }
        for (const auto& [v, w] : dedup) {
            g.targets.push_back(v);
            g.weights.push_back(w);
        }
        g.offsets[static_cast<std::size_t>(u) + 1] = static_cast<std::int64_t>(g.targets.size());
        if (dedup.empty()) ++g.isolated_nodes;
    }
    return g;
}

TransitionGraph build_graph(const SampleGrid& grid, const FlowImageTable& images,
                            const TimeGrid& timegrid, double budget, int parallelism) {
    if (budget <= 0) throw ConfigError("graph budget must be positive");
    const int n = grid.size();
    const std::size_t nt = timegrid.steps.size();

    std::vector<std::vector<std::int32_t>> node_targets(static_cast<std::size_t>(n));
    std::vector<std::vector<double>> node_weights(static_cast<std::size_t>(n));

    const int workers = resolve_parallelism(parallelism);
    struct Scratch {
        std::vector<double> best;
        std::vector<int> stamp;
        std::vector<std::int32_t> touched;
        int epoch = 0;
    };
    std::vector<Scratch> scratch(static_cast<std::size_t>(workers));
    for (auto& s : scratch) {
        s.best.assign(static_cast<std::size_t>(n), 0.0);
        s.stamp.assign(static_cast<std::size_t>(n), -1);
    }

    parallel_for(static_cast<std::size_t>(n), parallelism, [&](std::size_t i, int tid) {
        auto& s = scratch[static_cast<std::size_t>(tid)];
        const int epoch = s.epoch++;
        s.touched.clear();
        for (std::size_t k = 0; k < nt; ++k) {
            const Point& img = images.at(static_cast<int>(i), static_cast<int>(k));
            grid.for_samples_within(img, budget, [&](int q, double d) {
                auto qi = static_cast<std::size_t>(q);
                if (s.stamp[qi] != epoch) {
                    s.stamp[qi] = epoch;
                    s.best[qi] = d;
                    s.touched.push_back(q);
                } else if (d < s.best[qi]) {
                    s.best[qi] = d;
                }
            });
        }
        std::sort(s.touched.begin(), s.touched.end());
        auto& tv = node_targets[i];
        auto& wv = node_weights[i];
        tv.assign(s.touched.begin(), s.touched.end());
        wv.resize(tv.size());
        for (std::size_t k = 0; k < tv.size(); ++k)
            wv[k] = s.best[static_cast<std::size_t>(tv[k])];
    });

    TransitionGraph g;
    g.node_count = n;
    g.budget = budget;
    g.timegrid = timegrid;
    g.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    std::int64_t total = 0;
    for (int u = 0; u < n; ++u) {
        total += static_cast<std::int64_t>(node_targets[static_cast<std::size_t>(u)].size());
        g.offsets[static_cast<std::size_t>(u) + 1] = total;
        if (node_targets[static_cast<std::size_t>(u)].empty()) ++g.isolated_nodes;
    }
    g.targets.reserve(static_cast<std::size_t>(total));
    g.weights.reserve(static_cast<std::size_t>(total));
    for (int u = 0; u < n; ++u) {
        const auto& tv = node_targets[static_cast<std::size_t>(u)];
        const auto& wv = node_weights[static_cast<std::size_t>(u)];
        g.targets.insert(g.targets.end(), tv.begin(), tv.end());
        g.weights.insert(g.weights.end(), wv.begin(), wv.end());
    }
    return g;
}

TransitionGraph build_graph(const SampleGrid& grid, const FlowMap& map,
                            const TimeGrid& timegrid, double budget, int parallelism) {
    const FlowImageTable images = flow_image_table(map, grid, timegrid.steps, parallelism);
    return build_graph(grid, images, timegrid, budget, parallelism);
}

} // namespace chainrec
