#include "chainrec/chaincost.hpp"

#include <algorithm>

#include "chainrec/errors.hpp"
#include "chainrec/parallel.hpp"

namespace chainrec {

void DijkstraWorkspace::prepare(int node_count) {
    if (dist.size() != static_cast<std::size_t>(node_count)) {
        dist.assign(static_cast<std::size_t>(node_count), kInfCost);
        stamp.assign(static_cast<std::size_t>(node_count), -1);
        epoch = -1;
    }
    ++epoch;
    while (!heap.empty()) heap.pop();
}

namespace {

/// Shared Dijkstra core with the n >= 1 chain convention: the source distance
/// is seeded from its out-edges (including a self-loop), never 0. If
/// stop_node >= 0, returns as soon as that node is settled; its distance is
/// the result. Ties pop by lowest node index.
double run_dijkstra(const TransitionGraph& g, int source, double budget,
                    DijkstraWorkspace& ws, int stop_node) {
    ws.prepare(g.node_count);
    const int epoch = ws.epoch;
    auto& dist = ws.dist;
    auto& stamp = ws.stamp;
    auto& heap = ws.heap;

    auto relax = [&](std::int32_t v, double d) {
        const auto vi = static_cast<std::size_t>(v);
        if (stamp[vi] != epoch || d < dist[vi]) {
            stamp[vi] = epoch;
            dist[vi] = d;
            heap.emplace(d, v);
        }
    };

    for (std::int64_t e = g.offsets[static_cast<std::size_t>(source)];
         e < g.offsets[static_cast<std::size_t>(source) + 1]; ++e) {
        const double w = g.weights[static_cast<std::size_t>(e)];
        if (w <= budget) relax(g.targets[static_cast<std::size_t>(e)], w);
    }

    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        const auto ui = static_cast<std::size_t>(u);
        if (stamp[ui] != epoch || d != dist[ui]) continue;  // stale entry
        if (u == stop_node) return d;
        for (std::int64_t e = g.offsets[ui]; e < g.offsets[ui + 1]; ++e) {
            const double nd = d + g.weights[static_cast<std::size_t>(e)];
            if (nd <= budget) relax(g.targets[static_cast<std::size_t>(e)], nd);
        }
    }
    return kInfCost;
}

} // namespace

CostTable chain_cost(const TransitionGraph& g, int source, double budget,
                     DijkstraWorkspace& ws) {
    if (source < 0 || source >= g.node_count) throw InputError("chain_cost: bad source");
    ws.prepare(g.node_count);
    const int epoch = ws.epoch;
    auto& dist = ws.dist;
    auto& stamp = ws.stamp;
    auto& heap = ws.heap;

    CostTable out;
    out.source = source;
    out.budget = budget;
    out.values.assign(static_cast<std::size_t>(g.node_count), kInfCost);

    auto relax = [&](std::int32_t v, double d) {
        const auto vi = static_cast<std::size_t>(v);
        if (stamp[vi] != epoch || d < dist[vi]) {
            stamp[vi] = epoch;
            dist[vi] = d;
            heap.emplace(d, v);
        }
    };
    for (std::int64_t e = g.offsets[static_cast<std::size_t>(source)];
         e < g.offsets[static_cast<std::size_t>(source) + 1]; ++e) {
        const double w = g.weights[static_cast<std::size_t>(e)];
        if (w <= budget) relax(g.targets[static_cast<std::size_t>(e)], w);
    }
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        const auto ui = static_cast<std::size_t>(u);
        if (stamp[ui] != epoch || d != dist[ui]) continue;  // stale entry
        out.values[ui] = d;
        for (std::int64_t e = g.offsets[ui]; e < g.offsets[ui + 1]; ++e) {
            const double nd = d + g.weights[static_cast<std::size_t>(e)];
            if (nd <= budget) relax(g.targets[static_cast<std::size_t>(e)], nd);
        }
    }
    return out;
}

double recurrence_value(const TransitionGraph& g, int node, double budget,
                        DijkstraWorkspace& ws) {
    if (node < 0 || node >= g.node_count) throw InputError("recurrence_value: bad node");
    // An (almost) exact self-return cannot be improved by a longer cycle.
    const double self_w = g.self_edge_weight(node);
    if (self_w <= 1e-9) return self_w;
    return run_dijkstra(g, node, budget, ws, node);
}

std::vector<double> recurrence_values(const TransitionGraph& g, double budget,
                                      int parallelism) {
    std::vector<double> out(static_cast<std::size_t>(g.node_count), kInfCost);
    const int workers = resolve_parallelism(parallelism);
    std::vector<DijkstraWorkspace> ws(static_cast<std::size_t>(workers));
    parallel_for(static_cast<std::size_t>(g.node_count), parallelism, [&](std::size_t i, int tid) {
        out[i] = recurrence_value(g, static_cast<int>(i), budget, ws[static_cast<std::size_t>(tid)]);
    });
    return out;
}

std::vector<std::uint8_t> a_t_set(const std::vector<double>& recurrence, double eps) {
    std::vector<std::uint8_t> out(recurrence.size());
    for (std::size_t i = 0; i < recurrence.size(); ++i) out[i] = recurrence[i] <= eps ? 1 : 0;
    return out;
}

std::vector<std::uint8_t> intersect_bitmaps(const std::vector<std::vector<std::uint8_t>>& maps) {
    if (maps.empty()) return {};
    std::vector<std::uint8_t> out = maps.front();
    for (std::size_t m = 1; m < maps.size(); ++m)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] &= maps[m][i];
    return out;
}

std::vector<int> scc_labels(int n, const std::vector<std::int64_t>& offsets,
                            const std::vector<std::int32_t>& targets) {
    // Iterative Tarjan.
    std::vector<int> index(static_cast<std::size_t>(n), -1);
    std::vector<int> low(static_cast<std::size_t>(n), 0);
    std::vector<std::uint8_t> on_stack(static_cast<std::size_t>(n), 0);
    std::vector<int> stack;
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    int next_index = 0;
    int next_comp = 0;

    struct Frame { int v; std::int64_t edge; };
    std::vector<Frame> frames;

    for (int root = 0; root < n; ++root) {
        if (index[static_cast<std::size_t>(root)] != -1) continue;
        frames.push_back({root, offsets[static_cast<std::size_t>(root)]});
        index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = next_index++;
        stack.push_back(root);
        on_stack[static_cast<std::size_t>(root)] = 1;
        while (!frames.empty()) {
            auto& f = frames.back();
            const auto vi = static_cast<std::size_t>(f.v);
            if (f.edge < offsets[vi + 1]) {
                const int w = targets[static_cast<std::size_t>(f.edge++)];
                const auto wi = static_cast<std::size_t>(w);
                if (index[wi] == -1) {
                    index[wi] = low[wi] = next_index++;
                    stack.push_back(w);
                    on_stack[wi] = 1;
                    frames.push_back({w, offsets[wi]});
                } else if (on_stack[wi]) {
                    low[vi] = std::min(low[vi], index[wi]);
                }
            } else {
                if (low[vi] == index[vi]) {
                    for (;;) {
                        const int w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<std::size_t>(w)] = 0;
                        comp[static_cast<std::size_t>(w)] = next_comp;
                        if (w == f.v) break;
                    }
                    ++next_comp;
                }
                frames.pop_back();
                if (!frames.empty()) {
                    auto& parent = frames.back();
                    low[static_cast<std::size_t>(parent.v)] =
                        std::min(low[static_cast<std::size_t>(parent.v)], low[vi]);
                }
            }
        }
    }
    // Renumber components in order of first appearance by node index.
    std::vector<int> remap(static_cast<std::size_t>(next_comp), -1);
    int dense = 0;
    for (int v = 0; v < n; ++v) {
        int& r = remap[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
        if (r == -1) r = dense++;
        comp[static_cast<std::size_t>(v)] = r;
    }
    return comp;
}

std::vector<std::uint8_t> cr_estimate(const TransitionGraph& g, double eps) {
    const int n = g.node_count;
    std::vector<std::int64_t> offsets(static_cast<std::size_t>(n) + 1, 0);
    std::vector<std::int32_t> targets;
    std::vector<std::uint8_t> self_loop(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u) {
        for (std::int64_t e = g.offsets[static_cast<std::size_t>(u)];
             e < g.offsets[static_cast<std::size_t>(u) + 1]; ++e) {
            if (g.weights[static_cast<std::size_t>(e)] > eps) continue;
            const std::int32_t v = g.targets[static_cast<std::size_t>(e)];
            if (v == u) self_loop[static_cast<std::size_t>(u)] = 1;
            targets.push_back(v);
        }
        offsets[static_cast<std::size_t>(u) + 1] = static_cast<std::int64_t>(targets.size());
    }
    const std::vector<int> comp = scc_labels(n, offsets, targets);
    int max_comp = 0;
    for (int c : comp) max_comp = std::max(max_comp, c + 1);
    std::vector<int> comp_size(static_cast<std::size_t>(max_comp), 0);
    for (int c : comp) ++comp_size[static_cast<std::size_t>(c)];

    std::vector<std::uint8_t> out(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        const int c = comp[static_cast<std::size_t>(v)];
        out[static_cast<std::size_t>(v)] =
            (comp_size[static_cast<std::size_t>(c)] > 1 || self_loop[static_cast<std::size_t>(v)]) ? 1 : 0;
    }
    return out;
}

std::vector<int> transitive_components(const std::vector<const TransitionGraph*>& graphs,
                                       const std::vector<std::uint8_t>& scr, double eps,
                                       int parallelism) {
    if (graphs.empty()) throw InputError("transitive_components: no graphs");
    const int n = graphs.front()->node_count;
    std::vector<int> scr_nodes;
    std::vector<int> compact(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v) {
        if (scr[static_cast<std::size_t>(v)]) {
            compact[static_cast<std::size_t>(v)] = static_cast<int>(scr_nodes.size());
            scr_nodes.push_back(v);
        }
    }
    const int m = static_cast<int>(scr_nodes.size());
    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    if (m == 0) return labels;

    // Per graph: arcs p -> q between SCR nodes whenever the chain cost of
    // p -> q is <= eps, then SCC labels of that digraph.
    std::vector<std::vector<int>> per_graph_labels;
    per_graph_labels.reserve(graphs.size());
    for (const TransitionGraph* g : graphs) {
        std::vector<std::vector<std::int32_t>> arcs(static_cast<std::size_t>(m));
        const int workers = resolve_parallelism(parallelism);
        std::vector<DijkstraWorkspace> ws(static_cast<std::size_t>(workers));
        parallel_for(static_cast<std::size_t>(m), parallelism, [&](std::size_t k, int tid) {
            const int src = scr_nodes[k];
            const CostTable table = chain_cost(*g, src, eps, ws[static_cast<std::size_t>(tid)]);
            for (int q = 0; q < n; ++q) {
                if (table.values[static_cast<std::size_t>(q)] <= eps &&
                    compact[static_cast<std::size_t>(q)] >= 0)
                    arcs[k].push_back(compact[static_cast<std::size_t>(q)]);
            }
        });
        std::vector<std::int64_t> offsets(static_cast<std::size_t>(m) + 1, 0);
        std::vector<std::int32_t> targets;
        for (int k = 0; k < m; ++k) {
            targets.insert(targets.end(), arcs[static_cast<std::size_t>(k)].begin(),
                           arcs[static_cast<std::size_t>(k)].end());
            offsets[static_cast<std::size_t>(k) + 1] = static_cast<std::int64_t>(targets.size());
        }
        per_graph_labels.push_back(scc_labels(m, offsets, targets));
    }

    // Equivalent iff equivalent in every graph: group by the tuple of
    // per-graph SCC labels, then number groups by their lowest node index.
    std::vector<std::vector<int>> keys(static_cast<std::size_t>(m), std::vector<int>(graphs.size()));
    for (int k = 0; k < m; ++k)
        for (std::size_t gi = 0; gi < graphs.size(); ++gi)
            keys[static_cast<std::size_t>(k)][gi] = per_graph_labels[gi][static_cast<std::size_t>(k)];

    std::vector<int> order(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) order[static_cast<std::size_t>(k)] = k;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& ka = keys[static_cast<std::size_t>(a)];
        const auto& kb = keys[static_cast<std::size_t>(b)];
        return ka != kb ? ka < kb : a < b;
    });
    std::vector<int> group(static_cast<std::size_t>(m), 0);
    int gid = 0;
    for (std::size_t r = 0; r < order.size(); ++r) {
        if (r > 0 && keys[static_cast<std::size_t>(order[r])] != keys[static_cast<std::size_t>(order[r - 1])])
            ++gid;
        group[static_cast<std::size_t>(order[r])] = gid;
    }
    std::vector<int> remap(static_cast<std::size_t>(gid + 1), -1);
    int dense = 0;
    std::vector<int> dense_of(static_cast<std::size_t>(m), -1);
    for (int k = 0; k < m; ++k) {
        int& rm = remap[static_cast<std::size_t>(group[static_cast<std::size_t>(k)])];
        if (rm == -1) rm = dense++;
        dense_of[static_cast<std::size_t>(k)] = rm;
    }
    for (int k = 0; k < m; ++k)
        labels[static_cast<std::size_t>(scr_nodes[static_cast<std::size_t>(k)])] =
            dense_of[static_cast<std::size_t>(k)];
    return labels;
}

CostMatrix full_cost_matrix(const TransitionGraph& g, double budget, int parallelism) {
    if (g.node_count > 2048)
        throw GuardError("full_cost_matrix is guarded to <= 2048 nodes, got " +
                         std::to_string(g.node_count));
    CostMatrix m;
    m.n = g.node_count;
    m.budget = budget;
    m.values.assign(static_cast<std::size_t>(m.n) * static_cast<std::size_t>(m.n), kInfCost);
    const int workers = resolve_parallelism(parallelism);
    std::vector<DijkstraWorkspace> ws(static_cast<std::size_t>(workers));
    parallel_for(static_cast<std::size_t>(m.n), parallelism, [&](std::size_t s, int tid) {
        const CostTable t = chain_cost(g, static_cast<int>(s), budget, ws[static_cast<std::size_t>(tid)]);
        std::copy(t.values.begin(), t.values.end(),
                  m.values.begin() + static_cast<std::ptrdiff_t>(s * static_cast<std::size_t>(m.n)));
    });
    return m;
}

} // namespace chainrec
