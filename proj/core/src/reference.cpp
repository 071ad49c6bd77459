#include "chainrec/reference.hpp"

#include <algorithm>
#include <limits>

namespace chainrec {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::vector<double> bellman_ford_min_walk(const EdgeList& g, int source) {
    std::vector<double> dist(static_cast<std::size_t>(g.n), kInf);
    for (const auto& e : g.edges)
        if (e.u == source) dist[static_cast<std::size_t>(e.v)] = std::min(dist[static_cast<std::size_t>(e.v)], e.w);
    // n rounds cover every useful walk length with nonnegative weights.
    for (int round = 0; round < g.n; ++round) {
        bool changed = false;
        for (const auto& e : g.edges) {
            const double du = dist[static_cast<std::size_t>(e.u)];
            if (du == kInf) continue;
            const double nd = du + e.w;
            if (nd < dist[static_cast<std::size_t>(e.v)]) {
                dist[static_cast<std::size_t>(e.v)] = nd;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return dist;
}

namespace {

void enumerate_rec(const std::vector<std::vector<std::pair<int, double>>>& adj, int node,
                   double cost, int depth_left, std::vector<double>& best) {
    for (const auto& [v, w] : adj[static_cast<std::size_t>(node)]) {
        const double nd = cost + w;
        if (nd < best[static_cast<std::size_t>(v)]) best[static_cast<std::size_t>(v)] = nd;
        if (depth_left > 1) enumerate_rec(adj, v, nd, depth_left - 1, best);
    }
}

} // namespace

std::vector<double> enumerate_min_walk(const EdgeList& g, int source, int max_edges) {
    std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(g.n));
    for (const auto& e : g.edges) adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.w);
    std::vector<double> best(static_cast<std::size_t>(g.n), kInf);
    if (max_edges >= 1) enumerate_rec(adj, source, 0.0, max_edges, best);
    return best;
}

EdgeList random_instance(std::uint64_t seed, int n, double edge_prob, double self_loop_prob) {
    // xorshift with splitmix-style seeding keeps the stream platform-stable.
    std::uint64_t state = seed + 0x9e3779b97f4a7c15ULL;
    auto next = [&state]() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    auto uniform = [&next]() { return static_cast<double>(next() >> 11) * 0x1.0p-53; };

    EdgeList g;
    g.n = n;
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (u == v) {
                if (uniform() < self_loop_prob) g.edges.push_back({u, v, uniform()});
            } else if (uniform() < edge_prob) {
                g.edges.push_back({u, v, uniform()});
            }
        }
    }
    return g;
}

EdgeList to_edge_list(const TransitionGraph& g) {
    EdgeList out;
    out.n = g.node_count;
    for (int u = 0; u < g.node_count; ++u) {
        for (std::int64_t e = g.offsets[static_cast<std::size_t>(u)];
             e < g.offsets[static_cast<std::size_t>(u) + 1]; ++e) {
            out.edges.push_back({u, g.targets[static_cast<std::size_t>(e)],
                                 g.weights[static_cast<std::size_t>(e)]});
        }
    }
    return out;
}

} // namespace chainrec
