#include "chainrec/flow.hpp"

#include <algorithm>
#include <cmath>

#include "chainrec/errors.hpp"
#include "chainrec/parallel.hpp"

namespace chainrec {

namespace {

inline void rk4_step(const SpaceDescriptor& space, const VectorField& field, Point& p, double h) {
    double k1[kMaxDims], k2[kMaxDims], k3[kMaxDims], k4[kMaxDims];
    Point tmp;
    field.eval(p, k1);
    for (int a = 0; a < space.dims; ++a) tmp[a] = p[a] + 0.5 * h * k1[a];
    tmp = canonicalize(space, tmp);
    field.eval(tmp, k2);
    for (int a = 0; a < space.dims; ++a) tmp[a] = p[a] + 0.5 * h * k2[a];
    tmp = canonicalize(space, tmp);
    field.eval(tmp, k3);
    for (int a = 0; a < space.dims; ++a) tmp[a] = p[a] + h * k3[a];
    tmp = canonicalize(space, tmp);
    field.eval(tmp, k4);
    for (int a = 0; a < space.dims; ++a)
        p[a] += (h / 6.0) * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
    p = canonicalize(space, p);
}

inline void advance(const SpaceDescriptor& space, const VectorField& field, Point& p,
                    double span, double dt) {
    const double n_exact = span / dt;
    long n = static_cast<long>(std::floor(n_exact + 1e-9));
    double rem = span - static_cast<double>(n) * dt;
    if (rem < 1e-12) rem = 0.0;
    for (long i = 0; i < n; ++i) rk4_step(space, field, p, dt);
    if (rem > 0.0) rk4_step(space, field, p, rem);
}

} // namespace

Point FlowMap::flow(Point p, double t) const {
    if (!std::isfinite(t) || t < 0.0) throw InputError("flow time must be finite and >= 0");
    if (t == 0.0) return p;
    p = canonicalize(space, p);
    advance(space, field, p, t, dt);
    return p;
}

void FlowMap::flow_path(Point p, std::span<const double> times, Point* out) const {
    p = canonicalize(space, p);
    double cur = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        if (!std::isfinite(t) || t < cur) throw InputError("flow_path times must be sorted and finite");
        if (t > cur) {
            advance(space, field, p, t - cur, dt);
            cur = t;
        }
        out[k] = p;
    }
}

FlowImageTable flow_image_table(const FlowMap& map, const SampleGrid& grid,
                                std::vector<double> times, int parallelism) {
    FlowImageTable table;
    table.times = std::move(times);
    const std::size_t nt = table.times.size();
    table.images.resize(static_cast<std::size_t>(grid.size()) * nt);
    parallel_for(static_cast<std::size_t>(grid.size()), parallelism, [&](std::size_t i, int) {
        map.flow_path(grid.points[i], table.times, table.images.data() + i * nt);
    });
    return table;
}

double LipschitzEnvelope::at(double s) const {
    auto it = std::lower_bound(s_values.begin(), s_values.end(), s - 1e-12);
    if (it == s_values.end()) throw InputError("Lipschitz envelope does not cover requested s");
    return M_values[static_cast<std::size_t>(it - s_values.begin())];
}

std::vector<std::pair<int, int>> lipschitz_pairs(const SampleGrid& grid, int target_count,
                                                 std::uint64_t seed) {
    std::vector<std::pair<int, int>> pairs;
    const int n = grid.size();
    // Axis-neighbor pairs, subsampled to roughly two thirds of the target.
    std::vector<std::pair<int, int>> neighbor_pairs;
    for (int i = 0; i < n; ++i) {
        for (int j : grid.axis_neighbors(i)) {
            if (j > i) neighbor_pairs.emplace_back(i, j);
        }
    }
    const std::size_t want_nb = static_cast<std::size_t>(std::max(1, 2 * target_count / 3));
    const std::size_t stride = std::max<std::size_t>(1, neighbor_pairs.size() / want_nb);
    for (std::size_t k = 0; k < neighbor_pairs.size(); k += stride) pairs.push_back(neighbor_pairs[k]);

    // Seeded pseudorandom pairs within 4h of each other.
    std::uint64_t state = seed ^ 0x9e3779b97f4a7c15ULL;
    auto next_u64 = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    const double radius = 4.0 * grid.mesh;
    std::vector<int> ball;
    while (pairs.size() < static_cast<std::size_t>(target_count)) {
        const int i = static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
        ball.clear();
        grid.for_samples_within(grid.points[static_cast<std::size_t>(i)], radius,
                                [&](int j, double) { ball.push_back(j); });
        std::sort(ball.begin(), ball.end());
        if (ball.size() < 2) continue;
        const int j = ball[static_cast<std::size_t>(next_u64() % ball.size())];
        if (j != i) pairs.emplace_back(i, j);
    }
    return pairs;
}

LipschitzEnvelope estimate_lipschitz(const FlowMap& map, const SampleGrid& grid,
                                     std::vector<double> s_values, std::uint64_t seed,
                                     int parallelism, double safety) {
    if (s_values.empty() || s_values.front() < 0.0)
        throw InputError("s_values must start at >= 0");
    for (std::size_t k = 1; k < s_values.size(); ++k)
        if (s_values[k] < s_values[k - 1]) throw InputError("s_values must be sorted");

    const auto pairs = lipschitz_pairs(grid, 1024, seed);
    const std::size_t ns = s_values.size();

    std::vector<double> sup_per_pair(pairs.size() * ns, 0.0);
    parallel_for(pairs.size(), parallelism, [&](std::size_t k, int) {
        const auto [i, j] = pairs[k];
        const Point p = grid.points[static_cast<std::size_t>(i)];
        const Point q = grid.points[static_cast<std::size_t>(j)];
        const double d0 = distance(map.space, p, q);
        if (d0 < 1e-12) return;  // degenerate pair, skipped
        std::vector<Point> ip(ns), iq(ns);
        map.flow_path(p, s_values, ip.data());
        map.flow_path(q, s_values, iq.data());
        for (std::size_t s = 0; s < ns; ++s)
            sup_per_pair[k * ns + s] = distance(map.space, ip[s], iq[s]) / d0;
    });

    LipschitzEnvelope env;
    env.s_values = std::move(s_values);
    env.M_values.assign(ns, 1.0);
    double running = 0.0;
    for (std::size_t s = 0; s < ns; ++s) {
        double sup = 0.0;
        for (std::size_t k = 0; k < pairs.size(); ++k)
            sup = std::max(sup, sup_per_pair[k * ns + s]);
        running = std::max(running, sup);
        // Inflate only the measured expansion above 1, then floor at 1, so
        // isometries still report exactly 1.
        env.M_values[s] = std::max(1.0, 1.0 + safety * (running - 1.0));
    }
    return env;
}

} // namespace chainrec
