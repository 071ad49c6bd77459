#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "chainrec/space.hpp"

namespace chainrec {

/// Right-hand side of dx/dt = V(x). Called with canonical coordinates.
struct VectorField {
    std::function<void(const Point&, double* out)> eval;
};

/// Numerical flow map for a vector field: classical 4th-order one-step
/// integration with fixed step dt and a final partial step to land exactly
/// at the requested time. Results are canonicalized. Immutable after
/// construction; evaluations are pure.
struct FlowMap {
    SpaceDescriptor space;
    VectorField field;
    double dt = 1.0 / 256.0;

    Point flow(Point p, double t) const;

    /// Images of p at every time in `times` (sorted ascending, >= 0),
    /// integrating the trajectory once.
    void flow_path(Point p, std::span<const double> times, Point* out) const;
};

/// Cached flow images over a fixed time list, one row per grid sample.
struct FlowImageTable {
    std::vector<double> times;
    std::vector<Point> images;  // images[sample * times.size() + k]
    const Point& at(int sample, int k) const {
        return images[static_cast<std::size_t>(sample) * times.size() + static_cast<std::size_t>(k)];
    }
};

FlowImageTable flow_image_table(const FlowMap& map, const SampleGrid& grid,
                                std::vector<double> times, int parallelism);

/// Monotone upper envelope M_s >= 1 for the flow's Lipschitz constant on
/// [0, s]: sup over sampled pairs and intermediate times of the stretched
/// distance ratio.
struct LipschitzEnvelope {
    std::vector<double> s_values;  // increasing, starting at 0
    std::vector<double> M_values;  // nondecreasing, >= 1

    /// Envelope value at s: the entry at the smallest s_value >= s.
    double at(double s) const;
};

/// Deterministic pair set for Lipschitz estimation: axis-neighbor pairs plus
/// a seeded pseudorandom selection, all with separation <= 4 * mesh.
std::vector<std::pair<int, int>> lipschitz_pairs(const SampleGrid& grid, int target_count,
                                                 std::uint64_t seed);

/// Empirical envelope from >= 10^3 sample pairs tracked along the flow at
/// every s in `s_values`. The measured expansion above 1 is inflated by
/// `safety`; isometric flows therefore still report exactly 1.
LipschitzEnvelope estimate_lipschitz(const FlowMap& map, const SampleGrid& grid,
                                     std::vector<double> s_values, std::uint64_t seed,
                                     int parallelism, double safety = 1.25);

} // namespace chainrec
