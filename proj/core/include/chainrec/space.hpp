#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace chainrec {

inline constexpr int kMaxDims = 2;

enum class SpaceKind { Circle, Torus2, Box };

/// A point in a space of up to kMaxDims axes. The owning SpaceDescriptor
/// defines how many entries are meaningful.
struct Point {
    std::array<double, kMaxDims> c{0.0, 0.0};

    double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
};

inline Point make_point(double x) { return Point{{x, 0.0}}; }
inline Point make_point(double x, double y) { return Point{{x, y}}; }

/// A compact metric space: the circle R/eZ, the torus (R/e0Z)x(R/e1Z), or a
/// Euclidean box. Periodic axes carry the flat quotient metric (per-axis
/// wrap, Euclidean combination).
struct SpaceDescriptor {
    SpaceKind kind = SpaceKind::Circle;
    int dims = 1;
    std::array<double, kMaxDims> extent{1.0, 1.0};
    std::array<bool, kMaxDims> periodic{true, true};

    static SpaceDescriptor circle(double extent = 1.0);
    static SpaceDescriptor torus2(double ex = 1.0, double ey = 1.0);
    static SpaceDescriptor box(double extent);
    static SpaceDescriptor box2(double ex, double ey);

    double diameter() const;
    std::string kind_name() const;
};

/// Wraps periodic coordinates into [0, extent) and clamps box coordinates
/// into [0, extent].
Point canonicalize(const SpaceDescriptor& space, Point p);

/// Flat quotient / Euclidean metric. Inputs must be canonical.
double distance(const SpaceDescriptor& space, const Point& p, const Point& q);

/// Uniform sampling lattice over a space. `points` are row-major (last axis
/// fastest). `mesh` is the covering radius: no point of the space is farther
/// than `mesh` from its nearest sample. `dense_order` is a fixed permutation
/// of indices whose prefixes remain roughly uniform (per-axis bit-reversal,
/// bit-interleaved across axes).
struct SampleGrid {
    SpaceDescriptor space;
    std::array<int, kMaxDims> resolution{0, 0};
    std::array<double, kMaxDims> spacing{0.0, 0.0};
    std::vector<Point> points;
    double mesh = 0.0;
    std::vector<int> dense_order;

    int size() const { return static_cast<int>(points.size()); }

    int flatten(const std::array<int, kMaxDims>& m) const {
        if (space.dims == 1) return m[0];
        return m[0] * resolution[1] + m[1];
    }
    std::array<int, kMaxDims> unflatten(int idx) const {
        if (space.dims == 1) return {idx, 0};
        return {idx / resolution[1], idx % resolution[1]};
    }

    /// Index of the nearest sample; exact ties resolve to the lowest index.
    int nearest_sample(const Point& p) const;

    /// Calls fn(index, distance) for every sample within `radius` of z.
    /// Visit order is not specified; callers needing determinism sort.
    void for_samples_within(const Point& z, double radius,
                            const std::function<void(int, double)>& fn) const;

    /// Grid-adjacent samples (one step along each axis, honoring wrap).
    std::vector<int> axis_neighbors(int idx) const;
};

/// Uniform lattice with deterministic row-major ordering. Requires at least
/// 4 samples per axis.
SampleGrid build_grid(const SpaceDescriptor& space, const std::array<int, kMaxDims>& resolution);

/// The dense-order permutation used by SampleGrid (exposed for tests).
std::vector<int> dense_enumeration(const SpaceDescriptor& space,
                                   const std::array<int, kMaxDims>& resolution);

} // namespace chainrec
