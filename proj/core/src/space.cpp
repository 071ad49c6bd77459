#include "chainrec/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chainrec/errors.hpp"

namespace chainrec {

SpaceDescriptor SpaceDescriptor::circle(double extent) {
    if (extent <= 0) throw InputError("circle extent must be positive");
    SpaceDescriptor s;
    s.kind = SpaceKind::Circle;
    s.dims = 1;
    s.extent = {extent, 1.0};
    s.periodic = {true, true};
    return s;
}

SpaceDescriptor SpaceDescriptor::torus2(double ex, double ey) {
    if (ex <= 0 || ey <= 0) throw InputError("torus extents must be positive");
    SpaceDescriptor s;
    s.kind = SpaceKind::Torus2;
    s.dims = 2;
    s.extent = {ex, ey};
    s.periodic = {true, true};
    return s;
}

SpaceDescriptor SpaceDescriptor::box(double extent) {
    if (extent <= 0) throw InputError("box extent must be positive");
    SpaceDescriptor s;
    s.kind = SpaceKind::Box;
    s.dims = 1;
    s.extent = {extent, 1.0};
    s.periodic = {false, false};
    return s;
}

SpaceDescriptor SpaceDescriptor::box2(double ex, double ey) {
    if (ex <= 0 || ey <= 0) throw InputError("box extents must be positive");
    SpaceDescriptor s;
    s.kind = SpaceKind::Box;
    s.dims = 2;
    s.extent = {ex, ey};
    s.periodic = {false, false};
    return s;
}

double SpaceDescriptor::diameter() const {
    double sq = 0.0;
    for (int a = 0; a < dims; ++a) {
        const double span = periodic[static_cast<std::size_t>(a)]
                                ? extent[static_cast<std::size_t>(a)] / 2.0
                                : extent[static_cast<std::size_t>(a)];
        sq += span * span;
    }
    return std::sqrt(sq);
}

std::string SpaceDescriptor::kind_name() const {
    switch (kind) {
        case SpaceKind::Circle: return "circle";
        case SpaceKind::Torus2: return "torus2";
        case SpaceKind::Box: return "box";
    }
    return "?";
}

Point canonicalize(const SpaceDescriptor& space, Point p) {
    for (int a = 0; a < space.dims; ++a) {
        const double e = space.extent[static_cast<std::size_t>(a)];
        if (space.periodic[static_cast<std::size_t>(a)]) {
            double x = std::fmod(p[a], e);
            if (x < 0) x += e;
            if (x >= e) x = 0.0;  // fmod can land exactly on e after the add
            p[a] = x;
        } else {
            p[a] = std::clamp(p[a], 0.0, e);
        }
    }
    return p;
}

double distance(const SpaceDescriptor& space, const Point& p, const Point& q) {
    double sq = 0.0;
    for (int a = 0; a < space.dims; ++a) {
        double d = std::fabs(p[a] - q[a]);
        if (space.periodic[static_cast<std::size_t>(a)]) {
            const double e = space.extent[static_cast<std::size_t>(a)];
            d = std::min(d, e - d);
        }
        sq += d * d;
    }
    return std::sqrt(sq);
}

namespace {

int bit_width_for(int n) {
    int b = 0;
    while ((1 << b) < n) ++b;
    return b;
}

int reverse_bits(int v, int bits) {
    int r = 0;
    for (int i = 0; i < bits; ++i) {
        r = (r << 1) | (v & 1);
        v >>= 1;
    }
    return r;
}

/// Per-axis bit-reversal visit order: positions of 0..res-1 in the sequence
/// obtained by bit-reversing a full power-of-two range and dropping values
/// >= res.
std::vector<int> axis_rank(int res) {
    const int bits = bit_width_for(res);
    std::vector<int> rank(static_cast<std::size_t>(res));
    int pos = 0;
    for (int k = 0; k < (1 << bits); ++k) {
        const int r = reverse_bits(k, bits);
        if (r < res) rank[static_cast<std::size_t>(r)] = pos++;
    }
    return rank;
}

} // namespace

std::vector<int> dense_enumeration(const SpaceDescriptor& space,
                                   const std::array<int, kMaxDims>& resolution) {
    const int dims = space.dims;
    std::vector<std::vector<int>> ranks;
    ranks.reserve(static_cast<std::size_t>(dims));
    for (int a = 0; a < dims; ++a) ranks.push_back(axis_rank(resolution[static_cast<std::size_t>(a)]));

    int total = 1;
    for (int a = 0; a < dims; ++a) total *= resolution[static_cast<std::size_t>(a)];

    // Priority interleaves the per-axis rank bits (axis 0 on the low bit), so
    // every prefix stays close to a uniform sub-lattice on each axis.
    std::vector<std::pair<std::uint64_t, int>> keyed(static_cast<std::size_t>(total));
    for (int idx = 0; idx < total; ++idx) {
        std::array<int, kMaxDims> m{0, 0};
        if (dims == 1) {
            m[0] = idx;
        } else {
            m[0] = idx / resolution[1];
            m[1] = idx % resolution[1];
        }
        std::uint64_t prio = 0;
        for (int a = 0; a < dims; ++a) {
            std::uint64_t r = static_cast<std::uint64_t>(ranks[static_cast<std::size_t>(a)][static_cast<std::size_t>(m[static_cast<std::size_t>(a)])]);
            for (int b = 0; r >> b; ++b) {
                if ((r >> b) & 1ULL) prio |= 1ULL << (b * dims + a);
            }
        }
        keyed[static_cast<std::size_t>(idx)] = {prio, idx};
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> order(static_cast<std::size_t>(total));
    for (std::size_t i = 0; i < keyed.size(); ++i) order[i] = keyed[i].second;
    return order;
}

SampleGrid build_grid(const SpaceDescriptor& space, const std::array<int, kMaxDims>& resolution) {
    SampleGrid g;
    g.space = space;
    g.resolution = resolution;
    int total = 1;
    double mesh_sq = 0.0;
    for (int a = 0; a < space.dims; ++a) {
        const int r = resolution[static_cast<std::size_t>(a)];
        if (r < 4) throw ConfigError("grid resolution must be >= 4 per axis");
        const double e = space.extent[static_cast<std::size_t>(a)];
        const double sp = space.periodic[static_cast<std::size_t>(a)] ? e / r : e / (r - 1);
        g.spacing[static_cast<std::size_t>(a)] = sp;
        mesh_sq += (sp / 2.0) * (sp / 2.0);
        total *= r;
    }
    g.mesh = std::sqrt(mesh_sq);

    g.points.resize(static_cast<std::size_t>(total));
    for (int idx = 0; idx < total; ++idx) {
        const auto m = [&]() -> std::array<int, kMaxDims> {
            if (space.dims == 1) return {idx, 0};
            return {idx / resolution[1], idx % resolution[1]};
        }();
        Point p;
        for (int a = 0; a < space.dims; ++a)
            p[a] = m[static_cast<std::size_t>(a)] * g.spacing[static_cast<std::size_t>(a)];
        g.points[static_cast<std::size_t>(idx)] = p;
    }
    g.dense_order = dense_enumeration(space, resolution);
    return g;
}

int SampleGrid::nearest_sample(const Point& p) const {
    // Separable metric: the global argmin picks, independently on each axis,
    // the nearest lattice coordinate (ties to the lower index, which also
    // yields the lowest flattened index).
    std::array<int, kMaxDims> m{0, 0};
    for (int a = 0; a < space.dims; ++a) {
        const int res = resolution[static_cast<std::size_t>(a)];
        const double sp = spacing[static_cast<std::size_t>(a)];
        const double x = p[a];
        int lo = static_cast<int>(std::floor(x / sp));
        int best = 0;
        double best_d = 0.0;
        bool first = true;
        for (int k = lo; k <= lo + 1; ++k) {
            int idx = k;
            if (space.periodic[static_cast<std::size_t>(a)]) {
                idx = k % res;
                if (idx < 0) idx += res;
            } else {
                idx = std::clamp(idx, 0, res - 1);
            }
            double d = std::fabs(x - k * sp);
            if (!space.periodic[static_cast<std::size_t>(a)]) d = std::fabs(x - idx * sp);
            if (first || d < best_d || (d == best_d && idx < best)) {
                best = idx;
                best_d = d;
                first = false;
            }
        }
        m[static_cast<std::size_t>(a)] = best;
    }
    return flatten(m);
}

void SampleGrid::for_samples_within(const Point& z, double radius,
                                    const std::function<void(int, double)>& fn) const {
    const double r2 = radius * radius;
    // Per-axis candidate windows. Using the unwrapped lattice coordinate k*sp
    // gives the correct wrap distance as long as the window spans less than
    // the full circle; otherwise fall back to scanning the whole axis.
    std::array<std::vector<std::pair<int, double>>, kMaxDims> cand;
    for (int a = 0; a < space.dims; ++a) {
        const int res = resolution[static_cast<std::size_t>(a)];
        const double sp = spacing[static_cast<std::size_t>(a)];
        const double e = space.extent[static_cast<std::size_t>(a)];
        auto& list = cand[static_cast<std::size_t>(a)];
        if (space.periodic[static_cast<std::size_t>(a)] && 2.0 * radius >= e - sp) {
            for (int idx = 0; idx < res; ++idx) {
                double d = std::fabs(z[a] - idx * sp);
                d = std::min(d, e - d);
                if (d * d <= r2) list.emplace_back(idx, d);
            }
        } else {
            const int lo = static_cast<int>(std::ceil((z[a] - radius) / sp - 1e-12));
            const int hi = static_cast<int>(std::floor((z[a] + radius) / sp + 1e-12));
            for (int k = lo; k <= hi; ++k) {
                int idx = k;
                if (space.periodic[static_cast<std::size_t>(a)]) {
                    idx = k % res;
                    if (idx < 0) idx += res;
                } else if (idx < 0 || idx >= res) {
                    continue;
                }
                const double d = std::fabs(z[a] - k * sp);
                if (d * d <= r2) list.emplace_back(idx, d);
            }
        }
    }
    if (space.dims == 1) {
        for (const auto& [i, d] : cand[0]) fn(i, d);
        return;
    }
    for (const auto& [i0, d0] : cand[0]) {
        const double d0sq = d0 * d0;
        for (const auto& [i1, d1] : cand[1]) {
            const double dsq = d0sq + d1 * d1;
            if (dsq <= r2) fn(i0 * resolution[1] + i1, std::sqrt(dsq));
        }
    }
}

std::vector<int> SampleGrid::axis_neighbors(int idx) const {
    std::vector<int> out;
    const auto m = unflatten(idx);
    for (int a = 0; a < space.dims; ++a) {
        const int res = resolution[static_cast<std::size_t>(a)];
        for (int step : {-1, 1}) {
            auto n = m;
            int v = m[static_cast<std::size_t>(a)] + step;
            if (space.periodic[static_cast<std::size_t>(a)]) {
                v = (v + res) % res;
            } else if (v < 0 || v >= res) {
                continue;
            }
            n[static_cast<std::size_t>(a)] = v;
            out.push_back(flatten(n));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace chainrec
