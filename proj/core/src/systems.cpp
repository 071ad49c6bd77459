#include "chainrec/systems.hpp"

#include <cmath>

#include "chainrec/errors.hpp"

namespace chainrec {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Smooth bump supported on [0, 1/4]: zero at both ends, peak 1 at 1/8.
double bump(double u) {
    if (u <= 0.0 || u >= 0.25) return 0.0;
    return 0.5 * (1.0 - std::cos(8.0 * kPi * u));
}

double fig_speed(double x, bool opposite) {
    if (x < 0.25) return bump(x);
    if (x >= 0.5 && x < 0.75) {
        const double b = bump(x - 0.5);
        return opposite ? -b : b;
    }
    return 0.0;
}

double torus_f(double x) {
    if (x >= 0.25 && x <= 0.75) return 0.0;
    return std::cos(4.0 * kPi * x) + 1.0;
}

double circle_dist(double x, double y) {
    double d = std::fabs(x - y);
    return std::min(d, 1.0 - d);
}

double dist_to_set_boundary(double x, std::initializer_list<double> boundary) {
    double best = 1.0;
    for (double b : boundary) best = std::min(best, circle_dist(x, b));
    return best;
}

bool in_fig_fixed_arcs(double x) {
    return (x >= 0.25 && x <= 0.5) || x >= 0.75 || x == 0.0;
}

} // namespace

BuiltinSystem instantiate(SystemId id) {
    BuiltinSystem s;
    s.id = id;
    s.name = system_name(id);
    switch (id) {
        case SystemId::CircleRotation: {
            s.space = SpaceDescriptor::circle();
            s.field.eval = [](const Point&, double* v) { v[0] = 1.0; };
            s.truth.scr = [](const Point&) { return true; };
            s.truth.cr = [](const Point&) { return true; };
            s.truth.scr_boundary_distance = [](const Point&) { return 1.0; };
            s.truth.cr_boundary_distance = [](const Point&) { return 1.0; };
            s.truth.components = ComponentStructure::Single;
            break;
        }
        case SystemId::CircleZero: {
            s.space = SpaceDescriptor::circle();
            s.field.eval = [](const Point&, double* v) { v[0] = 0.0; };
            s.truth.scr = [](const Point&) { return true; };
            s.truth.cr = [](const Point&) { return true; };
            s.truth.scr_boundary_distance = [](const Point&) { return 1.0; };
            s.truth.cr_boundary_distance = [](const Point&) { return 1.0; };
            s.truth.components = ComponentStructure::AllSingletons;
            break;
        }
        case SystemId::CircleFig1: {
            // Two fixed arcs [1/4,1/2] and [3/4,1]; the moving arcs flow in
            // opposite directions (both attracted to [1/4,1/2]).
            s.space = SpaceDescriptor::circle();
            s.field.eval = [](const Point& p, double* v) { v[0] = fig_speed(p[0], true); };
            s.truth.scr = [](const Point& p) { return in_fig_fixed_arcs(p[0]); };
            s.truth.cr = [](const Point& p) { return in_fig_fixed_arcs(p[0]); };
            auto bd = [](const Point& p) { return dist_to_set_boundary(p[0], {0.0, 0.25, 0.5, 0.75}); };
            s.truth.scr_boundary_distance = bd;
            s.truth.cr_boundary_distance = bd;
            s.truth.components = ComponentStructure::AllSingletons;
            break;
        }
        case SystemId::CircleFig2: {
            // Same fixed arcs, both moving arcs flow forward.
            s.space = SpaceDescriptor::circle();
            s.field.eval = [](const Point& p, double* v) { v[0] = fig_speed(p[0], false); };
            s.truth.scr = [](const Point& p) { return in_fig_fixed_arcs(p[0]); };
            s.truth.cr = [](const Point&) { return true; };
            s.truth.scr_boundary_distance = [](const Point& p) {
                return dist_to_set_boundary(p[0], {0.0, 0.25, 0.5, 0.75});
            };
            s.truth.cr_boundary_distance = [](const Point&) { return 1.0; };
            s.truth.components = ComponentStructure::AllSingletons;
            break;
        }
        case SystemId::TorusExample42: {
            s.space = SpaceDescriptor::torus2();
            s.field.eval = [](const Point& p, double* v) {
                v[0] = torus_f(p[0]);
                v[1] = 1.0;
            };
            s.truth.scr = [](const Point& p) { return p[0] >= 0.25 && p[0] <= 0.75; };
            s.truth.cr = [](const Point&) { return true; };
            s.truth.scr_boundary_distance = [](const Point& p) {
                return std::min(circle_dist(p[0], 0.25), circle_dist(p[0], 0.75));
            };
            s.truth.cr_boundary_distance = [](const Point&) { return 1.0; };
            s.truth.components = ComponentStructure::PerColumn;
            break;
        }
        case SystemId::BoxGradient: {
            s.space = SpaceDescriptor::box(1.0);
            s.field.eval = [](const Point& p, double* v) { v[0] = -(p[0] - 0.5); };
            s.truth.scr = [](const Point& p) { return p[0] == 0.5; };
            s.truth.cr = [](const Point& p) { return p[0] == 0.5; };
            auto bd = [](const Point& p) { return std::fabs(p[0] - 0.5); };
            s.truth.scr_boundary_distance = bd;
            s.truth.cr_boundary_distance = bd;
            s.truth.components = ComponentStructure::SinglePoint;
            break;
        }
    }
    return s;
}

std::string system_name(SystemId id) {
    switch (id) {
        case SystemId::CircleRotation: return "circle_rotation";
        case SystemId::CircleZero: return "circle_zero";
        case SystemId::CircleFig1: return "circle_fig1";
        case SystemId::CircleFig2: return "circle_fig2";
        case SystemId::TorusExample42: return "torus_example42";
        case SystemId::BoxGradient: return "box_gradient";
    }
    return "?";
}

SystemId system_from_string(const std::string& name) {
    for (SystemId id : {SystemId::CircleRotation, SystemId::CircleZero, SystemId::CircleFig1,
                        SystemId::CircleFig2, SystemId::TorusExample42, SystemId::BoxGradient}) {
        if (system_name(id) == name) return id;
    }
    throw ConfigError("unknown system id: " + name);
}

std::vector<std::string> system_names() {
    return {"circle_rotation", "circle_zero",      "circle_fig1",
            "circle_fig2",     "torus_example42",  "box_gradient"};
}

ExpectedBitmaps ground_truth_bitmap(const BuiltinSystem& system, const SampleGrid& grid,
                                    double dont_care_width) {
    if (dont_care_width < 0.0) dont_care_width = 2.0 * grid.mesh;
    ExpectedBitmaps out;
    const int n = grid.size();
    out.scr.resize(static_cast<std::size_t>(n));
    out.cr.resize(static_cast<std::size_t>(n));
    out.scr_dont_care.resize(static_cast<std::size_t>(n));
    out.cr_dont_care.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Point& p = grid.points[static_cast<std::size_t>(i)];
        out.scr[static_cast<std::size_t>(i)] = system.truth.scr(p) ? 1 : 0;
        out.cr[static_cast<std::size_t>(i)] = system.truth.cr(p) ? 1 : 0;
        out.scr_dont_care[static_cast<std::size_t>(i)] =
            system.truth.scr_boundary_distance(p) <= dont_care_width ? 1 : 0;
        out.cr_dont_care[static_cast<std::size_t>(i)] =
            system.truth.cr_boundary_distance(p) <= dont_care_width ? 1 : 0;
    }
    return out;
}

} // namespace chainrec
