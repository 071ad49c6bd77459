#pragma once

#include <functional>
#include <string>
#include <vector>

#include "chainrec/flow.hpp"
#include "chainrec/space.hpp"

namespace chainrec {

enum class SystemId {
    CircleRotation,
    CircleZero,
    CircleFig1,
    CircleFig2,
    TorusExample42,
    BoxGradient,
};

/// How the strong chain transitive components of a builtin system are
/// expected to look, for test assertions.
enum class ComponentStructure { Single, AllSingletons, PerColumn, SinglePoint };

/// Analytic ground truth for a builtin system: membership predicates for the
/// strong chain recurrent and chain recurrent sets, plus the distance to the
/// nearest boundary of each set (used for don't-care bands in comparisons).
struct GroundTruth {
    std::function<bool(const Point&)> scr;
    std::function<bool(const Point&)> cr;
    std::function<double(const Point&)> scr_boundary_distance;
    std::function<double(const Point&)> cr_boundary_distance;
    ComponentStructure components = ComponentStructure::Single;
};

struct BuiltinSystem {
    SystemId id;
    std::string name;
    SpaceDescriptor space;
    VectorField field;
    GroundTruth truth;
};

BuiltinSystem instantiate(SystemId id);
SystemId system_from_string(const std::string& name);
std::string system_name(SystemId id);
std::vector<std::string> system_names();

/// Expected membership on a grid, with a don't-care band of the given width
/// around each set boundary. A negative width selects the default 2 * mesh.
struct ExpectedBitmaps {
    std::vector<std::uint8_t> scr, cr;
    std::vector<std::uint8_t> scr_dont_care, cr_dont_care;
};
ExpectedBitmaps ground_truth_bitmap(const BuiltinSystem& system, const SampleGrid& grid,
                                    double dont_care_width = -1.0);

} // namespace chainrec
