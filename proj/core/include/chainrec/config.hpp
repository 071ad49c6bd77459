#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace chainrec {

/// Resolved run parameters. Defaults are filled on construction; JSON input
/// and CLI flags override field by field. Thresholds scale with the grid
/// mesh h: membership eps = kappa * h, component threshold =
/// kappa_component * h, graph budget = max(eps, budget_multiplier * h).
struct RunConfig {
    std::string system = "torus_example42";
    std::array<int, 2> resolution = {64, 64};

    std::vector<double> T_list = {0.5, 1.0, 2.0, 4.0};
    int time_steps = 9;               // per-T step count in [T, 2T]
    double time_step_spacing = 0.0;   // > 0: use steps T, T+spacing, ..., 2T instead

    double kappa = 4.0;
    double kappa_component = 1.0;
    double eta_override = 0.0;        // > 0 overrides the automatic eta
    double budget_multiplier = 16.0;
    double table_budget = 0.0;        // budget for Lyapunov source tables; 0 = 2 * diam

    int J_max = 48;
    int N_max = 6;
    double s_max = 12.0;
    double ds = 0.125;
    std::vector<double> probe_times = {0.5, 1.0, 2.0};
    std::vector<double> verify_times = {0.25, 0.5, 1.0, 2.0};

    double dt = 1.0 / 256.0;
    std::string output_dir = "out";
    std::string field_csv;            // input for the check-field command
    int parallelism = 0;              // 0 = hardware concurrency
    std::uint64_t seed = 24601;

    void validate() const;            // throws ConfigError

    std::string to_json_string(int indent = 2) const;
    static RunConfig from_json_string(const std::string& text);
    static RunConfig from_json_file(const std::string& path);
};

} // namespace chainrec
