#pragma once

#include <memory>
#include <vector>

#include "chainrec/config.hpp"
#include "chainrec/lyapunov.hpp"
#include "chainrec/systems.hpp"

namespace chainrec {

/// Instantiated system with its resolved grid, flow, and thresholds.
struct SystemSetup {
    BuiltinSystem system;
    SampleGrid grid;
    FlowMap flow;
    double eps = 0.0;            // membership threshold kappa * h
    double eps_component = 0.0;  // component threshold kappa_component * h
    double budget = 0.0;         // graph budget max(eps, budget_multiplier * h)
    double table_budget = 0.0;   // Dijkstra cap for Lyapunov source tables
};
SystemSetup make_setup(const RunConfig& config);

TimeGrid make_timegrid(const RunConfig& config, double T);

struct RecurrenceResult {
    std::vector<double> T_list;
    std::vector<std::vector<double>> recurrence;       // per T, per node
    std::vector<std::vector<std::uint8_t>> a_t;        // per T
    std::vector<std::uint8_t> scr, cr;
    std::vector<int> components;
    int component_count = 0;
    std::vector<std::int64_t> edge_counts;             // per T
    std::vector<int> isolated_counts;                  // per T
    bool resolution_warning = false;                   // flow may be unresolved vs eps
    double seconds = 0.0;
};
RecurrenceResult run_recurrence(const SystemSetup& setup, const RunConfig& config);

struct LyapunovResult {
    ScalarField u;
    std::vector<ScalarField> stage_uT;       // per T = 1..N_max
    std::vector<ScalarField> stage_uT_bar;   // per T = 1..N_max
    LipschitzEnvelope envelope;
    double lipschitz_u = 0.0;
    double eta = 0.0;
    VerificationReport report;
    ScrCrComparison compare;
    ComponentSpread spread;
    double seconds = 0.0;
};
LyapunovResult run_lyapunov(const SystemSetup& setup, const RunConfig& config,
                            const RecurrenceResult& recurrence);

} // namespace chainrec
