#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chainrec/chaincost.hpp"
#include "chainrec/flow.hpp"
#include "chainrec/space.hpp"

namespace chainrec {

enum class FieldProvenance { UT, UTTilde, UTBar, U, User };

/// Scalar function sampled on a grid, with enough provenance to reproduce it
/// and the truncation/interpolation slack accumulated while building it.
struct ScalarField {
    FieldProvenance provenance = FieldProvenance::User;
    double T = 0.0;       // stage parameter where applicable
    int j_max = 0;        // source-term truncation (UT stages)
    int n_max = 0;        // term count (U stage)
    double s_max = 0.0;   // averaging horizon (UTBar stage)
    double ds = 0.0;      // quadrature step (UTBar stage)
    double recorded_slack = 0.0;
    std::string dense_order_note;  // ordering of the source enumeration
    std::vector<double> values;

    int size() const { return static_cast<int>(values.size()); }
};

std::string provenance_name(FieldProvenance p);

/// Flow trajectories of every sample over a shared s-grid, with each image
/// snapped to its nearest sample for piecewise-constant field evaluation.
struct TrajectoryCache {
    std::vector<double> s_values;
    std::vector<std::int32_t> snapped;  // snapped[sample * s_values.size() + k]
    std::int32_t at(int sample, int k) const {
        return snapped[static_cast<std::size_t>(sample) * s_values.size() + static_cast<std::size_t>(k)];
    }
};
TrajectoryCache flow_trajectories(const FlowMap& map, const SampleGrid& grid,
                                  std::vector<double> s_values, int parallelism);

/// Weighted sum of chain-cost tables from the first tables.size() sources of
/// the grid's dense order: value(p) = sum_j 2^-j * min(table_j(p), 2 diam),
/// with +inf entries clamped to 2 diam. The truncation tail bound is recorded.
ScalarField build_uT(const SampleGrid& grid, std::span<const CostTable> tables, double T);

/// Running maximum of a field along the flow over s in [0, T], evaluated by
/// nearest-sample interpolation on the trajectory cache.
ScalarField build_uT_tilde(const ScalarField& uT, const SampleGrid& grid,
                           const TrajectoryCache& cache, double T, int parallelism);

/// Exponentially discounted average of a field along the flow:
/// (1/M_T) * integral of e^-s / M_s * field(phi_s(x)) over [0, s_max],
/// using per-interval exact exponential weights so constants map to
/// c * (1 - e^-s_max) when M == 1.
ScalarField build_uT_bar(const ScalarField& uTt, const SampleGrid& grid,
                         const TrajectoryCache& cache, const LipschitzEnvelope& envelope,
                         double T, double s_max, double ds, int parallelism);

/// Geometrically weighted sum of the per-T averaged fields (T = 1..n_max).
ScalarField build_u(std::span<const ScalarField> ubars);

/// Neutral set: samples where the field fails to move by more than eta at
/// some probe time.
std::vector<std::uint8_t> neutral_set(const ScalarField& field, const FlowMap& map,
                                      const SampleGrid& grid, std::span<const double> probe_times,
                                      double eta, int parallelism);

/// Largest |delta field| / distance ratio over the standard pair set.
double check_lipschitz(const ScalarField& field, const SampleGrid& grid, int pair_budget,
                       std::uint64_t seed);

/// Largest f(q) - f(p) - K * cost_p(q) over all finite table entries.
double check_dominated(const ScalarField& field, std::span<const CostTable> tables, double K);

struct VerificationReport {
    double max_violation = 0.0;   // max of field(flow(p,t)) - field(p)
    int worst_sample = -1;
    double worst_time = 0.0;
    double strict_margin = 0.0;   // min decrease at t=1 for samples far from SCR
    int margin_sample = -1;
    int margin_sample_count = 0;
    double eta = 0.0;
    double lipschitz_ratio = 0.0;
    int neutral_count = 0;
    int scr_count = 0;
    int neutral_scr_sym_diff = 0;
};

/// Lyapunov decrease check of a field along the flow, plus the strictness
/// margin at t = 1 over samples farther than 2 * mesh from the SCR bitmap
/// and the |N(field) symmetric-difference SCR| count.
VerificationReport verify_lyapunov(const ScalarField& field, const FlowMap& map,
                                   const SampleGrid& grid, std::span<const double> t_grid,
                                   const std::vector<std::uint8_t>& scr_bitmap, double eta,
                                   std::span<const double> probe_times, int parallelism);

struct DualityReport {
    int sources_checked = 0;
    double max_endpoint_violation = 0.0;   // 1-Lipschitz endpoint property
    double max_lyapunov_violation = 0.0;   // definitive decrease along the flow
    double max_self_cost = 0.0;            // L(x,x) over checked sources
};

/// Checks that the witness f_x = cost(x, .) from each SCR source attains the
/// dual characterization: f_x is (discretely) 1-Lipschitz in its endpoint,
/// decreases along the flow for grid times, and f_x(y) - f_x(x) recovers the
/// chain cost up to f_x(x) <= eps.
DualityReport duality_check(const CostMatrix& costs, const std::vector<std::uint8_t>& scr,
                            const SampleGrid& grid, const FlowMap& map,
                            const TimeGrid& timegrid, double slack_eta);

/// Per-component max-min of field values; labels < 0 are ignored.
struct ComponentSpread {
    int component_count = 0;
    double max_spread = 0.0;
    std::vector<double> spread;  // one per component label
};
ComponentSpread component_constancy(const ScalarField& field, const std::vector<int>& labels);

struct ScrCrComparison {
    int scr_count = 0;
    int cr_count = 0;
    int sym_diff = 0;
    std::vector<double> scr_values_sorted;  // field values on SCR samples
    std::vector<double> top_gaps;           // largest consecutive gaps
};
ScrCrComparison scr_cr_compare(const std::vector<std::uint8_t>& scr,
                               const std::vector<std::uint8_t>& cr, const ScalarField& field,
                               int top_gap_count = 8);

} // namespace chainrec
