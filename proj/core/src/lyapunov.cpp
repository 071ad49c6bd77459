#include "chainrec/lyapunov.hpp"

#include <algorithm>
#include <cmath>

#include "chainrec/errors.hpp"
#include "chainrec/parallel.hpp"

namespace chainrec {

std::string provenance_name(FieldProvenance p) {
    switch (p) {
        case FieldProvenance::UT: return "u_T";
        case FieldProvenance::UTTilde: return "u_T_tilde";
        case FieldProvenance::UTBar: return "u_T_bar";
        case FieldProvenance::U: return "u";
        case FieldProvenance::User: return "user";
    }
    return "?";
}

TrajectoryCache flow_trajectories(const FlowMap& map, const SampleGrid& grid,
                                  std::vector<double> s_values, int parallelism) {
    TrajectoryCache cache;
    cache.s_values = std::move(s_values);
    const std::size_t ns = cache.s_values.size();
    cache.snapped.resize(static_cast<std::size_t>(grid.size()) * ns);
    parallel_for(static_cast<std::size_t>(grid.size()), parallelism, [&](std::size_t i, int) {
        std::vector<Point> images(ns);
        map.flow_path(grid.points[i], cache.s_values, images.data());
        for (std::size_t k = 0; k < ns; ++k)
            cache.snapped[i * ns + k] = grid.nearest_sample(images[k]);
    });
    return cache;
}

ScalarField build_uT(const SampleGrid& grid, std::span<const CostTable> tables, double T) {
    if (tables.empty()) throw ConfigError("build_uT: no cost tables supplied");
    const int n = grid.size();
    const double cap = 2.0 * grid.space.diameter();
    ScalarField f;
    f.provenance = FieldProvenance::UT;
    f.T = T;
    f.j_max = static_cast<int>(tables.size());
    f.dense_order_note = "per-axis bit-reversal, bit-interleaved";
    f.values.assign(static_cast<std::size_t>(n), 0.0);
    for (std::size_t j = 0; j < tables.size(); ++j) {
        if (static_cast<int>(tables[j].values.size()) != n)
            throw ConfigError("build_uT: table size does not match grid");
        const double weight = std::ldexp(1.0, -static_cast<int>(j) - 1);  // 2^-(j+1), j from 1
        for (int p = 0; p < n; ++p) {
            const double v = std::min(tables[j].values[static_cast<std::size_t>(p)], cap);
            f.values[static_cast<std::size_t>(p)] += weight * v;
        }
    }
    f.recorded_slack = std::ldexp(1.0, -f.j_max) * cap;  // tail of the source sum
    return f;
}

ScalarField build_uT_tilde(const ScalarField& uT, const SampleGrid& grid,
                           const TrajectoryCache& cache, double T, int parallelism) {
    const std::size_t ns = cache.s_values.size();
    std::size_t k_end = 0;
    while (k_end < ns && cache.s_values[k_end] <= T + 1e-12) ++k_end;
    if (k_end < 9) throw ConfigError("build_uT_tilde: need >= 9 s-values in [0, T]");
    if (cache.s_values.front() != 0.0 || std::fabs(cache.s_values[k_end - 1] - T) > 1e-12)
        throw ConfigError("build_uT_tilde: s-grid must include 0 and T");

    ScalarField f;
    f.provenance = FieldProvenance::UTTilde;
    f.T = T;
    f.j_max = uT.j_max;
    f.dense_order_note = uT.dense_order_note;
    f.values.assign(uT.values.size(), 0.0);
    parallel_for(uT.values.size(), parallelism, [&](std::size_t p, int) {
        double m = uT.values[p];  // s = 0 lands on the sample itself
        for (std::size_t k = 1; k < k_end; ++k)
            m = std::max(m, uT.values[static_cast<std::size_t>(cache.at(static_cast<int>(p), static_cast<int>(k)))]);
        f.values[p] = m;
    });
    // Nearest-sample evaluation off the orbit costs up to mesh * Lip(u_T).
    f.recorded_slack = uT.recorded_slack + grid.mesh * 2.0;
    return f;
}

ScalarField build_uT_bar(const ScalarField& uTt, const SampleGrid& grid,
                         const TrajectoryCache& cache, const LipschitzEnvelope& envelope,
                         double T, double s_max, double ds, int parallelism) {
    if (s_max < 8.0) throw ConfigError("build_uT_bar: s_max must be >= 8");
    if (ds > 0.125 + 1e-12) throw ConfigError("build_uT_bar: ds must be <= 1/8");
    const std::size_t ns = cache.s_values.size();
    if (cache.s_values.empty() || cache.s_values.back() < s_max - 1e-12)
        throw ConfigError("build_uT_bar: trajectory cache does not cover s_max");
    if (envelope.s_values.empty() || envelope.s_values.back() < s_max - 1e-12)
        throw ConfigError("build_uT_bar: Lipschitz envelope does not cover s_max");

    std::size_t k_end = 0;
    while (k_end < ns && cache.s_values[k_end] <= s_max + 1e-12) ++k_end;

    // Per-node quadrature weights: integrate e^-s exactly against the linear
    // interpolant of g(s)/M(s), so sum(weights * 1/M) <= 1 - e^-s_max with
    // equality when M == 1.
    std::vector<double> node_weight(k_end, 0.0);
    for (std::size_t k = 0; k + 1 < k_end; ++k) {
        const double a = cache.s_values[k];
        const double b = cache.s_values[k + 1];
        const double ea = std::exp(-a);
        const double eb = std::exp(-b);
        const double len = b - a;
        if (len <= 0.0) throw ConfigError("build_uT_bar: s-grid must be strictly increasing");
        const double left = ((len - 1.0) * ea + eb) / len;   // integral of e^-s (b-s)/len
        const double right = (ea - eb) - left;               // integral of e^-s (s-a)/len
        node_weight[k] += left;
        node_weight[k + 1] += right;
    }
    std::vector<double> inv_m(k_end);
    for (std::size_t k = 0; k < k_end; ++k) inv_m[k] = 1.0 / envelope.at(cache.s_values[k]);
    const double m_T = envelope.at(T);

    ScalarField f;
    f.provenance = FieldProvenance::UTBar;
    f.T = T;
    f.j_max = uTt.j_max;
    f.s_max = s_max;
    f.ds = ds;
    f.dense_order_note = uTt.dense_order_note;
    f.values.assign(uTt.values.size(), 0.0);
    parallel_for(uTt.values.size(), parallelism, [&](std::size_t p, int) {
        double acc = 0.0;
        for (std::size_t k = 0; k < k_end; ++k) {
            const double g = uTt.values[static_cast<std::size_t>(cache.at(static_cast<int>(p), static_cast<int>(k)))];
            acc += node_weight[k] * inv_m[k] * g;
        }
        f.values[p] = acc / m_T;
    });

    double max_abs = 0.0;
    for (double v : uTt.values) max_abs = std::max(max_abs, std::fabs(v));
    f.recorded_slack = uTt.recorded_slack + std::exp(-s_max) * max_abs + grid.mesh * 2.0;
    return f;
}

ScalarField build_u(std::span<const ScalarField> ubars) {
    if (ubars.size() < 4) throw ConfigError("build_u: need N_max >= 4 averaged stages");
    ScalarField f;
    f.provenance = FieldProvenance::U;
    f.n_max = static_cast<int>(ubars.size());
    f.values.assign(ubars.front().values.size(), 0.0);
    double max_abs = 0.0;
    double slack = 0.0;
    for (std::size_t n = 0; n < ubars.size(); ++n) {
        if (ubars[n].values.size() != f.values.size())
            throw ConfigError("build_u: mismatched grids across stages");
        const double weight = std::ldexp(1.0, -static_cast<int>(n) - 1);  // 2^-(n+1), n from 1
        for (std::size_t p = 0; p < f.values.size(); ++p)
            f.values[p] += weight * ubars[n].values[p];
        for (double v : ubars[n].values) max_abs = std::max(max_abs, std::fabs(v));
        slack = std::max(slack, ubars[n].recorded_slack);
    }
    f.recorded_slack = slack + std::ldexp(1.0, -f.n_max) * max_abs;
    return f;
}

std::vector<std::uint8_t> neutral_set(const ScalarField& field, const FlowMap& map,
                                      const SampleGrid& grid, std::span<const double> probe_times,
                                      double eta, int parallelism) {
    std::vector<std::uint8_t> out(field.values.size(), 0);
    std::vector<double> times(probe_times.begin(), probe_times.end());
    std::sort(times.begin(), times.end());
    parallel_for(field.values.size(), parallelism, [&](std::size_t p, int) {
        std::vector<Point> images(times.size());
        map.flow_path(grid.points[p], times, images.data());
        for (std::size_t k = 0; k < times.size(); ++k) {
            const int q = grid.nearest_sample(images[k]);
            if (std::fabs(field.values[static_cast<std::size_t>(q)] - field.values[p]) <= eta) {
                out[p] = 1;
                return;
            }
        }
    });
    return out;
}

double check_lipschitz(const ScalarField& field, const SampleGrid& grid, int pair_budget,
                       std::uint64_t seed) {
    const auto pairs = lipschitz_pairs(grid, pair_budget, seed);
    double ratio = 0.0;
    for (const auto& [i, j] : pairs) {
        const double d = distance(grid.space, grid.points[static_cast<std::size_t>(i)],
                                  grid.points[static_cast<std::size_t>(j)]);
        if (d < 1e-12) continue;
        ratio = std::max(ratio, std::fabs(field.values[static_cast<std::size_t>(i)] -
                                          field.values[static_cast<std::size_t>(j)]) / d);
    }
    return ratio;
}

double check_dominated(const ScalarField& field, std::span<const CostTable> tables, double K) {
    double worst = -kInfCost;
    for (const auto& t : tables) {
        const double fp = field.values[static_cast<std::size_t>(t.source)];
        for (std::size_t q = 0; q < t.values.size(); ++q) {
            const double c = t.values[q];
            if (c == kInfCost) continue;
            worst = std::max(worst, field.values[q] - fp - K * c);
        }
    }
    return worst;
}

VerificationReport verify_lyapunov(const ScalarField& field, const FlowMap& map,
                                   const SampleGrid& grid, std::span<const double> t_grid,
                                   const std::vector<std::uint8_t>& scr_bitmap, double eta,
                                   std::span<const double> probe_times, int parallelism) {
    const int n = grid.size();
    VerificationReport rep;
    rep.eta = eta;

    std::vector<double> times(t_grid.begin(), t_grid.end());
    std::sort(times.begin(), times.end());
    const auto it_one = std::find_if(times.begin(), times.end(),
                                     [](double t) { return std::fabs(t - 1.0) < 1e-12; });
    if (it_one == times.end()) throw ConfigError("verify_lyapunov: t grid must contain t = 1");
    const std::size_t one_idx = static_cast<std::size_t>(it_one - times.begin());

    // Distance from each sample to the SCR bitmap.
    std::vector<int> scr_nodes;
    for (int i = 0; i < n; ++i)
        if (scr_bitmap[static_cast<std::size_t>(i)]) scr_nodes.push_back(i);
    rep.scr_count = static_cast<int>(scr_nodes.size());
    std::vector<double> scr_dist(static_cast<std::size_t>(n), kInfCost);
    parallel_for(static_cast<std::size_t>(n), parallelism, [&](std::size_t i, int) {
        double best = kInfCost;
        for (int s : scr_nodes)
            best = std::min(best, distance(grid.space, grid.points[i],
                                           grid.points[static_cast<std::size_t>(s)]));
        scr_dist[i] = best;
    });

    std::vector<double> worst_by_sample(static_cast<std::size_t>(n), -kInfCost);
    std::vector<double> worst_time_by_sample(static_cast<std::size_t>(n), 0.0);
    std::vector<double> decrease_at_one(static_cast<std::size_t>(n), 0.0);
    parallel_for(static_cast<std::size_t>(n), parallelism, [&](std::size_t p, int) {
        std::vector<Point> images(times.size());
        map.flow_path(grid.points[p], times, images.data());
        double worst = -kInfCost;
        double worst_t = 0.0;
        for (std::size_t k = 0; k < times.size(); ++k) {
            const int q = grid.nearest_sample(images[k]);
            const double delta = field.values[static_cast<std::size_t>(q)] - field.values[p];
            if (delta > worst) {
                worst = delta;
                worst_t = times[k];
            }
            if (k == one_idx) decrease_at_one[p] = -delta;
        }
        worst_by_sample[p] = worst;
        worst_time_by_sample[p] = worst_t;
    });

    rep.max_violation = -kInfCost;
    rep.strict_margin = kInfCost;
    for (int p = 0; p < n; ++p) {
        if (worst_by_sample[static_cast<std::size_t>(p)] > rep.max_violation) {
            rep.max_violation = worst_by_sample[static_cast<std::size_t>(p)];
            rep.worst_sample = p;
            rep.worst_time = worst_time_by_sample[static_cast<std::size_t>(p)];
        }
        if (scr_dist[static_cast<std::size_t>(p)] > 2.0 * grid.mesh) {
            ++rep.margin_sample_count;
            if (decrease_at_one[static_cast<std::size_t>(p)] < rep.strict_margin) {
                rep.strict_margin = decrease_at_one[static_cast<std::size_t>(p)];
                rep.margin_sample = p;
            }
        }
    }
    if (rep.margin_sample_count == 0) rep.strict_margin = 0.0;

    const auto neutral = neutral_set(field, map, grid, probe_times, eta, parallelism);
    for (int i = 0; i < n; ++i) {
        rep.neutral_count += neutral[static_cast<std::size_t>(i)];
        if (neutral[static_cast<std::size_t>(i)] != scr_bitmap[static_cast<std::size_t>(i)])
            ++rep.neutral_scr_sym_diff;
    }
    return rep;
}

DualityReport duality_check(const CostMatrix& costs, const std::vector<std::uint8_t>& scr,
                            const SampleGrid& grid, const FlowMap& map,
                            const TimeGrid& timegrid, double slack_eta) {
    DualityReport rep;
    const int n = costs.n;

    // Flow images of every node over the time grid, snapped.
    std::vector<std::int32_t> snapped(static_cast<std::size_t>(n) * timegrid.steps.size());
    for (int q = 0; q < n; ++q) {
        std::vector<Point> images(timegrid.steps.size());
        map.flow_path(grid.points[static_cast<std::size_t>(q)], timegrid.steps, images.data());
        for (std::size_t k = 0; k < timegrid.steps.size(); ++k)
            snapped[static_cast<std::size_t>(q) * timegrid.steps.size() + k] =
                grid.nearest_sample(images[k]);
    }

    for (int x = 0; x < n; ++x) {
        if (!scr[static_cast<std::size_t>(x)]) continue;  // stated only for SCR points
        ++rep.sources_checked;
        rep.max_self_cost = std::max(rep.max_self_cost, costs.at(x, x));
        for (int y = 0; y < n; ++y) {
            const double fy = costs.at(x, y);
            if (fy == kInfCost) continue;
            for (int z : grid.axis_neighbors(y)) {
                const double fz = costs.at(x, z);
                if (fz == kInfCost) continue;
                const double d = distance(grid.space, grid.points[static_cast<std::size_t>(y)],
                                          grid.points[static_cast<std::size_t>(z)]);
                rep.max_endpoint_violation =
                    std::max(rep.max_endpoint_violation, std::fabs(fy - fz) - d);
            }
            for (std::size_t k = 0; k < timegrid.steps.size(); ++k) {
                const int img = snapped[static_cast<std::size_t>(y) * timegrid.steps.size() + k];
                const double fimg = costs.at(x, img);
                if (fimg == kInfCost) continue;
                rep.max_lyapunov_violation =
                    std::max(rep.max_lyapunov_violation, fimg - fy - slack_eta);
            }
        }
    }
    return rep;
}

ComponentSpread component_constancy(const ScalarField& field, const std::vector<int>& labels) {
    ComponentSpread out;
    int max_label = -1;
    for (int l : labels) max_label = std::max(max_label, l);
    out.component_count = max_label + 1;
    if (max_label < 0) return out;
    std::vector<double> lo(static_cast<std::size_t>(max_label + 1), kInfCost);
    std::vector<double> hi(static_cast<std::size_t>(max_label + 1), -kInfCost);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int l = labels[i];
        if (l < 0) continue;
        lo[static_cast<std::size_t>(l)] = std::min(lo[static_cast<std::size_t>(l)], field.values[i]);
        hi[static_cast<std::size_t>(l)] = std::max(hi[static_cast<std::size_t>(l)], field.values[i]);
    }
    out.spread.resize(static_cast<std::size_t>(max_label + 1), 0.0);
    for (int l = 0; l <= max_label; ++l) {
        const double s = hi[static_cast<std::size_t>(l)] - lo[static_cast<std::size_t>(l)];
        out.spread[static_cast<std::size_t>(l)] = s;
        out.max_spread = std::max(out.max_spread, s);
    }
    return out;
}

ScrCrComparison scr_cr_compare(const std::vector<std::uint8_t>& scr,
                               const std::vector<std::uint8_t>& cr, const ScalarField& field,
                               int top_gap_count) {
    ScrCrComparison out;
    for (std::size_t i = 0; i < scr.size(); ++i) {
        if (scr[i]) {
            ++out.scr_count;
            out.scr_values_sorted.push_back(field.values[i]);
        }
        if (cr[i]) ++out.cr_count;
        if (scr[i] != cr[i]) ++out.sym_diff;
    }
    std::sort(out.scr_values_sorted.begin(), out.scr_values_sorted.end());
    std::vector<double> gaps;
    for (std::size_t i = 1; i < out.scr_values_sorted.size(); ++i)
        gaps.push_back(out.scr_values_sorted[i] - out.scr_values_sorted[i - 1]);
    std::sort(gaps.rbegin(), gaps.rend());
    if (static_cast<int>(gaps.size()) > top_gap_count) gaps.resize(static_cast<std::size_t>(top_gap_count));
    out.top_gaps = std::move(gaps);
    return out;
}

} // namespace chainrec
