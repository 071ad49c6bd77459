#include "chainrec/pipeline.hpp"

#include <chrono>
#include <cmath>

#include "chainrec/errors.hpp"
#include "chainrec/parallel.hpp"

namespace chainrec {

namespace {
double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}
} // namespace

SystemSetup make_setup(const RunConfig& config) {
    config.validate();
    SystemSetup s;
    s.system = instantiate(system_from_string(config.system));
    std::array<int, 2> res = config.resolution;
    if (s.system.space.dims == 1) res[1] = 1;
    s.grid = build_grid(s.system.space, res);
    s.flow.space = s.system.space;
    s.flow.field = s.system.field;
    s.flow.dt = config.dt;
    const double h = s.grid.mesh;
    s.eps = config.kappa * h;
    s.eps_component = config.kappa_component * h;
    s.budget = std::max(s.eps, config.budget_multiplier * h);
    s.table_budget =
        config.table_budget > 0.0 ? config.table_budget : 2.0 * s.system.space.diameter();
    return s;
}

TimeGrid make_timegrid(const RunConfig& config, double T) {
    if (config.time_step_spacing > 0.0) return TimeGrid::with_spacing(T, config.time_step_spacing);
    return TimeGrid::uniform(T, config.time_steps);
}

RecurrenceResult run_recurrence(const SystemSetup& setup, const RunConfig& config) {
    const double t0 = now_seconds();
    RecurrenceResult out;
    out.T_list = config.T_list;

    std::vector<std::unique_ptr<TransitionGraph>> graphs;
    for (double T : config.T_list) {
        const TimeGrid tg = make_timegrid(config, T);
        if (config.dt > T / 64.0)
            throw ConfigError("dt exceeds 1/64 of the smallest time-grid step");
        graphs.push_back(std::make_unique<TransitionGraph>(
            build_graph(setup.grid, setup.flow, tg, setup.budget, config.parallelism)));
    }

    std::vector<std::vector<std::uint8_t>> cr_maps;
    for (auto& g : graphs) {
        out.edge_counts.push_back(g->edge_count());
        out.isolated_counts.push_back(g->isolated_nodes);
        out.recurrence.push_back(recurrence_values(*g, setup.budget, config.parallelism));
        out.a_t.push_back(a_t_set(out.recurrence.back(), setup.eps));
        cr_maps.push_back(cr_estimate(*g, setup.eps));
    }
    out.scr = intersect_bitmaps(out.a_t);
    out.cr = intersect_bitmaps(cr_maps);

    std::vector<const TransitionGraph*> graph_ptrs;
    for (auto& g : graphs) graph_ptrs.push_back(g.get());
    out.components =
        transitive_components(graph_ptrs, out.scr, setup.eps_component, config.parallelism);
    for (int l : out.components) out.component_count = std::max(out.component_count, l + 1);

    // Resolution adequacy: if the flow moves some non-recurrent sample by
    // less than 2 eps over the first time grid, crossing against the flow is
    // cheaper than the jump threshold and CR/SCR separation may be blurred.
    {
        const TimeGrid tg = make_timegrid(config, config.T_list.front());
        double min_move = kInfCost;
        for (int i = 0; i < setup.grid.size(); ++i) {
            if (out.scr[static_cast<std::size_t>(i)]) continue;
            const Point img = setup.flow.flow(setup.grid.points[static_cast<std::size_t>(i)],
                                              tg.steps.front());
            min_move = std::min(min_move,
                                distance(setup.grid.space,
                                         setup.grid.points[static_cast<std::size_t>(i)], img));
        }
        out.resolution_warning = min_move <= 2.0 * setup.eps;
    }

    out.seconds = now_seconds() - t0;
    return out;
}

LyapunovResult run_lyapunov(const SystemSetup& setup, const RunConfig& config,
                            const RecurrenceResult& recurrence) {
    const double t0 = now_seconds();
    LyapunovResult out;

    // Shared s-grid for the averaging stages: multiples of ds covering
    // [0, s_max]; ds divides 1 so every integer T lands on the grid.
    if (std::fabs(1.0 / config.ds - std::round(1.0 / config.ds)) > 1e-9)
        throw ConfigError("ds must divide 1 so integer averaging horizons land on the s-grid");
    std::vector<double> s_grid;
    const long ns = std::lround(config.s_max / config.ds);
    for (long k = 0; k <= ns; ++k) s_grid.push_back(static_cast<double>(k) * config.ds);

    out.envelope =
        estimate_lipschitz(setup.flow, setup.grid, s_grid, config.seed, config.parallelism);
    const TrajectoryCache cache =
        flow_trajectories(setup.flow, setup.grid, s_grid, config.parallelism);

    const int n_sources = std::min(config.J_max, setup.grid.size());
    for (int n = 1; n <= config.N_max; ++n) {
        const double T = static_cast<double>(n);
        const TimeGrid tg = make_timegrid(config, T);
        const TransitionGraph graph =
            build_graph(setup.grid, setup.flow, tg, setup.budget, config.parallelism);

        std::vector<CostTable> tables(static_cast<std::size_t>(n_sources));
        const int workers = resolve_parallelism(config.parallelism);
        std::vector<DijkstraWorkspace> ws(static_cast<std::size_t>(workers));
        parallel_for(static_cast<std::size_t>(n_sources), config.parallelism,
                     [&](std::size_t j, int tid) {
                         const int src = setup.grid.dense_order[j];
                         tables[j] = chain_cost(graph, src, setup.table_budget,
                                                ws[static_cast<std::size_t>(tid)]);
                     });

        ScalarField uT = build_uT(setup.grid, tables, T);
        ScalarField tilde =
            build_uT_tilde(uT, setup.grid, cache, T, config.parallelism);
        ScalarField bar = build_uT_bar(tilde, setup.grid, cache, out.envelope, T, config.s_max,
                                       config.ds, config.parallelism);
        out.stage_uT.push_back(std::move(uT));
        out.stage_uT_bar.push_back(std::move(bar));
    }
    out.u = build_u(out.stage_uT_bar);

    out.lipschitz_u = check_lipschitz(out.u, setup.grid, 1024, config.seed);
    out.eta = config.eta_override > 0.0 ? config.eta_override
                                        : setup.grid.mesh * (1.0 + out.lipschitz_u);
    out.report = verify_lyapunov(out.u, setup.flow, setup.grid, config.verify_times,
                                 recurrence.scr, out.eta, config.probe_times,
                                 config.parallelism);
    out.compare = scr_cr_compare(recurrence.scr, recurrence.cr, out.u);
    out.spread = component_constancy(out.u, recurrence.components);

    out.seconds = now_seconds() - t0;
    return out;
}

} // namespace chainrec
