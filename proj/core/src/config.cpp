#include "chainrec/config.hpp"

#include <fstream>

#include <json.hpp>

#include "chainrec/errors.hpp"

namespace chainrec {

using nlohmann::json;

void RunConfig::validate() const {
    if (system.empty()) throw ConfigError("config: system id required");
    if (resolution[0] < 4) throw ConfigError("config: resolution must be >= 4 per axis");
    if (T_list.empty()) throw ConfigError("config: T_list must not be empty");
    double prev = 0.0;
    for (double t : T_list) {
        if (t <= prev) throw ConfigError("config: T_list must be positive and sorted ascending");
        prev = t;
    }
    if (time_steps < 2 && time_step_spacing <= 0.0)
        throw ConfigError("config: time_steps must be >= 2");
    if (kappa <= 0 || kappa_component <= 0) throw ConfigError("config: kappa values must be positive");
    if (budget_multiplier <= 0) throw ConfigError("config: budget_multiplier must be positive");
    if (J_max < 1) throw ConfigError("config: J_max must be >= 1");
    if (N_max < 4) throw ConfigError("config: N_max must be >= 4");
    if (s_max < 8.0) throw ConfigError("config: s_max must be >= 8");
    if (ds <= 0.0 || ds > 0.125) throw ConfigError("config: ds must be in (0, 1/8]");
    if (dt <= 0.0) throw ConfigError("config: dt must be positive");
    for (double t : T_list) {
        if (dt > t / 64.0)
            throw ConfigError("config: dt must be <= 1/64 of the smallest time-grid step");
    }
    if (probe_times.empty() || verify_times.empty())
        throw ConfigError("config: probe/verify time lists must not be empty");
    if (parallelism < 0) throw ConfigError("config: parallelism must be >= 0");
}

namespace {

json to_json(const RunConfig& c) {
    json j;
    j["system"] = c.system;
    j["resolution"] = {c.resolution[0], c.resolution[1]};
    j["T_list"] = c.T_list;
    j["time_steps"] = c.time_steps;
    j["time_step_spacing"] = c.time_step_spacing;
    j["kappa"] = c.kappa;
    j["kappa_component"] = c.kappa_component;
    j["eta_override"] = c.eta_override;
    j["budget_multiplier"] = c.budget_multiplier;
    j["table_budget"] = c.table_budget;
    j["J_max"] = c.J_max;
    j["N_max"] = c.N_max;
    j["s_max"] = c.s_max;
    j["ds"] = c.ds;
    j["probe_times"] = c.probe_times;
    j["verify_times"] = c.verify_times;
    j["dt"] = c.dt;
    j["output_dir"] = c.output_dir;
    j["field_csv"] = c.field_csv;
    j["parallelism"] = c.parallelism;
    j["seed"] = c.seed;
    return j;
}

template <typename T>
void maybe(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

RunConfig from_json(const json& j) {
    RunConfig c;
    maybe(j, "system", c.system);
    if (j.contains("resolution")) {
        const auto& r = j.at("resolution");
        if (r.is_array()) {
            if (r.empty() || r.size() > 2) throw ConfigError("config: resolution must have 1 or 2 entries");
            c.resolution[0] = r[0].get<int>();
            c.resolution[1] = r.size() > 1 ? r[1].get<int>() : r[0].get<int>();
        } else {
            c.resolution[0] = c.resolution[1] = r.get<int>();
        }
    }
    maybe(j, "T_list", c.T_list);
    maybe(j, "time_steps", c.time_steps);
    maybe(j, "time_step_spacing", c.time_step_spacing);
    maybe(j, "kappa", c.kappa);
    maybe(j, "kappa_component", c.kappa_component);
    maybe(j, "eta_override", c.eta_override);
    maybe(j, "budget_multiplier", c.budget_multiplier);
    maybe(j, "table_budget", c.table_budget);
    maybe(j, "J_max", c.J_max);
    maybe(j, "N_max", c.N_max);
    maybe(j, "s_max", c.s_max);
    maybe(j, "ds", c.ds);
    maybe(j, "probe_times", c.probe_times);
    maybe(j, "verify_times", c.verify_times);
    maybe(j, "dt", c.dt);
    maybe(j, "output_dir", c.output_dir);
    maybe(j, "field_csv", c.field_csv);
    maybe(j, "parallelism", c.parallelism);
    maybe(j, "seed", c.seed);
    return c;
}

} // namespace

std::string RunConfig::to_json_string(int indent) const {
    return to_json(*this).dump(indent);
}

RunConfig RunConfig::from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    try {
        return from_json(j);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: bad field: ") + e.what());
    }
}

RunConfig RunConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json_string(text);
}

} // namespace chainrec
