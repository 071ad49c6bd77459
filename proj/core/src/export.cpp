#include "chainrec/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "chainrec/errors.hpp"

namespace chainrec {

using nlohmann::json;

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << content;
}

namespace {

std::string trimmed_number(double v) {
    // Compact label for T values in headers: 0.5 -> "0.5", 2.0 -> "2".
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void append_coords(std::string& line, const SampleGrid& grid, int idx) {
    const Point& p = grid.points[static_cast<std::size_t>(idx)];
    for (int a = 0; a < grid.space.dims; ++a) {
        line += ',';
        line += format_double(p[a]);
    }
}

} // namespace

void write_recurrence_csv(const std::string& path, const SampleGrid& grid,
                          const RecurrenceResult& rec) {
    std::string out;
    out += "index";
    out += grid.space.dims == 1 ? ",x" : ",x,y";
    for (double T : rec.T_list) out += ",r_T" + trimmed_number(T);
    for (double T : rec.T_list) out += ",a_T" + trimmed_number(T);
    out += ",scr,cr,component\n";
    const int n = grid.size();
    for (int i = 0; i < n; ++i) {
        std::string line = std::to_string(i);
        append_coords(line, grid, i);
        for (const auto& r : rec.recurrence) {
            line += ',';
            line += format_double(r[static_cast<std::size_t>(i)]);
        }
        for (const auto& a : rec.a_t) {
            line += ',';
            line += a[static_cast<std::size_t>(i)] ? '1' : '0';
        }
        line += ',';
        line += rec.scr[static_cast<std::size_t>(i)] ? '1' : '0';
        line += ',';
        line += rec.cr[static_cast<std::size_t>(i)] ? '1' : '0';
        line += ',';
        line += std::to_string(rec.components[static_cast<std::size_t>(i)]);
        line += '\n';
        out += line;
    }
    write_text_file(path, out);
}

void write_field_csv(const std::string& path, const SampleGrid& grid, const ScalarField& field) {
    std::string out;
    out += "index";
    out += grid.space.dims == 1 ? ",x" : ",x,y";
    out += ",value\n";
    for (int i = 0; i < grid.size(); ++i) {
        std::string line = std::to_string(i);
        append_coords(line, grid, i);
        line += ',';
        line += format_double(field.values[static_cast<std::size_t>(i)]);
        line += '\n';
        out += line;
    }
    write_text_file(path, out);
}

std::vector<double> read_field_csv(const std::string& path, int expected_size) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open field CSV " + path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("field CSV is empty: " + path);
    std::vector<double> values(static_cast<std::size_t>(expected_size),
                               std::numeric_limits<double>::quiet_NaN());
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() < 3) throw ConfigError("field CSV row needs index, coords, value");
        const int idx = std::stoi(cells.front());
        if (idx < 0 || idx >= expected_size)
            throw ConfigError("field CSV index out of range: " + cells.front());
        values[static_cast<std::size_t>(idx)] = std::stod(cells.back());
        ++rows;
    }
    if (rows != expected_size)
        throw ConfigError("field CSV has " + std::to_string(rows) + " rows, expected " +
                          std::to_string(expected_size));
    for (double v : values)
        if (std::isnan(v)) throw ConfigError("field CSV is missing sample rows");
    return values;
}

namespace {

struct Rgb { int r, g, b; };

/// Fixed diverging palette (blue - white - red).
Rgb palette(double t) {
    const Rgb lo{33, 102, 172};
    const Rgb mid{247, 247, 247};
    const Rgb hi{178, 24, 43};
    auto lerp = [](int a, int b, double u) { return static_cast<int>(std::lround(a + (b - a) * u)); };
    t = std::clamp(t, 0.0, 1.0);
    if (t < 0.5) {
        const double u = t * 2.0;
        return {lerp(lo.r, mid.r, u), lerp(lo.g, mid.g, u), lerp(lo.b, mid.b, u)};
    }
    const double u = (t - 0.5) * 2.0;
    return {lerp(mid.r, hi.r, u), lerp(mid.g, hi.g, u), lerp(mid.b, hi.b, u)};
}

} // namespace

void write_svg_heatmap(const std::string& path, const SampleGrid& grid,
                       const std::vector<double>& values, const std::string& title) {
    if (grid.space.dims != 2)
        throw InputError("SVG heatmaps are only produced for 2-D grids");
    const int r0 = grid.resolution[0];
    const int r1 = grid.resolution[1];
    const int cell = std::max(3, 768 / std::max(r0, r1));
    const int width = r0 * cell;
    const int height = r1 * cell;
    const int legend_h = 42;

    double lo = kInfCost, hi = -kInfCost;
    for (double v : values) {
        if (std::isinf(v)) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo > hi) {
        lo = 0.0;
        hi = 1.0;
    }
    const double span = hi > lo ? hi - lo : 1.0;

    std::string svg;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\">\n",
                  width, height + legend_h);
    svg += buf;
    for (int i0 = 0; i0 < r0; ++i0) {
        for (int i1 = 0; i1 < r1; ++i1) {
            const int idx = i0 * r1 + i1;
            const double v = values[static_cast<std::size_t>(idx)];
            Rgb c{64, 64, 64};  // out-of-budget marker
            if (!std::isinf(v)) c = palette((v - lo) / span);
            std::snprintf(buf, sizeof buf,
                          "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" "
                          "fill=\"rgb(%d,%d,%d)\"/>\n",
                          i0 * cell, (r1 - 1 - i1) * cell, cell, cell, c.r, c.g, c.b);
            svg += buf;
        }
    }
    // Legend: palette strip plus the value range.
    const int strip_y = height + 8;
    const int strip_w = std::max(120, width / 2);
    for (int x = 0; x < strip_w; ++x) {
        const Rgb c = palette(static_cast<double>(x) / (strip_w - 1));
        std::snprintf(buf, sizeof buf,
                      "<rect x=\"%d\" y=\"%d\" width=\"1\" height=\"12\" fill=\"rgb(%d,%d,%d)\"/>\n",
                      x, strip_y, c.r, c.g, c.b);
        svg += buf;
    }
    std::snprintf(buf, sizeof buf,
                  "<text x=\"0\" y=\"%d\" font-size=\"12\" font-family=\"monospace\">%s  "
                  "range [%s, %s]</text>\n",
                  strip_y + 26, title.c_str(), format_double(lo).c_str(),
                  format_double(hi).c_str());
    svg += buf;
    svg += "</svg>\n";
    write_text_file(path, svg);
}

namespace {

json config_json(const RunConfig& config) { return json::parse(config.to_json_string()); }

json bitmap_summary(const std::vector<std::uint8_t>& bits) {
    int count = 0;
    for (auto b : bits) count += b;
    json j;
    j["count"] = count;
    j["total"] = bits.size();
    return j;
}

} // namespace

std::string recurrence_json(const RunConfig& config, const SystemSetup& setup,
                            const RecurrenceResult& rec) {
    json j;
    j["config"] = config_json(config);
    j["system"] = setup.system.name;
    j["mesh_h"] = setup.grid.mesh;
    j["thresholds"]["eps"] = setup.eps;
    j["thresholds"]["eps_component"] = setup.eps_component;
    j["thresholds"]["budget"] = setup.budget;
    j["scr"] = bitmap_summary(rec.scr);
    j["cr"] = bitmap_summary(rec.cr);
    j["component_count"] = rec.component_count;
    j["edge_counts"] = rec.edge_counts;
    j["isolated_nodes"] = rec.isolated_counts;
    j["resolution_warning"] = rec.resolution_warning;
    j["seconds"] = rec.seconds;
    json at = json::array();
    for (std::size_t k = 0; k < rec.a_t.size(); ++k) {
        json e = bitmap_summary(rec.a_t[k]);
        e["T"] = rec.T_list[k];
        at.push_back(e);
    }
    j["a_T"] = at;
    return j.dump(2) + "\n";
}

std::string verify_json(const RunConfig& config, const SystemSetup& setup,
                        const RecurrenceResult& rec, const LyapunovResult& lyap) {
    json j;
    j["config"] = config_json(config);
    j["system"] = setup.system.name;
    j["mesh_h"] = setup.grid.mesh;
    j["eta"] = lyap.eta;
    j["lipschitz_u"] = lyap.lipschitz_u;
    j["recorded_slack_u"] = lyap.u.recorded_slack;
    j["max_violation"] = lyap.report.max_violation;
    j["worst_sample"] = lyap.report.worst_sample;
    j["worst_time"] = lyap.report.worst_time;
    j["strict_margin"] = lyap.report.strict_margin;
    j["margin_sample"] = lyap.report.margin_sample;
    j["margin_sample_count"] = lyap.report.margin_sample_count;
    j["neutral_count"] = lyap.report.neutral_count;
    j["scr_count"] = lyap.report.scr_count;
    j["neutral_scr_sym_diff"] = lyap.report.neutral_scr_sym_diff;
    j["scr_cr_sym_diff"] = lyap.compare.sym_diff;
    j["component_count"] = lyap.spread.component_count;
    j["component_max_spread"] = lyap.spread.max_spread;
    j["u_value_top_gaps"] = lyap.compare.top_gaps;
    j["recurrence_seconds"] = rec.seconds;
    j["lyapunov_seconds"] = lyap.seconds;
    json stages = json::array();
    for (const auto& f : lyap.stage_uT_bar) {
        json s;
        s["T"] = f.T;
        s["provenance"] = provenance_name(f.provenance);
        s["recorded_slack"] = f.recorded_slack;
        s["j_max"] = f.j_max;
        s["s_max"] = f.s_max;
        s["ds"] = f.ds;
        s["dense_order"] = f.dense_order_note;
        stages.push_back(s);
    }
    j["stages"] = stages;
    return j.dump(2) + "\n";
}

} // namespace chainrec
