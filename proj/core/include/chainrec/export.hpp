#pragma once

#include <string>
#include <vector>

#include "chainrec/config.hpp"
#include "chainrec/lyapunov.hpp"
#include "chainrec/pipeline.hpp"

namespace chainrec {

/// Deterministic shortest round-trip formatting ("%.17g", "inf" for +inf).
std::string format_double(double v);

/// recurrence.csv: index, coords, r_T<T> per T, a_T<T> flags, scr, cr,
/// component. Column order is documented in FORMATS.md.
void write_recurrence_csv(const std::string& path, const SampleGrid& grid,
                          const RecurrenceResult& rec);

/// u.csv (or any scalar field): index, coords, value.
void write_field_csv(const std::string& path, const SampleGrid& grid, const ScalarField& field);

/// Reads the value column of a field CSV written by write_field_csv.
std::vector<double> read_field_csv(const std::string& path, int expected_size);

/// SVG heatmap for 2-D grids: one cell per sample, fixed diverging palette,
/// legend with the value range.
void write_svg_heatmap(const std::string& path, const SampleGrid& grid,
                       const std::vector<double>& values, const std::string& title);

/// recurrence.json: set sizes, component count, thresholds, graph stats, and
/// the full resolved config.
std::string recurrence_json(const RunConfig& config, const SystemSetup& setup,
                            const RecurrenceResult& rec);

/// verify.json: Lyapunov violation, strictness margin, |N(u) sym-diff SCR|,
/// slacks, and the full resolved config.
std::string verify_json(const RunConfig& config, const SystemSetup& setup,
                        const RecurrenceResult& rec, const LyapunovResult& lyap);

void write_text_file(const std::string& path, const std::string& content);

} // namespace chainrec
