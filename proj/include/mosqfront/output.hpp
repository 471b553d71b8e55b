#pragma once

// Deterministic file emission: NDJSON/CSV data files, JSON reports, and SVG
// plots (front curves, space-time heatmap of M, R0F trace).  Identical inputs
// produce byte-identical files; nothing time- or host-dependent is embedded.

#include <string>
#include <vector>

#include "mosqfront/classify.hpp"
#include "mosqfront/config.hpp"
#include "mosqfront/state.hpp"
#include "mosqfront/steady.hpp"
#include "mosqfront/threshold.hpp"

namespace mosqfront {

// Shortest exact decimal for doubles in hand-rolled text formats (17 sig. digits).
std::string format_g17(double v);

// FNV-1a 64-bit hash of the canonical serialized config, as 16 lowercase hex
// digits.  Used to build deterministic, timestamp-free output file names.
std::string run_hash(const RunConfig& cfg);

// "<directory>/<task>_<hash16>" — the common stem all emitted files share.
std::string output_stem(const RunConfig& cfg);

// Creates parent directories as needed; throws IoError on any write failure.
void write_text_file(const std::string& path, const std::string& content);

// --- data files -------------------------------------------------------------
// One JSON object per line: {"t":..,"g":..,"h":..,"sup_M":..,"sup_A":..}
std::string trajectory_ndjson(const Trajectory& traj);
// Columns t,y,x,M,A over every snapshot of the trajectory.
std::string fields_csv(const Trajectory& traj);
// Columns t,R0F.
std::string r0f_csv(const std::vector<R0FPoint>& trace);
// Columns x,M_star,A_star.
std::string stationary_csv(const StationarySolution& sol);

// --- JSON reports -------------------------------------------------------------
std::string threshold_json(const ThresholdReport& report);
std::string global_stationary_json(const GlobalStationary& result);
std::string outcome_json(const Outcome& outcome);
std::string mu_star_json(const MuStarResult& result);
std::string comparison_json(const ComparisonReport& report);

// --- human-readable summaries -------------------------------------------------
std::string mu_star_summary(const MuStarResult& result);
std::string comparison_summary(const ComparisonReport& report);

// --- SVG plots ----------------------------------------------------------------
// Each plot embeds a <metadata> element holding a JSON object describing the
// plotted ranges so tools can read the plot back without parsing geometry.
std::string front_curves_svg(const Trajectory& traj);
// Space-time heatmap of M, at most 128x128 cells; x axis spans [min g, max h].
std::string heatmap_svg(const Trajectory& traj);
std::string r0f_trace_svg(const std::vector<R0FPoint>& trace);

// Reads back the JSON object embedded in an SVG's <metadata> element.
std::string svg_metadata(const std::string& svg_text);

} // namespace mosqfront
