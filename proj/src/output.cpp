#include "mosqfront/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "mosqfront/errors.hpp"

namespace mosqfront {

using ordered_json = nlohmann::ordered_json;

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string run_hash(const RunConfig& cfg) {
    const std::string text = serialize_config(cfg);
    std::uint64_t h = 1469598103934665603ull; // FNV-1a 64
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string output_stem(const RunConfig& cfg) {
    return cfg.output.directory + "/" + to_string(cfg.task.kind) + "_" + run_hash(cfg);
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    std::error_code ec;
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

// --- data files -------------------------------------------------------------

std::string trajectory_ndjson(const Trajectory& traj) {
    std::string out;
    for (const auto& s : traj.snapshots) {
        out += "{\"t\":" + format_g17(s.t) + ",\"g\":" + format_g17(s.g) +
               ",\"h\":" + format_g17(s.h) + ",\"sup_M\":" + format_g17(s.sup_M()) +
               ",\"sup_A\":" + format_g17(s.sup_A()) + "}\n";
    }
    return out;
}

std::string fields_csv(const Trajectory& traj) {
    std::string out = "t,y,x,M,A\n";
    for (const auto& s : traj.snapshots)
        for (int i = 0; i <= s.N(); ++i)
            out += format_g17(s.t) + "," + format_g17(s.y_node(i)) + "," +
                   format_g17(s.x_node(i)) + "," + format_g17(s.M[i]) + "," +
                   format_g17(s.A[i]) + "\n";
    return out;
}

std::string r0f_csv(const std::vector<R0FPoint>& trace) {
    std::string out = "t,R0F\n";
    for (const auto& p : trace) out += format_g17(p.t) + "," + format_g17(p.R0) + "\n";
    return out;
}

std::string stationary_csv(const StationarySolution& sol) {
    std::string out = "x,M_star,A_star\n";
    for (std::size_t i = 0; i < sol.x.size(); ++i)
        out += format_g17(sol.x[i]) + "," + format_g17(sol.M_star[i]) + "," +
               format_g17(sol.A_star[i]) + "\n";
    return out;
}

// --- JSON reports -------------------------------------------------------------

namespace {

ordered_json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

ordered_json outcome_object(const Outcome& o) {
    ordered_json j;
    j["label"] = to_string(o.label);
    j["rule"] = o.rule;
    j["stop_time"] = o.stop_time;
    j["final_gap"] = o.final_gap;
    j["final_sup_M"] = o.final_sup_M;
    j["final_sup_A"] = o.final_sup_A;
    j["final_R0F"] = o.final_R0F;
    j["gap_growth"] = finite_or_null(o.gap_growth);
    return j;
}

} // namespace

std::string threshold_json(const ThresholdReport& report) {
    ordered_json j;
    j["p"] = report.p;
    j["q"] = report.q;
    j["resolution"] = report.resolution;
    j["R0"] = report.R0;
    j["lambda0"] = report.lambda0 ? ordered_json(*report.lambda0) : ordered_json(nullptr);
    j["eigen_M"] = report.eigen_M;
    j["eigen_A"] = report.eigen_A;
    return j.dump(2) + "\n";
}

std::string global_stationary_json(const GlobalStationary& result) {
    ordered_json j;
    j["window"] = result.window;
    j["converged"] = result.converged;
    j["L"] = result.solution.L;
    j["residual"] = result.solution.residual;
    j["sandwich_gap"] = result.solution.sandwich_gap;
    j["sweeps"] = result.solution.sweeps;
    j["table"] = ordered_json::array();
    for (const auto& row : result.table) {
        ordered_json r;
        r["L"] = row.L;
        r["sup_diff"] = finite_or_null(row.sup_diff);
        r["residual"] = row.residual;
        j["table"].push_back(r);
    }
    return j.dump(2) + "\n";
}

std::string outcome_json(const Outcome& outcome) {
    ordered_json j = outcome_object(outcome);
    j["r0f"] = ordered_json::array();
    for (const auto& p : outcome.r0f) j["r0f"].push_back({{"t", p.t}, {"R0F", p.R0}});
    return j.dump(2) + "\n";
}

std::string mu_star_json(const MuStarResult& result) {
    ordered_json j;
    j["shortcut"] = result.shortcut;
    j["r0_initial"] = result.r0_initial;
    j["tol"] = result.tol;
    j["mu_lo"] = result.mu_lo;
    j["mu_hi"] = result.mu_hi;
    j["outcome_lo"] = outcome_object(result.outcome_lo);
    j["outcome_hi"] = outcome_object(result.outcome_hi);
    j["transcript"] = ordered_json::array();
    for (const auto& probe : result.transcript) {
        ordered_json p;
        p["mu"] = probe.mu;
        p["label"] = to_string(probe.label);
        p["horizon_used"] = probe.horizon_used;
        p["stop_time"] = probe.stop_time;
        j["transcript"].push_back(p);
    }
    return j.dump(2) + "\n";
}

std::string comparison_json(const ComparisonReport& report) {
    ordered_json j;
    j["pass"] = report.pass;
    j["pairs"] = ordered_json::array();
    for (const auto& pair : report.pairs) {
        ordered_json p;
        p["name"] = pair.name;
        p["front_violation_cells"] = pair.front_violation_cells;
        p["density_violation"] = pair.density_violation;
        p["pass"] = pair.pass;
        j["pairs"].push_back(p);
    }
    return j.dump(2) + "\n";
}

// --- text summaries -----------------------------------------------------------

std::string mu_star_summary(const MuStarResult& result) {
    std::ostringstream out;
    out << "expansion-capability threshold search\n";
    char buf[160];
    std::snprintf(buf, sizeof buf, "  initial-habitat R0 = %.6g\n", result.r0_initial);
    out << buf;
    if (result.shortcut) {
        out << "  R0 >= 1 on the initial habitat: mu* = 0, no simulation needed\n";
        return out.str();
    }
    std::snprintf(buf, sizeof buf, "  mu* in [%.6g, %.6g]  (relative width %.3g, tol %.3g)\n",
                  result.mu_lo, result.mu_hi, (result.mu_hi - result.mu_lo) / result.mu_hi,
                  result.tol);
    out << buf << "  probes:\n";
    for (const auto& p : result.transcript) {
        std::snprintf(buf, sizeof buf, "    mu = %-12.6g -> %-10s (stop t = %.6g, horizon %.6g)\n",
                      p.mu, to_string(p.label), p.stop_time, p.horizon_used);
        out << buf;
    }
    return out.str();
}

std::string comparison_summary(const ComparisonReport& report) {
    std::ostringstream out;
    out << "comparison-principle suite: " << (report.pass ? "PASS" : "FAIL") << "\n";
    char buf[160];
    for (const auto& p : report.pairs) {
        std::snprintf(buf, sizeof buf,
                      "  %-24s %-5s front violation %.3g cells, density violation %.3g\n",
                      p.name.c_str(), p.pass ? "PASS" : "FAIL", p.front_violation_cells,
                      p.density_violation);
        out << buf;
    }
    return out.str();
}

// --- SVG plots ----------------------------------------------------------------

namespace {

constexpr int kPlotW = 640, kPlotH = 400;
constexpr int kMargin = 48;

std::string f2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string svg_open(const std::string& metadata_json) {
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kPlotW) +
         "\" height=\"" + std::to_string(kPlotH) + "\" viewBox=\"0 0 " +
         std::to_string(kPlotW) + " " + std::to_string(kPlotH) + "\">\n";
    s += "<metadata>" + metadata_json + "</metadata>\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    return s;
}

struct Axes {
    double x_lo, x_hi, y_lo, y_hi;
    double px(double x) const {
        const double span = x_hi > x_lo ? x_hi - x_lo : 1.0;
        return kMargin + (x - x_lo) / span * (kPlotW - 2 * kMargin);
    }
    double py(double y) const {
        const double span = y_hi > y_lo ? y_hi - y_lo : 1.0;
        return kPlotH - kMargin - (y - y_lo) / span * (kPlotH - 2 * kMargin);
    }
};

std::string polyline(const Axes& ax, const std::vector<double>& xs,
                     const std::vector<double>& ys, const char* color) {
    std::string pts;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!pts.empty()) pts += " ";
        pts += f2(ax.px(xs[i])) + "," + f2(ax.py(ys[i]));
    }
    return "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
}

std::string axes_frame(const Axes& ax, const std::string& x_label,
                       const std::string& y_label) {
    std::string s;
    s += "<rect x=\"" + f2(kMargin) + "\" y=\"" + f2(kMargin) + "\" width=\"" +
         f2(kPlotW - 2 * kMargin) + "\" height=\"" + f2(kPlotH - 2 * kMargin) +
         "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"12\" "
                  "text-anchor=\"middle\">%s</text>\n",
                  kPlotW / 2, kPlotH - 12, x_label.c_str());
    s += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"14\" y=\"%d\" font-family=\"sans-serif\" font-size=\"12\" "
                  "text-anchor=\"middle\" transform=\"rotate(-90 14 %d)\">%s</text>\n",
                  kPlotH / 2, kPlotH / 2, y_label.c_str());
    s += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"10\">"
                  "%s</text>\n<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" "
                  "font-size=\"10\" text-anchor=\"end\">%s</text>\n",
                  kMargin, kPlotH - kMargin + 14, format_g17(ax.x_lo).substr(0, 8).c_str(),
                  kPlotW - kMargin, kPlotH - kMargin + 14,
                  format_g17(ax.x_hi).substr(0, 8).c_str());
    s += buf;
    return s;
}

} // namespace

std::string front_curves_svg(const Trajectory& traj) {
    std::vector<double> ts, gs, hs;
    for (const auto& s : traj.snapshots) {
        ts.push_back(s.t);
        gs.push_back(s.g);
        hs.push_back(s.h);
    }
    ordered_json meta;
    meta["plot"] = "front-curves";
    meta["points"] = ts.size();
    if (!ts.empty()) {
        meta["t_min"] = ts.front();
        meta["t_max"] = ts.back();
        meta["g_min"] = *std::min_element(gs.begin(), gs.end());
        meta["h_max"] = *std::max_element(hs.begin(), hs.end());
    }
    std::string svg = svg_open(meta.dump());
    if (!ts.empty()) {
        Axes ax{ts.front(), ts.back(), *std::min_element(gs.begin(), gs.end()),
                *std::max_element(hs.begin(), hs.end())};
        svg += axes_frame(ax, "t", "front position");
        if (ts.size() == 1) {
            svg += "<circle cx=\"" + f2(ax.px(ts[0])) + "\" cy=\"" + f2(ax.py(hs[0])) +
                   "\" r=\"3\" fill=\"#c0392b\"/>\n";
            svg += "<circle cx=\"" + f2(ax.px(ts[0])) + "\" cy=\"" + f2(ax.py(gs[0])) +
                   "\" r=\"3\" fill=\"#2471a3\"/>\n";
        } else {
            svg += polyline(ax, ts, hs, "#c0392b");
            svg += polyline(ax, ts, gs, "#2471a3");
        }
    }
    svg += "</svg>\n";
    return svg;
}

std::string heatmap_svg(const Trajectory& traj) {
    const std::size_t S = traj.snapshots.size();
    ordered_json meta;
    meta["plot"] = "M-heatmap";
    if (S == 0) {
        meta["rows"] = 0;
        meta["cols"] = 0;
        return svg_open(meta.dump()) + "</svg>\n";
    }
    double x_min = traj.snapshots.front().g, x_max = traj.snapshots.front().h;
    double sup_m = 0.0;
    for (const auto& s : traj.snapshots) {
        x_min = std::min(x_min, s.g);
        x_max = std::max(x_max, s.h);
        sup_m = std::max(sup_m, s.sup_M());
    }
    const int rows = static_cast<int>(std::min<std::size_t>(128, S));
    const int cols = std::min(128, traj.snapshots.front().N() + 1);
    meta["x_min"] = x_min;
    meta["x_max"] = x_max;
    meta["t_min"] = traj.snapshots.front().t;
    meta["t_max"] = traj.snapshots.back().t;
    meta["rows"] = rows;
    meta["cols"] = cols;
    meta["sup_M"] = sup_m;

    std::string svg = svg_open(meta.dump());
    const double cw = double(kPlotW - 2 * kMargin) / cols;
    const double ch = double(kPlotH - 2 * kMargin) / rows;
    const double scale = sup_m > 0.0 ? 1.0 / sup_m : 0.0;
    char buf[200];
    for (int r = 0; r < rows; ++r) {
        const std::size_t idx =
            rows == 1 ? 0
                      : static_cast<std::size_t>(
                            std::llround(double(r) * double(S - 1) / double(rows - 1)));
        const auto& snap = traj.snapshots[idx];
        for (int c = 0; c < cols; ++c) {
            const double x = x_min + (c + 0.5) * (x_max - x_min) / cols;
            const double v = std::clamp(snap.M_at(x) * scale, 0.0, 1.0);
            // dark blue (empty) to warm yellow (carrying capacity)
            const int red = static_cast<int>(std::lround(8 + v * (255 - 8)));
            const int grn = static_cast<int>(std::lround(29 + v * (237 - 29)));
            const int blu = static_cast<int>(std::lround(88 + v * (160 - 88)));
            std::snprintf(buf, sizeof buf,
                          "<rect x=\"%s\" y=\"%s\" width=\"%s\" height=\"%s\" "
                          "fill=\"#%02x%02x%02x\"/>\n",
                          f2(kMargin + c * cw).c_str(),
                          f2(kPlotH - kMargin - (r + 1) * ch).c_str(), f2(cw + 0.5).c_str(),
                          f2(ch + 0.5).c_str(), red, grn, blu);
            svg += buf;
        }
    }
    Axes ax{x_min, x_max, traj.snapshots.front().t, traj.snapshots.back().t};
    svg += axes_frame(ax, "x", "t");
    svg += "</svg>\n";
    return svg;
}

std::string r0f_trace_svg(const std::vector<R0FPoint>& trace) {
    ordered_json meta;
    meta["plot"] = "R0F-trace";
    meta["points"] = trace.size();
    std::vector<double> ts, rs;
    for (const auto& p : trace) {
        ts.push_back(p.t);
        rs.push_back(p.R0);
    }
    double r_lo = 1.0, r_hi = 1.0;
    if (!rs.empty()) {
        r_lo = std::min(1.0, *std::min_element(rs.begin(), rs.end()));
        r_hi = std::max(1.0, *std::max_element(rs.begin(), rs.end()));
        meta["t_min"] = ts.front();
        meta["t_max"] = ts.back();
        meta["r0f_min"] = *std::min_element(rs.begin(), rs.end());
        meta["r0f_max"] = *std::max_element(rs.begin(), rs.end());
    }
    meta["level"] = 1.0;
    std::string svg = svg_open(meta.dump());
    if (!ts.empty()) {
        const double pad = 0.05 * (r_hi - r_lo + 1e-12);
        Axes ax{ts.front(), ts.back(), r_lo - pad, r_hi + pad};
        svg += axes_frame(ax, "t", "R0F");
        svg += "<line x1=\"" + f2(ax.px(ax.x_lo)) + "\" y1=\"" + f2(ax.py(1.0)) + "\" x2=\"" +
               f2(ax.px(ax.x_hi)) + "\" y2=\"" + f2(ax.py(1.0)) +
               "\" stroke=\"#888888\" stroke-dasharray=\"4 3\" stroke-width=\"1\"/>\n";
        if (ts.size() == 1)
            svg += "<circle cx=\"" + f2(ax.px(ts[0])) + "\" cy=\"" + f2(ax.py(rs[0])) +
                   "\" r=\"3\" fill=\"#1e8449\"/>\n";
        else
            svg += polyline(ax, ts, rs, "#1e8449");
    }
    svg += "</svg>\n";
    return svg;
}

std::string svg_metadata(const std::string& svg_text) {
    const std::string open = "<metadata>", close = "</metadata>";
    const auto b = svg_text.find(open);
    if (b == std::string::npos) return "";
    const auto e = svg_text.find(close, b);
    if (e == std::string::npos) return "";
    return svg_text.substr(b + open.size(), e - b - open.size());
}

} // namespace mosqfront
