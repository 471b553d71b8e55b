#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "mosqfront/config.hpp"
#include "mosqfront/errors.hpp"
#include "mosqfront/output.hpp"
#include "mosqfront/profile.hpp"
#include "mosqfront/solver.hpp"
#include "mosqfront/state.hpp"
#include "mosqfront/steady.hpp"
#include "mosqfront/threshold.hpp"

using namespace mosqfront;
using nlohmann::json;

namespace {

SimulationState snap(double t, double g, double h, int N, double value) {
    SimulationState s;
    s.t = t;
    s.g = g;
    s.h = h;
    s.h0 = 1.0;
    s.M.assign(N + 1, value);
    s.A.assign(N + 1, value / 2.0);
    s.M.front() = s.M.back() = 0.0;
    s.A.front() = s.A.back() = 0.0;
    return s;
}

Trajectory small_trajectory() {
    Trajectory traj;
    traj.h0 = 1.0;
    traj.N = 16;
    traj.snapshots.push_back(snap(0.0, -1.0, 1.0, 16, 0.5));
    traj.snapshots.push_back(snap(1.0, -1.5, 2.0, 16, 0.25));
    traj.snapshots.push_back(snap(2.0, -2.0, 3.0, 16, 0.125));
    return traj;
}

} // namespace

TEST_CASE("doubles survive a text round trip exactly") {
    const double samples[] = {1.0 / 3.0, 0.1,       1e-300, 3.141592653589793,
                              -2.5e17,   6.25e-2,   0.0,    -0.0,
                              1e308,     4.9e-324};
    for (double v : samples) {
        const std::string s = format_g17(v);
        const double back = std::strtod(s.c_str(), nullptr);
        CHECK(back == v);
    }
}

TEST_CASE("run hashes are stable, sensitive, and well formed") {
    RunConfig a;
    const std::string ha = run_hash(a);
    CHECK(ha.size() == 16);
    for (char c : ha) CHECK(((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f')));
    CHECK(run_hash(a) == ha);

    RunConfig b;
    b.D = 2.0;
    CHECK(run_hash(b) != ha);

    a.task.kind_set = true;
    a.task.kind = TaskKind::Threshold;
    const std::string stem = output_stem(a);
    CHECK(stem.rfind("out/threshold_", 0) == 0);
    CHECK(stem.size() == std::string("out/threshold_").size() + 16);
}

TEST_CASE("trajectory serialization") {
    const auto traj = small_trajectory();
    SUBCASE("ndjson lines parse and carry the summary columns") {
        const std::string text = trajectory_ndjson(traj);
        std::istringstream in(text);
        std::string line;
        std::vector<json> rows;
        while (std::getline(in, line)) rows.push_back(json::parse(line));
        REQUIRE(rows.size() == 3);
        CHECK(rows[0]["t"] == 0.0);
        CHECK(rows[1]["g"] == -1.5);
        CHECK(rows[1]["h"] == 2.0);
        CHECK(rows[2]["sup_M"] == doctest::Approx(0.125));
        CHECK(rows[2]["sup_A"] == doctest::Approx(0.0625));
        CHECK(trajectory_ndjson(traj) == text);
    }
    SUBCASE("fields csv has a header and one row per node per snapshot") {
        const std::string text = fields_csv(traj);
        std::istringstream in(text);
        std::string line;
        std::getline(in, line);
        CHECK(line == "t,y,x,M,A");
        std::size_t rows = 0;
        while (std::getline(in, line)) ++rows;
        CHECK(rows == 3 * 17);
    }
    SUBCASE("r0f csv") {
        const std::vector<R0FPoint> trace = {{0.0, 0.5}, {1.0, 0.75}};
        const std::string text = r0f_csv(trace);
        CHECK(text.rfind("t,R0F\n", 0) == 0);
        CHECK(text.find("\n1,0.75") != std::string::npos);
    }
}

TEST_CASE("json reports are valid json with the advertised fields") {
    const auto p = CoefficientProfile::homogeneous(1.0, 1.0, 0.25, 1.0, 1.0, 0.0, 1.0, 1.0);
    SUBCASE("threshold report") {
        const auto report = make_threshold_report(-1.57, 1.57, p, 64);
        const json j = json::parse(threshold_json(report));
        CHECK(j["p"] == -1.57);
        CHECK(j["q"] == 1.57);
        CHECK(j["R0"].get<double>() == doctest::Approx(report.R0));
        CHECK(j.contains("lambda0"));
        CHECK(j["resolution"] == 64);
        CHECK(j["eigen_M"].size() == 65);
    }
    SUBCASE("stationary report and csv") {
        const auto g = solve_global(p, 64, {6.0, 12.0}, 3.0);
        const json j = json::parse(global_stationary_json(g));
        CHECK(j["L"] == 12.0);
        CHECK(j["window"] == 3.0);
        CHECK(j["table"].size() == 2);
        CHECK(j["table"][0]["sup_diff"].is_null());
        CHECK(j["table"][1]["sup_diff"].is_number());
        CHECK(j.contains("converged"));
        CHECK(j["residual"].get<double>() < 1e-8);

        const std::string csv = stationary_csv(g.solution);
        CHECK(csv.rfind("x,M_star,A_star\n", 0) == 0);
        std::size_t lines = 0;
        for (char c : csv)
            if (c == '\n') ++lines;
        CHECK(lines == g.solution.x.size() + 1);
    }
    SUBCASE("outcome report with an unmeasured gap growth") {
        Outcome o;
        o.label = OutcomeLabel::Spreading;
        o.rule = "threshold exceeded";
        o.stop_time = 2.5;
        o.gap_growth = std::nan("");
        o.r0f = {{0.0, 1.2}};
        const json j = json::parse(outcome_json(o));
        CHECK(j["label"] == "Spreading");
        CHECK(j["stop_time"] == 2.5);
        CHECK(j["gap_growth"].is_null());
        CHECK(j["r0f"].size() == 1);
        CHECK(j["r0f"][0]["t"] == 0.0);
    }
    SUBCASE("mu star report and summary") {
        MuStarResult r;
        r.mu_lo = 1.0;
        r.mu_hi = 1.25;
        r.tol = 0.25;
        r.r0_initial = 0.8;
        r.transcript = {{1.0, OutcomeLabel::Vanishing, 50.0, 50.0},
                        {1.25, OutcomeLabel::Spreading, 50.0, 12.0}};
        const json j = json::parse(mu_star_json(r));
        CHECK(j["mu_lo"] == 1.0);
        CHECK(j["mu_hi"] == 1.25);
        CHECK(j["shortcut"] == false);
        CHECK(j["transcript"].size() == 2);
        CHECK(j["transcript"][0]["label"] == "Vanishing");
        const std::string s = mu_star_summary(r);
        CHECK(s.find("1.25") != std::string::npos);
        CHECK(s.find("Vanishing") != std::string::npos);
    }
    SUBCASE("comparison report and summary") {
        ComparisonReport rep;
        rep.pairs = {{"identical", 0.0, 0.0, true}, {"scaled-initial-data", 0.4, 1e-12, true}};
        rep.pass = true;
        const json j = json::parse(comparison_json(rep));
        CHECK(j["pass"] == true);
        CHECK(j["pairs"].size() == 2);
        CHECK(j["pairs"][1]["name"] == "scaled-initial-data");
        const std::string s = comparison_summary(rep);
        CHECK(s.find("identical") != std::string::npos);
        CHECK(s.find("PASS") != std::string::npos);
    }
}

TEST_CASE("text files are written through fresh directories") {
    namespace fs = std::filesystem;
    const auto base = fs::temp_directory_path() / "mosqfront_out_test";
    fs::remove_all(base);
    const auto path = base / "a" / "b" / "c.txt";
    write_text_file(path.string(), "payload\n");
    std::ifstream in(path);
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(body == "payload\n");

    SUBCASE("a file in the way of a directory raises IoError") {
        const auto blocked = path / "deeper" / "x.txt"; // c.txt is a file
        CHECK_THROWS_AS(write_text_file(blocked.string(), "y"), IoError);
    }
}

TEST_CASE("svg plots embed machine readable metadata") {
    const auto traj = small_trajectory();
    SUBCASE("front curves") {
        const std::string svg = front_curves_svg(traj);
        CHECK(svg.rfind("<svg", 0) == 0);
        CHECK(svg.find("</svg>") != std::string::npos);
        const json meta = json::parse(svg_metadata(svg));
        CHECK(meta["plot"] == "front-curves");
        CHECK(meta["points"] == 3);
        CHECK(meta["t_min"] == 0.0);
        CHECK(meta["t_max"] == 2.0);
        CHECK(meta["g_min"] == -2.0);
        CHECK(meta["h_max"] == 3.0);
        CHECK(front_curves_svg(traj) == svg);
    }
    SUBCASE("heatmap ranges follow the moving fronts") {
        const json meta = json::parse(svg_metadata(heatmap_svg(traj)));
        CHECK(meta["plot"] == "M-heatmap");
        CHECK(meta["x_min"] == -2.0);
        CHECK(meta["x_max"] == 3.0);
        CHECK(meta["t_min"] == 0.0);
        CHECK(meta["t_max"] == 2.0);
        CHECK(meta["rows"].get<int>() <= 128);
        CHECK(meta["cols"].get<int>() <= 128);
        CHECK(meta["rows"].get<int>() >= 3);
        CHECK(meta["sup_M"] == doctest::Approx(0.5));
    }
    SUBCASE("single snapshot degenerates to markers") {
        Trajectory one;
        one.h0 = 1.0;
        one.N = 16;
        one.snapshots.push_back(snap(0.0, -1.0, 1.0, 16, 0.5));
        const std::string svg = front_curves_svg(one);
        const json meta = json::parse(svg_metadata(svg));
        CHECK(meta["points"] == 1);
        CHECK(svg.find("<circle") != std::string::npos);
    }
    SUBCASE("empty trajectory stays well formed") {
        Trajectory none;
        none.h0 = 1.0;
        none.N = 16;
        const std::string svg = heatmap_svg(none);
        const json meta = json::parse(svg_metadata(svg));
        CHECK(meta["rows"] == 0);
        CHECK(svg.find("</svg>") != std::string::npos);
    }
    SUBCASE("r0f trace with the unit level line") {
        const std::vector<R0FPoint> trace = {{0.0, 0.5}, {1.0, 0.8}, {2.0, 1.3}};
        const std::string svg = r0f_trace_svg(trace);
        const json meta = json::parse(svg_metadata(svg));
        CHECK(meta["plot"] == "R0F-trace");
        CHECK(meta["level"] == 1.0);
        CHECK(meta["points"] == 3);
    }
    SUBCASE("metadata of a plain string is empty") {
        CHECK(svg_metadata("<svg></svg>") == "");
    }
}
