#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mosqfront/classify.hpp"
#include "mosqfront/config.hpp"
#include "mosqfront/errors.hpp"
#include "mosqfront/output.hpp"
#include "mosqfront/solver.hpp"
#include "mosqfront/steady.hpp"
#include "mosqfront/threshold.hpp"

namespace mf = mosqfront;

namespace {

std::string slurp_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw mf::ConfigError({"cannot read config file: " + path});
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

mf::RunConfig load(const std::string& path, const std::string& out_dir, mf::TaskKind kind) {
    mf::RunConfig cfg = mf::parse_config(slurp_config(path));
    if (cfg.task.kind_set && cfg.task.kind != kind)
        throw mf::ConfigError({std::string("task.kind is '") + mf::to_string(cfg.task.kind) +
                               "' but the '" + mf::to_string(kind) +
                               "' subcommand was invoked"});
    cfg.task.kind = kind;
    cfg.task.kind_set = true;
    if (!out_dir.empty()) cfg.output.directory = out_dir;
    return cfg;
}

std::vector<double> snapshot_times(const mf::RunConfig& cfg) {
    if (!cfg.output.snapshot_times.empty()) return cfg.output.snapshot_times;
    std::vector<double> ts;
    for (int i = 0; i <= 10; ++i) ts.push_back(cfg.solver.horizon * i / 10.0);
    return ts;
}

void emit_trajectory(const mf::RunConfig& cfg, const mf::Trajectory& traj,
                     const std::vector<mf::R0FPoint>& trace) {
    const std::string stem = mf::output_stem(cfg);
    if (cfg.output.ndjson) {
        mf::write_text_file(stem + ".traj.ndjson", mf::trajectory_ndjson(traj));
        std::cout << "wrote " << stem << ".traj.ndjson\n";
    }
    if (cfg.output.csv) mf::write_text_file(stem + ".r0f.csv", mf::r0f_csv(trace));
    if (cfg.output.csv && cfg.output.write_fields)
        mf::write_text_file(stem + ".fields.csv", mf::fields_csv(traj));
    if (cfg.output.svg) {
        mf::write_text_file(stem + ".fronts.svg", mf::front_curves_svg(traj));
        mf::write_text_file(stem + ".heatmap.svg", mf::heatmap_svg(traj));
        mf::write_text_file(stem + ".r0f.svg", mf::r0f_trace_svg(trace));
    }
}

int run_simulate(const mf::RunConfig& cfg) {
    const mf::CoefficientProfile profile = mf::build_profile(cfg);
    const mf::InitialData init = mf::build_initial(cfg);
    mf::RunOptions opts;
    opts.output_times = snapshot_times(cfg);
    const mf::Trajectory traj = mf::run(profile, init, cfg.solver, opts);
    const auto trace = mf::r0f_trace(traj, profile, cfg.classifier.r0f_resolution);
    emit_trajectory(cfg, traj, trace);
    const auto& last = traj.snapshots.back();
    std::printf("final t = %.6g, fronts [%.6g, %.6g], sup M = %.6g\n", last.t, last.g, last.h,
                last.sup_M());
    return 0;
}

int run_threshold(const mf::RunConfig& cfg) {
    const mf::CoefficientProfile profile = mf::build_profile(cfg);
    const mf::ThresholdReport report =
        mf::make_threshold_report(cfg.task.p, cfg.task.q, profile, cfg.task.resolution);
    if (cfg.output.json) {
        const std::string path = mf::output_stem(cfg) + ".threshold.json";
        mf::write_text_file(path, mf::threshold_json(report));
        std::cout << "wrote " << path << "\n";
    }
    std::printf("R0 = %.12g on (%.6g, %.6g)", report.R0, report.p, report.q);
    if (report.lambda0) std::printf(", lambda0 = %.12g", *report.lambda0);
    std::printf("\n");
    return 0;
}

int run_steady(const mf::RunConfig& cfg) {
    const mf::CoefficientProfile profile = mf::build_profile(cfg);
    const std::vector<double> seq =
        cfg.task.L_sequence.empty() ? mf::default_L_sequence(profile, cfg.task.resolution)
                                    : cfg.task.L_sequence;
    const mf::GlobalStationary result =
        mf::solve_global(profile, cfg.task.resolution, seq, cfg.task.window);
    const std::string stem = mf::output_stem(cfg);
    if (cfg.output.csv) mf::write_text_file(stem + ".stationary.csv",
                                            mf::stationary_csv(result.solution));
    if (cfg.output.json) {
        mf::write_text_file(stem + ".stationary.json", mf::global_stationary_json(result));
        std::cout << "wrote " << stem << ".stationary.json\n";
    }
    std::printf("stationary profile at L = %.6g, residual %.3g, %s\n", result.solution.L,
                result.solution.residual, result.converged ? "window-converged" : "NOT converged");
    return 0;
}

int run_classify(const mf::RunConfig& cfg) {
    const mf::CoefficientProfile profile = mf::build_profile(cfg);
    const mf::InitialData init = mf::build_initial(cfg);
    const mf::ClassifiedRun cr = mf::run_classified(init, profile, cfg.solver, cfg.classifier,
                                                    cfg.output.snapshot_times);
    const std::string stem = mf::output_stem(cfg);
    if (cfg.output.json) mf::write_text_file(stem + ".outcome.json",
                                             mf::outcome_json(cr.outcome));
    emit_trajectory(cfg, cr.trajectory, cr.outcome.r0f);
    std::printf("outcome: %s (%s)\n", mf::to_string(cr.outcome.label), cr.outcome.rule.c_str());
    return 0;
}

int run_mu_star(const mf::RunConfig& cfg) {
    const mf::CoefficientProfile profile = mf::build_profile(cfg);
    const mf::InitialData init = mf::build_initial(cfg);
    const mf::MuStarResult result =
        mf::find_mu_star(init, profile, cfg.solver, cfg.classifier, cfg.task.mu_lo,
                         cfg.task.mu_hi, cfg.task.tol);
    const std::string stem = mf::output_stem(cfg);
    if (cfg.output.json) mf::write_text_file(stem + ".mustar.json", mf::mu_star_json(result));
    mf::write_text_file(stem + ".mustar.txt", mf::mu_star_summary(result));
    std::cout << mf::mu_star_summary(result);
    return 0;
}

int run_compare(const mf::RunConfig& cfg) {
    const mf::CoefficientProfile profile = mf::build_profile(cfg);
    const mf::InitialData init = mf::build_initial(cfg);
    const mf::ComparisonReport report = mf::comparison_suite(profile, init, cfg.solver);
    const std::string stem = mf::output_stem(cfg);
    if (cfg.output.json) mf::write_text_file(stem + ".compare.json",
                                             mf::comparison_json(report));
    mf::write_text_file(stem + ".compare.txt", mf::comparison_summary(report));
    std::cout << mf::comparison_summary(report);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-front mosquito invasion model: simulation and analysis"};
    app.require_subcommand(1);

    constexpr mf::TaskKind kinds[] = {mf::TaskKind::Simulate, mf::TaskKind::Threshold,
                                      mf::TaskKind::Steady,   mf::TaskKind::Classify,
                                      mf::TaskKind::MuStar,   mf::TaskKind::Compare};
    const char* blurbs[] = {"run the free-boundary solver and emit the trajectory",
                            "habitat threshold quantities R0 and lambda0 on a fixed interval",
                            "stationary profile on expanding truncations",
                            "run and label the outcome (spreading / vanishing / undecided)",
                            "bisect for the expansion-capability threshold mu*",
                            "comparison-principle ordering suite"};
    std::string config_paths[6], out_dirs[6];
    CLI::App* subs[6];
    for (int i = 0; i < 6; ++i) {
        subs[i] = app.add_subcommand(mf::to_string(kinds[i]), blurbs[i]);
        subs[i]->add_option("--config", config_paths[i], "path to a run configuration file")
            ->required();
        subs[i]->add_option("--out", out_dirs[i], "output directory (overrides the config)");
    }

    CLI11_PARSE(app, argc, argv);

    int which = -1;
    for (int i = 0; i < 6; ++i)
        if (subs[i]->parsed()) which = i;
    if (which < 0) {
        std::cerr << app.help();
        return 2;
    }

    try {
        const mf::RunConfig cfg = load(config_paths[which], out_dirs[which], kinds[which]);
        switch (kinds[which]) {
        case mf::TaskKind::Simulate: return run_simulate(cfg);
        case mf::TaskKind::Threshold: return run_threshold(cfg);
        case mf::TaskKind::Steady: return run_steady(cfg);
        case mf::TaskKind::Classify: return run_classify(cfg);
        case mf::TaskKind::MuStar: return run_mu_star(cfg);
        case mf::TaskKind::Compare: return run_compare(cfg);
        }
    } catch (const mf::ConfigError& e) {
        std::cerr << "config error:\n" << e.what() << "\n";
        return 2;
    } catch (const mf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
