#include "mosqfront/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>

#include "mosqfront/errors.hpp"
#include "mosqfront/solver.hpp"

namespace mosqfront {

const char* to_string(OutcomeLabel label) {
    switch (label) {
    case OutcomeLabel::Spreading: return "Spreading";
    case OutcomeLabel::Vanishing: return "Vanishing";
    case OutcomeLabel::Undecided: return "Undecided";
    }
    return "Undecided";
}

void ClassifierConfig::validate() const {
    if (!(eps_R > 0.0) || !(eps_R < 1.0))
        throw InvalidArgument("classifier eps_R must lie in (0, 1)");
    if (!(eps_gap_rel > 0.0) || !(eps_density_rel > 0.0))
        throw InvalidArgument("classifier stall/extinction tolerances must be positive");
    if (!(window_frac > 0.0) || !(window_frac < 1.0))
        throw InvalidArgument("classifier window fraction must lie in (0, 1)");
    if (r0f_resolution < 16) throw InvalidArgument("classifier R0F resolution must be at least 16");
}

namespace {

std::string describe_rule(const char* fmt, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, fmt, a, b);
    return buf;
}

// gap at the latest snapshot no later than t_cut; NaN when none qualifies
double gap_before(const Trajectory& traj, double t_cut) {
    double gap = std::numeric_limits<double>::quiet_NaN();
    for (const auto& s : traj.snapshots) {
        if (s.t > t_cut) break;
        gap = s.h - s.g;
    }
    return gap;
}

struct VanishingCheck {
    bool fired = false;
    double growth = std::numeric_limits<double>::quiet_NaN();
};

VanishingCheck vanishing_at_tail(const Trajectory& traj, const CoefficientProfile& profile,
                                 const ClassifierConfig& cfg, double window_span,
                                 double r0f_final) {
    VanishingCheck out;
    const SimulationState& last = traj.snapshots.back();
    if (!(last.t > 0.0)) return out;
    const double W = cfg.window_frac * window_span;
    const double gap_then = gap_before(traj, last.t - W);
    if (!std::isfinite(gap_then)) return out;
    out.growth = (last.h - last.g) - gap_then;
    const bool stalled = out.growth < cfg.eps_gap_rel * traj.h0;
    const bool extinct =
        last.sup_M() + last.sup_A() < cfg.eps_density_rel * (profile.K1 + profile.K2);
    const bool subcritical = r0f_final < 1.0 - cfg.eps_R;
    out.fired = stalled && extinct && subcritical;
    return out;
}

} // namespace

Outcome classify(const Trajectory& traj, const CoefficientProfile& profile,
                 const ClassifierConfig& config) {
    config.validate();
    if (traj.empty()) throw InvalidArgument("cannot classify an empty trajectory");

    Outcome out;
    out.r0f = r0f_trace(traj, profile, config.r0f_resolution);
    const SimulationState& last = traj.snapshots.back();
    out.final_gap = last.h - last.g;
    out.final_sup_M = last.sup_M();
    out.final_sup_A = last.sup_A();
    out.final_R0F = out.r0f.back().R0;
    out.stop_time = last.t;
    out.gap_growth = std::numeric_limits<double>::quiet_NaN();

    for (const auto& pt : out.r0f) {
        if (pt.R0 >= 1.0 + config.eps_R) {
            out.label = OutcomeLabel::Spreading;
            out.stop_time = pt.t;
            out.rule = describe_rule("spreading: R0F = %.6g >= 1 + eps_R at t = %.6g", pt.R0, pt.t);
            return out;
        }
    }

    const VanishingCheck v = vanishing_at_tail(traj, profile, config, last.t, out.final_R0F);
    out.gap_growth = v.growth;
    if (v.fired) {
        out.label = OutcomeLabel::Vanishing;
        out.rule = describe_rule(
            "vanishing: fronts stalled (gap growth %.3g), densities decayed, R0F = %.6g < 1 - eps_R",
            v.growth, out.final_R0F);
        return out;
    }

    out.label = OutcomeLabel::Undecided;
    out.rule = "none: neither rule fired by the end of the trajectory";
    return out;
}

ClassifiedRun run_classified(const InitialData& init, const CoefficientProfile& profile,
                             const SolverConfig& config, const ClassifierConfig& classifier,
                             std::vector<double> output_times) {
    classifier.validate();
    config.validate();
    if (output_times.empty()) {
        output_times.resize(51);
        for (int k = 0; k <= 50; ++k) output_times[k] = config.horizon * k / 50.0;
    }

    // Incremental mirror of classify(): spreading may fire at any snapshot;
    // the vanishing test uses the trailing window against the full horizon,
    // which only strengthens the final (shorter-span) re-evaluation.
    Trajectory seen;
    seen.h0 = init.h0;
    seen.N = config.N;
    RunOptions options;
    options.output_times = output_times;
    options.stop_rule = [&](const SimulationState& s) {
        seen.snapshots.push_back(s);
        const double r0 = compute_R0(s.g, s.h, profile, classifier.r0f_resolution).R0;
        if (r0 >= 1.0 + classifier.eps_R) return true;
        Trajectory probe;
        probe.h0 = seen.h0;
        probe.N = seen.N;
        probe.snapshots = seen.snapshots;
        return vanishing_at_tail(probe, profile, classifier, config.horizon, r0).fired;
    };

    ClassifiedRun result;
    result.trajectory = run(profile, init, config, options);
    result.outcome = classify(result.trajectory, profile, classifier);
    return result;
}

namespace {

struct ProbeRun {
    OutcomeLabel label;
    Outcome outcome;
    double horizon_used;
};

ProbeRun probe_mu(const InitialData& init, const CoefficientProfile& profile,
                  SolverConfig config, const ClassifierConfig& classifier, double mu) {
    config.mu = mu;
    for (int doubling = 0; doubling <= 3; ++doubling) {
        ClassifiedRun res = run_classified(init, profile, config, classifier);
        if (res.outcome.label != OutcomeLabel::Undecided || doubling == 3)
            return {res.outcome.label, std::move(res.outcome), config.horizon};
        config.horizon *= 2.0;
    }
    return {OutcomeLabel::Undecided, {}, config.horizon}; // unreachable
}

} // namespace

MuStarResult find_mu_star(const InitialData& init, const CoefficientProfile& profile,
                          const SolverConfig& config, const ClassifierConfig& classifier,
                          double mu_lo, double mu_hi, double tol) {
    classifier.validate();
    if (!std::isfinite(mu_lo) || !std::isfinite(mu_hi) || !(0.0 < mu_lo) || !(mu_lo < mu_hi))
        throw InvalidArgument("mu bracket must satisfy 0 < mu_lo < mu_hi");
    if (!std::isfinite(tol) || !(tol > 0.0) || !(tol < 1.0))
        throw InvalidArgument("relative tolerance must lie in (0, 1)");

    MuStarResult result;
    result.tol = tol;
    result.r0_initial =
        compute_R0(-init.h0, init.h0, profile, classifier.r0f_resolution).R0;
    if (result.r0_initial >= 1.0) {
        result.shortcut = true;
        result.mu_lo = result.mu_hi = 0.0;
        return result;
    }

    auto probe = [&](double mu) {
        ProbeRun pr = probe_mu(init, profile, config, classifier, mu);
        result.transcript.push_back({mu, pr.label, pr.horizon_used, pr.outcome.stop_time});
        if (pr.label == OutcomeLabel::Undecided) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "mu = %.12g stayed Undecided after 3 horizon doublings", mu);
            throw InconclusiveRegion(buf, result.mu_lo, result.mu_hi);
        }
        return pr;
    };

    result.mu_lo = mu_lo;
    result.mu_hi = mu_hi;
    ProbeRun lo = probe(mu_lo);
    if (lo.label != OutcomeLabel::Vanishing)
        throw InvalidBracket("lower bracket end mu_lo = " + std::to_string(mu_lo) +
                             " did not vanish (classified " + to_string(lo.label) + ")");
    ProbeRun hi = probe(mu_hi);
    if (hi.label != OutcomeLabel::Spreading)
        throw InvalidBracket("upper bracket end mu_hi = " + std::to_string(mu_hi) +
                             " did not spread (classified " + to_string(hi.label) + ")");
    result.outcome_lo = std::move(lo.outcome);
    result.outcome_hi = std::move(hi.outcome);

    while (result.mu_hi - result.mu_lo >= tol * result.mu_hi) {
        const double mid = 0.5 * (result.mu_lo + result.mu_hi);
        ProbeRun pr = probe(mid);
        if (pr.label == OutcomeLabel::Vanishing) {
            result.mu_lo = mid;
            result.outcome_lo = std::move(pr.outcome);
        } else {
            result.mu_hi = mid;
            result.outcome_hi = std::move(pr.outcome);
        }
    }
    return result;
}

// ---- comparison experiments ----------------------------------------------

namespace {

struct PairInputs {
    std::string name;
    InitialData init_a, init_b;
    SolverConfig cfg_a, cfg_b;
};

ComparisonPair run_pair(const CoefficientProfile& profile, const PairInputs& in,
                        const std::vector<double>& times) {
    RunOptions options;
    options.output_times = times;
    const Trajectory a = run(profile, in.init_a, in.cfg_a, options);
    const Trajectory b = run(profile, in.init_b, in.cfg_b, options);

    ComparisonPair out;
    out.name = in.name;
    const std::size_t count = std::min(a.snapshots.size(), b.snapshots.size());
    for (std::size_t k = 0; k < count; ++k) {
        const SimulationState& sa = a.snapshots[k];
        const SimulationState& sb = b.snapshots[k];
        const double cell = (sb.h - sb.g) / b.N;
        const double front_viol =
            std::max(std::max(sa.h - sb.h, sb.g - sa.g), 0.0) / cell;
        out.front_violation_cells = std::max(out.front_violation_cells, front_viol);
        const double lo = std::max(sa.g, sb.g), hi = std::min(sa.h, sb.h);
        for (int j = 0; j <= 200; ++j) {
            const double x = lo + (hi - lo) * j / 200.0;
            out.density_violation =
                std::max(out.density_violation, sa.M_at(x) - sb.M_at(x));
            out.density_violation =
                std::max(out.density_violation, sa.A_at(x) - sb.A_at(x));
        }
    }
    out.density_violation = std::max(out.density_violation, 0.0);
    out.pass = out.front_violation_cells <= 1.0 && out.density_violation <= 1e-8 * profile.K1;
    return out;
}

} // namespace

ComparisonReport comparison_suite(const CoefficientProfile& profile, const InitialData& init,
                                  const SolverConfig& config) {
    config.validate();
    std::vector<double> times(9);
    for (int k = 0; k <= 8; ++k) times[k] = config.horizon * k / 8.0;

    std::vector<PairInputs> pairs;
    pairs.push_back({"identical", init, init, config, config});
    pairs.push_back({"scaled-initial-data", init.scaled(0.5), init, config, config});
    SolverConfig small_mu = config, large_mu = config;
    small_mu.mu = 0.5 * config.mu;
    pairs.push_back({"expansion-capability", init, init, small_mu, large_mu});

    std::vector<std::future<ComparisonPair>> futures;
    futures.reserve(pairs.size());
    for (const auto& p : pairs)
        futures.push_back(std::async(std::launch::async,
                                     [&profile, &p, &times] { return run_pair(profile, p, times); }));

    ComparisonReport report;
    report.pass = true;
    for (auto& f : futures) {
        report.pairs.push_back(f.get());
        report.pass = report.pass && report.pairs.back().pass;
    }
    return report;
}

} // namespace mosqfront
