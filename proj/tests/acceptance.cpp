// End-to-end acceptance battery.  Each test case prints exactly one
// "[criterion N] PASS/FAIL — detail" line so the run can be audited at a
// glance, and fails the build through doctest when its checks do not hold.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "mosqfront/classify.hpp"
#include "mosqfront/errors.hpp"
#include "mosqfront/profile.hpp"
#include "mosqfront/solver.hpp"
#include "mosqfront/state.hpp"
#include "mosqfront/steady.hpp"
#include "mosqfront/threshold.hpp"
#include "oracles.hpp"

using namespace mosqfront;

namespace {

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int criterion, bool pass, const char* fmt, ...) {
    char detail[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(detail, sizeof detail, fmt, args);
    va_end(args);
    std::printf("[criterion %d] %s — %s\n", criterion, pass ? "PASS" : "FAIL", detail);
    std::fflush(stdout);
}

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

CoefficientProfile reference_profile() {
    return CoefficientProfile::homogeneous(1.0, 1.0, 0.25, 1.0, 1.0, 0.0, 1.0, 1.0);
}

std::vector<double> uniform_times(double horizon, int count) {
    std::vector<double> times;
    for (int k = 0; k < count; ++k) times.push_back(horizon * k / (count - 1));
    return times;
}

// The shared simulation suite referenced by the bound/monotonicity criteria:
// a mu ladder on one habitat plus spreading, vanishing, and drifting runs.
struct SuiteRun {
    std::string name;
    CoefficientProfile profile;
    Trajectory trajectory;
};

const std::vector<SuiteRun>& simulation_suite() {
    static const std::vector<SuiteRun> suite = [] {
        std::vector<SuiteRun> runs;
        const auto homogeneous = reference_profile();
        CoefficientProfile drifting(
            ProfileSpec::bump(0.9, 0.4, 1.0, 2.0), ProfileSpec::bump(1.0, 0.2, -1.0, 1.5),
            ProfileSpec::constant(0.2), ProfileSpec::constant(1.0), 1.0, 0.2, 1.0, 1.0);

        auto simulate = [&](std::string name, const CoefficientProfile& profile, double h0,
                            double amp, double mu, double horizon) {
            SolverConfig config;
            config.N = 256;
            config.mu = mu;
            config.horizon = horizon;
            RunOptions options;
            options.output_times = uniform_times(horizon, 21);
            auto init = InitialData::cosine(h0, amp, amp);
            runs.push_back({std::move(name), profile, run(profile, init, config, options)});
        };

        simulate("mu-0.5", homogeneous, 2.0, 0.5, 0.5, 8.0);
        simulate("mu-1", homogeneous, 2.0, 0.5, 1.0, 8.0);
        simulate("mu-2", homogeneous, 2.0, 0.5, 2.0, 8.0);
        simulate("spreading-wide", homogeneous, 4.0, 0.5, 1.0, 10.0);
        simulate("vanishing-faint", homogeneous, 0.5, 1e-3, 1.0, 10.0);
        simulate("heterogeneous-drift", drifting, 2.0, 0.5, 1.0, 5.0);
        return runs;
    }();
    return suite;
}

} // namespace

TEST_CASE("closed-form threshold values on homogeneous habitats") {
    bool pass = true;
    double max_rel = 0.0;
    Stopwatch clock;
    std::string detail;
    try {
        const struct {
            double D, nu, len;
        } sets[] = {{0.5, 0.0, M_PI},
                    {1.0, 0.0, M_PI},
                    {2.0, 0.0, M_PI},
                    {1.0, 0.3, M_PI},
                    {1.0, 0.3, 2.0 * M_PI}};
        for (const auto& s : sets) {
            const auto p =
                CoefficientProfile::homogeneous(1.0, 1.0, 0.25, 1.0, s.D, s.nu, 1.0, 1.0);
            const double got = compute_R0(-s.len / 2.0, s.len / 2.0, p, 512).R0;
            const double want = oracle::r0_closed_form(1.0, 1.0, 0.25, 1.0, s.D, s.nu, s.len);
            max_rel = std::max(max_rel, rel_err(got, want));
        }
        const double elapsed = clock.seconds();
        pass = max_rel < 1e-4 && elapsed < 1.0;
        report(1, pass, "5 parameter sets at 512 nodes, max relative error %.3g (tol 1e-4), %.3f s",
               max_rel, elapsed);
    } catch (const std::exception& e) {
        pass = false;
        report(1, false, "exception: %s", e.what());
    }
    CHECK(pass);
}

TEST_CASE("eigenvalue sign agrees with the threshold side") {
    bool pass = true;
    Stopwatch clock;
    try {
        std::mt19937 gen(2024);
        auto unif = [&](double a, double b) {
            return std::uniform_real_distribution<double>(a, b)(gen);
        };
        int tested = 0, agreed = 0, attempts = 0;
        while (tested < 200 && attempts < 2000) {
            ++attempts;
            CoefficientProfile p(
                ProfileSpec::bump(unif(0.5, 1.5), unif(0.0, 0.5), unif(-1.0, 1.0), unif(0.5, 2.0)),
                ProfileSpec::bump(unif(0.5, 1.5), unif(0.0, 0.5), unif(-1.0, 1.0), unif(0.5, 2.0)),
                ProfileSpec::bump(unif(0.05, 0.4), unif(0.0, 0.3), unif(-1.0, 1.0),
                                  unif(0.5, 2.0)),
                ProfileSpec::bump(unif(0.5, 1.5), unif(0.0, 0.5), unif(-1.0, 1.0), unif(0.5, 2.0)),
                unif(0.5, 2.0), unif(-0.5, 0.5), 1.0, 1.0);
            const double half = unif(0.6, 3.0);
            const double r0 = compute_R0(-half, half, p, 96).R0;
            if (std::abs(1.0 - r0) <= 1e-4) continue;
            const double lambda0 = compute_lambda0(-half, half, p, 96);
            ++tested;
            const int sign_r = (1.0 - r0) > 0.0 ? 1 : -1;
            const int sign_l = lambda0 > 0.0 ? 1 : (lambda0 < 0.0 ? -1 : 0);
            if (sign_r == sign_l) ++agreed;
        }
        const double elapsed = clock.seconds();
        pass = tested == 200 && agreed == 200 && elapsed < 30.0;
        report(2, pass, "%d/%d sign agreements on random habitats (|1-R0| > 1e-4), %.2f s", agreed,
               tested, elapsed);
    } catch (const std::exception& e) {
        pass = false;
        report(2, false, "exception: %s", e.what());
    }
    CHECK(pass);
}

TEST_CASE("threshold monotonicity in advection, habitat size, and time") {
    bool pass = true;
    try {
        const auto p = reference_profile();
        int violations = 0;

        double prev = 2.0;
        for (double nu : {0.0, 0.2, 0.4, 0.8}) {
            const auto q = CoefficientProfile::homogeneous(1.0, 1.0, 0.25, 1.0, 1.0, nu, 1.0, 1.0);
            const double r0 = compute_R0(-2.0, 2.0, q, 512).R0;
            if (!(r0 < prev)) ++violations;
            prev = r0;
        }

        prev = 0.0;
        for (double L : {1.0, 2.0, 4.0, 8.0}) {
            const double r0 = compute_R0(-L / 2.0, L / 2.0, p, 512).R0;
            if (!(r0 > prev)) ++violations;
            prev = r0;
        }

        int spreading_traces = 0;
        for (const auto& item : simulation_suite()) {
            const auto outcome = classify(item.trajectory, item.profile, ClassifierConfig{});
            if (outcome.label != OutcomeLabel::Spreading) continue;
            ++spreading_traces;
            for (std::size_t k = 1; k < outcome.r0f.size(); ++k)
                if (outcome.r0f[k].R0 < outcome.r0f[k - 1].R0 * (1.0 - 1e-11)) ++violations;
        }

        pass = violations == 0 && spreading_traces >= 1;
        report(3, pass,
               "%d violations (advection ladder, nested habitats, %d spreading R0F traces)",
               violations, spreading_traces);
    } catch (const std::exception& e) {
        pass = false;
        report(3, false, "exception: %s", e.what());
    }
    CHECK(pass);
}

TEST_CASE("density bounds across the simulation suite") {
    bool pass = true;
    try {
        double worst = 0.0; // largest excursion outside [0, K], in units of K
        long nodes_checked = 0;
        for (const auto& item : simulation_suite()) {
            const double K1 = item.profile.K1, K2 = item.profile.K2;
            for (const auto& s : item.trajectory.snapshots) {
                for (double v : s.M) {
                    worst = std::max(worst, std::max(-v, v - K1) / K1);
                    ++nodes_checked;
                }
                for (double v : s.A) {
                    worst = std::max(worst, std::max(-v, v - K2) / K2);
                    ++nodes_checked;
                }
            }
        }
        // the stepper additionally enforces the same band at every internal
        // step and aborts the run if it is ever left
        pass = worst <= 1e-10;
        report(4, pass, "max excursion %.3g of K beyond [0, K] over %ld samples (band 1e-10)",
               worst, nodes_checked);
    } catch (const std::exception& e) {
        pass = false;
        report(4, false, "exception: %s", e.what());
    }
    CHECK(pass);
}

TEST_CASE("stepped aquatic stage against its integral representation") {
    bool pass = true;
    try {
        const auto p = reference_profile();
        const auto init = InitialData::cosine(2.0, 0.5, 0.5);

        auto gap_for = [&](double dt) {
            SolverConfig config;
            config.N = 256;
            config.dt_policy = SolverConfig::DtPolicy::Fixed;
            config.dt = dt;
            config.horizon = 5.0;
            FieldHistory history;
            RunOptions options;
            options.output_times = {5.0};
            options.history = &history;
            options.record_every = 1;
            const auto traj = run(p, init, config, options);
            const auto& last = traj.back();
            // the reconstruction lives at the node's physical position in the
            // first record's frame, so probe the stepped field there as well
            const FrontFixMap first(history.g.front(), history.h.front(), history.h0);
            double gap = 0.0;
            for (int node = 118; node <= 136; node += 2) {
                const double x_probe = first.x_of_y(-2.0 + node * (4.0 / 256.0));
                const double ref = reconstruct_A_integral(p, history, node, 5.0);
                gap = std::max(gap, rel_err(last.A_at(x_probe), ref));
            }
            return gap;
        };

        const double base_dt = 5.0 / 2048.0;
        const double coarse = gap_for(base_dt);
        const double fine = gap_for(base_dt / 4.0);
        const double ratio = coarse / std::max(fine, 1e-300);
        pass = coarse < 1e-3 && ratio >= 3.0;
        report(5, pass,
               "10 probes after 5 time units: gap %.3g (tol 1e-3); 4x dt refinement shrinks it "
               "%.2fx (need >= 3)",
               coarse, ratio);
    } catch (const std::exception& e) {
        pass = false;
        report(5, false, "exception: %s", e.what());
    }
    CHECK(pass);
}

TEST_CASE("fronts and densities ordered in the expansion capability") {
    bool pass = true;
    try {
        const auto& suite = simulation_suite();
        const SuiteRun* ladder[3] = {&suite[0], &suite[1], &suite[2]};
        double worst_front = 0.0, worst_density = 0.0;
        for (int pair = 0; pair + 1 < 3; ++pair) {
            const Trajectory& a = ladder[pair]->trajectory;     // smaller mu
            const Trajectory& b = ladder[pair + 1]->trajectory; // larger mu
            const std::size_t count = std::min(a.snapshots.size(), b.snapshots.size());
            for (std::size_t k = 0; k < count; ++k) {
                const auto& sa = a.snapshots[k];
                const auto& sb = b.snapshots[k];
                const double cell = (sb.h - sb.g) / b.N;
                worst_front = std::max(worst_front,
                                       std::max(sa.h - sb.h, sb.g - sa.g) / cell);
                const double lo = std::max(sa.g, sb.g), hi = std::min(sa.h, sb.h);
                for (int j = 0; j <= 200; ++j) {
                    const double x = lo + (hi - lo) * j / 200.0;
                    worst_density = std::max(worst_density, sa.M_at(x) - sb.M_at(x));
                    worst_density = std::max(worst_density, sa.A_at(x) - sb.A_at(x));
                }
            }
        }
        pass = worst_front <= 1.0 && worst_density <= 1e-8;
        report(6, pass,
               "mu in {0.5, 1, 2}: worst front inversion %.3g cells (<= 1), worst density "
               "inversion %.3g (<= 1e-8)",
               worst_front, worst_density);
    } catch (const std::exception& e) {
        pass = false;
        report(6, false, "exception: %s", e.what());
    }
    CHECK(pass);
}

TEST_CASE("the spreading/vanishing dichotomy is realized") {
    bool pass = true;
    try {
        const auto p = reference_profile();
        SolverConfig config;
        config.N = 256;
        config.horizon = 10.0;

        Stopwatch clock_a;
        auto wide = InitialData::cosine(4.0, 0.5, 0.5);
        const auto spreading = run_classified(wide, p, config, ClassifierConfig{});
        const double time_a = clock_a.seconds();
        const double r0_wide = spreading.outcome.r0f.empty() ? 0.0 : spreading.outcome.r0f[0].R0;

        Stopwatch clock_b;
        auto faint = InitialData::cosine(0.5, 0.5e-3, 0.5e-3);
        const auto vanishing = run_classified(faint, p, config, ClassifierConfig{});
        const double time_b = clock_b.seconds();

        pass = r0_wide > 1.0 && spreading.outcome.label == OutcomeLabel::Spreading &&
               vanishing.outcome.label == OutcomeLabel::Vanishing && time_a < 60.0 &&
               time_b < 60.0;
        report(7, pass,
               "wide habitat (R0F(0) = %.4f): %s in %.2f s; shrunk faint habitat: %s in %.2f s",
               r0_wide, to_string(spreading.outcome.label), time_a,
               to_string(vanishing.outcome.label), time_b);
    } catch (const std::exception& e) {
        pass = false;
        report(7, false, "exception: %s", e.what());
    }
    CHECK(pass);
}

TEST_CASE("the critical expansion capability is bracketed sharply") {
    bool pass = true;
    try {
        Stopwatch clock;
        const auto p = reference_profile();
        auto init = InitialData::cosine(1.0, 0.5, 0.5);
        SolverConfig config;
        config.N = 256;
        config.horizon = 150.0;

        const auto res = find_mu_star(init, p, config, ClassifierConfig{}, 0.25, 64.0, 0.05);
        const double elapsed = clock.seconds();

        bool monotone = !res.transcript.empty();
        for (const auto& probe : res.transcript) {
            if (probe.label == OutcomeLabel::Undecided) monotone = false;
            if (probe.label == OutcomeLabel::Vanishing && probe.mu > res.mu_lo + 1e-12)
                monotone = false;
            if (probe.label == OutcomeLabel::Spreading && probe.mu < res.mu_hi - 1e-12)
                monotone = false;
        }
        const double width = (res.mu_hi - res.mu_lo) / res.mu_hi;
        pass = !res.shortcut && width <= 0.05 && monotone &&
               res.outcome_lo.label == OutcomeLabel::Vanishing &&
               res.outcome_hi.label == OutcomeLabel::Spreading && elapsed < 900.0;
        report(8, pass,
               "mu* in [%.4f, %.4f] (rel width %.3g <= 0.05), %zu label-monotone probes, %.1f s "
               "(< 900)",
               res.mu_lo, res.mu_hi, width, res.transcript.size(), elapsed);
    } catch (const std::exception& e) {
        pass = false;
        report(8, false, "exception: %s", e.what());
    }
    CHECK(pass);
}

TEST_CASE("a spreading run settles onto the stationary profile") {
    bool pass = true;
    try {
        const auto p = reference_profile();
        SolverConfig config;
        config.N = 768;
        config.mu = 2.0;
        config.horizon = 180.0;
        RunOptions options;
        options.output_times = uniform_times(180.0, 241);
        // run well past +-15 so the trailing front transient has left the
        // observation window before the terminal comparison
        options.stop_rule = [](const SimulationState& s) { return s.h >= 25.0 && s.g <= -25.0; };
        auto init = InitialData::cosine(4.0, 0.5, 0.5);
        const auto traj = run(p, init, config, options);
        const auto& last = traj.back();

        const auto stationary = solve_global(p, 512, {8.0, 16.0, 32.0}, 5.0);
        const auto& sol = stationary.solution;
        auto interp = [&](const std::vector<double>& field, double x) {
            const double dx = sol.x[1] - sol.x[0];
            const double s = (x - sol.x.front()) / dx;
            const std::size_t j = std::min(static_cast<std::size_t>(s), field.size() - 2);
            const double w = s - static_cast<double>(j);
            return field[j] * (1.0 - w) + field[j + 1] * w;
        };
        double worst = 0.0;
        for (int j = 0; j <= 400; ++j) {
            const double x = -5.0 + 10.0 * j / 400.0;
            worst = std::max(worst, std::abs(last.M_at(x) - interp(sol.M_star, x)));
            worst = std::max(worst, std::abs(last.A_at(x) - interp(sol.A_star, x)));
        }
        pass = last.h >= 15.0 && last.g <= -15.0 && worst < 5e-3;
        report(9, pass,
               "fronts reached [%.2f, %.2f] by t = %.1f; max gap to the stationary profile on "
               "[-5, 5] is %.3g (tol 5e-3)",
               last.g, last.h, last.t, worst);
    } catch (const std::exception& e) {
        pass = false;
        report(9, false, "exception: %s", e.what());
    }
    CHECK(pass);
}

TEST_CASE("grid refinement converges on the smooth benchmark") {
    bool pass = true;
    try {
        const auto p = reference_profile();
        auto init = InitialData::cosine(2.0, 0.5, 0.5);
        auto terminal = [&](int N) {
            SolverConfig config;
            config.N = N;
            config.horizon = 2.0;
            return run(p, init, config).back();
        };
        const auto best = terminal(512);
        auto err = [&](const SimulationState& s) {
            return std::abs(s.h - best.h) + std::abs(s.g - best.g) +
                   std::abs(s.sup_M() - best.sup_M());
        };
        const double e64 = err(terminal(64));
        const double e128 = err(terminal(128));
        const double e256 = err(terminal(256));
        const double r1 = e64 / std::max(e128, 1e-300);
        const double r2 = e128 / std::max(e256, 1e-300);
        pass = r1 >= 1.7 && r2 >= 1.7;
        report(10, pass, "terminal-state errors %.3g / %.3g / %.3g; ratios %.2f and %.2f (>= 1.7)",
               e64, e128, e256, r1, r2);
    } catch (const std::exception& e) {
        pass = false;
        report(10, false, "exception: %s", e.what());
    }
    CHECK(pass);
}
