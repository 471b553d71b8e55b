#pragma once

#include <string>
#include <vector>

#include "mosqfront/profile.hpp"
#include "mosqfront/state.hpp"
#include "mosqfront/threshold.hpp"

namespace mosqfront {

enum class OutcomeLabel { Spreading, Vanishing, Undecided };

const char* to_string(OutcomeLabel label);

struct ClassifierConfig {
    double eps_R = 1e-3;           // threshold margin around R0F = 1
    double eps_gap_rel = 1e-6;     // front-stall tolerance, relative to h0
    double eps_density_rel = 1e-6; // extinction tolerance, relative to K1 + K2
    double window_frac = 0.1;      // trailing window, fraction of the examined span
    int r0f_resolution = 256;      // grid subintervals per R0 evaluation

    void validate() const;
};

// Classification of one trajectory.
//
// Spreading: R0F >= 1 + eps_R at any snapshot (the trace is nondecreasing,
// so the label is stable under horizon extension).
// Vanishing: evaluated at the final snapshot — front gap growth over the
// trailing window below eps_gap_rel*h0, sup_M + sup_A below
// eps_density_rel*(K1+K2), and R0F below 1 - eps_R.
// Undecided: neither rule fired by the end of the trajectory.
struct Outcome {
    OutcomeLabel label = OutcomeLabel::Undecided;
    std::string rule;            // human-readable description of what fired
    double stop_time = 0.0;      // time of the deciding snapshot
    double final_gap = 0.0;      // h - g at the last snapshot
    double final_sup_M = 0.0;
    double final_sup_A = 0.0;
    double final_R0F = 0.0;
    double gap_growth = 0.0;     // trailing-window gap growth (NaN if unmeasured)
    std::vector<R0FPoint> r0f;   // full trace along the trajectory
};

Outcome classify(const Trajectory& traj, const CoefficientProfile& profile,
                 const ClassifierConfig& config);

// run() with the classifier rules wired in as the early-stop rule, then a
// final classification of what was produced.  Output times default to 50
// uniform intervals across the horizon.
struct ClassifiedRun {
    Trajectory trajectory;
    Outcome outcome;
};

ClassifiedRun run_classified(const InitialData& init, const CoefficientProfile& profile,
                             const SolverConfig& config, const ClassifierConfig& classifier,
                             std::vector<double> output_times = {});

// Bisection for the sharp expansion-capability threshold mu*.
struct MuStarProbe {
    double mu = 0.0;
    OutcomeLabel label = OutcomeLabel::Undecided;
    double horizon_used = 0.0;
    double stop_time = 0.0;
};

struct MuStarResult {
    double mu_lo = 0.0, mu_hi = 0.0; // final bracket; (0, 0) on the shortcut
    bool shortcut = false;           // R0F(0) >= 1, so mu* = 0 without simulation
    double r0_initial = 0.0;
    double tol = 0.0;
    Outcome outcome_lo, outcome_hi;  // certifying runs at the final bracket ends
    std::vector<MuStarProbe> transcript;
};

// Bisects [mu_lo, mu_hi] until the bracket is narrower than tol*mu_hi.
// Undecided probes are retried with doubled horizon (up to 3 doublings);
// a probe that stays Undecided raises InconclusiveRegion with the current
// bracket.  Endpoints must certify as Vanishing (lo) and Spreading (hi),
// otherwise InvalidBracket.  If R0 of the initial interval is already >= 1
// the threshold is zero and no simulation is run.
MuStarResult find_mu_star(const InitialData& init, const CoefficientProfile& profile,
                          const SolverConfig& config, const ClassifierConfig& classifier,
                          double mu_lo, double mu_hi, double tol);

// Ordering experiments backing the comparison principle: an identical pair,
// a scaled-initial-data pair, and an expansion-capability pair, run
// concurrently.  Violations are measured pointwise on the shared domain
// intersection at every output time.
struct ComparisonPair {
    std::string name;
    double front_violation_cells = 0.0; // in units of the local grid cell
    double density_violation = 0.0;     // absolute, against 1e-8 * K1
    bool pass = false;
};

struct ComparisonReport {
    std::vector<ComparisonPair> pairs;
    bool pass = false;
};

ComparisonReport comparison_suite(const CoefficientProfile& profile, const InitialData& init,
                                  const SolverConfig& config);

} // namespace mosqfront
