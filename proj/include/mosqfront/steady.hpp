#pragma once

#include <vector>

#include "mosqfront/profile.hpp"

namespace mosqfront {

// Stationary profile on a truncation [-L, L], node-sampled with endpoint zeros.
struct StationarySolution {
    double L = 0.0;
    std::vector<double> x, M_star, A_star;
    double residual = 0.0;     // sup norm of the discrete stationary residual
    double sandwich_gap = 0.0; // final sup gap between upper and lower iterates
    int sweeps = 0;            // monotone sweeps until both directions settled
    // monotone-iteration certificates (worst signed violations; <= ~1e-12 when clean)
    double upper_monotone_defect = 0.0; // max increase of the upper iterate
    double lower_monotone_defect = 0.0; // max decrease of the lower iterate
    double ordering_defect = 0.0;       // max of (lower - upper) across sweeps
};

struct GlobalConvergenceRow {
    double L = 0.0;
    double sup_diff = 0.0; // vs previous truncation on the window; NaN for the first
    double residual = 0.0;
};

struct GlobalStationary {
    StationarySolution solution; // at the largest truncation
    std::vector<GlobalConvergenceRow> table;
    double window = 0.0;
    bool converged = false;
};

// Unique nonnegative root of 0 = r(x)(1 - A/K2)M - (mu2+gamma)A:
//   A = r M / (r M / K2 + mu2 + gamma); strictly below K2 for finite M.
double close_A(double M, double x, const CoefficientProfile& profile);

// Stationary reaction per unit density, gauge-invariant:
//   f(M, x) = gamma(x) r(x) (1 - M/K1) / (r(x) M / K2 + mu2 + gamma) - mu1(x).
// Strict decrease of f in M underpins uniqueness of the positive solution.
double reaction_per_density(double M, double x, const CoefficientProfile& profile);

// Monotone sandwich solve of the truncated stationary problem on [-L, L]
// with `resolution` grid subintervals.  Requires R0 of the truncation > 1.
StationarySolution solve_truncated(double L, const CoefficientProfile& profile, int resolution);

// Smallest dyadic half-width whose R0 exceeds 1.05, doubled four times.
std::vector<double> default_L_sequence(const CoefficientProfile& profile, int resolution);

// Expanding-truncation solve along an increasing L sequence.  `resolution`
// counts subintervals at the first L; later truncations keep the spacing.
// Convergence is declared when consecutive solutions differ by < 1e-6 on the
// observation window [-window, window] (window <= 0 picks half the first L).
GlobalStationary solve_global(const CoefficientProfile& profile, int resolution,
                              const std::vector<double>& L_sequence, double window = 0.0);

} // namespace mosqfront
