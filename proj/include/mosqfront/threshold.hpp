#pragma once

#include <optional>
#include <vector>

#include "mosqfront/profile.hpp"
#include "mosqfront/state.hpp"

namespace mosqfront {

// Eigen-analysis of the linearized system on a fixed interval (p, q).
//
// R0 is the largest generalized eigenvalue of the symmetric pencil obtained
// from the exponential gauge Psi = e^{-nu x/(2D)} phi of the weighted problem
//   -D phi_xx + nu phi_x + mu1(x) phi = r(x) gamma(x) / (R0^2 (mu2+gamma)) phi,
// with Dirichlet ends.  lambda0 is the principal eigenvalue of the coupled
// linearization, recovered from its scalar reduction as the root of
// kappa(lambda) = lambda (see compute_lambda0 below).
struct ThresholdReport {
    double p = 0.0, q = 0.0;
    double R0 = 0.0;
    std::optional<double> lambda0;
    // eigenfunction pair on the resolution+1 uniform nodes of [p,q], endpoint
    // zeros included; normalized so sup|eigen_M| + sup|eigen_A| = 1
    std::vector<double> eigen_M, eigen_A;
    int resolution = 0; // grid subinterval count
};

// Largest-eigenvalue solve for R0 with the eigenfunction pair attached.
ThresholdReport compute_R0(double p, double q, const CoefficientProfile& profile,
                           int resolution);

// Principal eigenvalue lambda0 by bisection on lambda -> kappa(lambda) - lambda,
// kappa(lambda) the smallest eigenvalue of the gauged Dirichlet operator with
// potential nu^2/(4D) + mu1(x) - r gamma/(mu2+gamma-lambda).
double compute_lambda0(double p, double q, const CoefficientProfile& profile,
                       int resolution);

// Both of the above in one report.
ThresholdReport make_threshold_report(double p, double q, const CoefficientProfile& profile,
                                      int resolution);

struct R0FPoint {
    double t = 0.0;
    double R0 = 0.0;
};

// R0 evaluated on each snapshot's current interval (g(t), h(t)).
std::vector<R0FPoint> r0f_trace(const Trajectory& traj, const CoefficientProfile& profile,
                                int resolution);

} // namespace mosqfront
