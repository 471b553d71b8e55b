#pragma once

#include <functional>
#include <vector>

#include "mosqfront/numerics.hpp"

namespace mosqfront {

// One snapshot of the evolving solution.  Densities are sampled on the N+1
// uniform nodes of the fixed computational interval [-h0, h0]; node i sits at
// physical position x = (y_i*(h-g) + h0*(h+g)) / (2*h0) with y_i = -h0 + i*dy.
struct SimulationState {
    double t = 0.0;
    double g = 0.0, h = 0.0; // front positions, g <= -h0 <= h0 <= h
    double h0 = 0.0;
    std::vector<double> M, A;

    double sup_M() const { return sup_norm(M); }
    double sup_A() const { return sup_norm(A); }
    double gap() const { return h - g; }
    int N() const { return static_cast<int>(M.size()) - 1; }

    double y_node(int i) const {
        const int n = N();
        return -h0 + (2.0 * h0 / n) * i;
    }
    double x_node(int i) const {
        return (y_node(i) * (h - g) + h0 * (h + g)) / (2.0 * h0);
    }
    // field value at physical x, Lagrange-interpolated in the computational frame
    double M_at(double x, int order = 6) const;
    double A_at(double x, int order = 6) const;
};

// Initial densities as functions of x on [-h0, h0]; sampled by run().
struct InitialData {
    double h0 = 1.0;
    std::function<double(double)> M0, A0;

    static InitialData cosine(double h0, double amp_M, double amp_A);
    InitialData scaled(double factor) const;
};

struct SolverConfig {
    enum class DtPolicy { Fixed, CflScaled };

    int N = 256;                      // interior resolution (node count - 1), even
    DtPolicy dt_policy = DtPolicy::CflScaled;
    double dt = 1e-3;                 // used by Fixed
    double cfl_factor = 10.0;         // used by CflScaled: dt = cfl_factor*dy^2
    double mu = 1.0;                  // expansion capability (Stefan coefficient)
    double horizon = 50.0;
    int boundary_stencil_order = 2;   // one-sided derivative at the fronts: 1 or 2

    void validate() const;
    double step_size(double h0) const;
};

struct Trajectory {
    double h0 = 0.0;
    int N = 0;
    std::vector<SimulationState> snapshots;

    const SimulationState& back() const { return snapshots.back(); }
    bool empty() const { return snapshots.empty(); }
};

// Per-step M fields kept for the integral-representation oracle of A.
struct FieldHistory {
    double h0 = 0.0;
    int N = 0;
    std::vector<double> t, g, h;
    std::vector<std::vector<double>> M;
    std::vector<double> A0; // aquatic field at the first record
};

struct RunOptions {
    std::vector<double> output_times;            // defaults to {horizon}
    int record_every = 0;                        // per-step history cadence; 0 = off
    FieldHistory* history = nullptr;
    std::function<bool(const SimulationState&)> stop_rule; // checked at snapshots
};

} // namespace mosqfront
