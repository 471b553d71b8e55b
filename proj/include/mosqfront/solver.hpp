#pragma once

#include "mosqfront/profile.hpp"
#include "mosqfront/state.hpp"

namespace mosqfront {

// Front-fixing map between the moving domain (g(t), h(t)) and the fixed
// computational interval [-h0, h0]:
//
//   y(x) = 2*h0*x/(h-g) - h0*(h+g)/(h-g),   x(y) = (y*(h-g) + h0*(h+g)) / (2*h0)
//
// Under the change of variables, M_t = B*M_yy + A_coef*M_y + (reaction), with
//   A_coef(y) = y*(h'-g')/(h-g) + h0*(h'+g')/(h-g) - 2*nu*h0/(h-g)
//   B         = 4*h0^2*D/(h-g)^2
// and the Stefan conditions become h' = -2*h0*mu/(h-g) * M_y(h0),
// g' = -2*h0*mu/(h-g) * M_y(-h0).
struct FrontFixMap {
    double g, h, h0;

    FrontFixMap(double g_, double h_, double h0_);

    double y_of_x(double x) const { return (2.0 * h0 * x - h0 * (h + g)) / (h - g); }
    double x_of_y(double y) const { return (y * (h - g) + h0 * (h + g)) / (2.0 * h0); }

    double advection_coef(double y, double hp, double gp, double nu) const {
        return (y * (hp - gp) + h0 * (hp + gp) - 2.0 * nu * h0) / (h - g);
    }
    // drift felt by a material point of the moving mesh (no physical advection)
    double mesh_drift_coef(double y, double hp, double gp) const {
        return (y * (hp - gp) + h0 * (hp + gp)) / (h - g);
    }
    double diffusion_coef(double D) const {
        const double w = h - g;
        return 4.0 * h0 * h0 * D / (w * w);
    }
};

class Stepper {
public:
    Stepper(const CoefficientProfile& profile, const SolverConfig& config);

    // advance state by dt in place; returns (h', g') used for the move
    struct FrontSpeeds {
        double hp = 0.0, gp = 0.0;
    };
    FrontSpeeds step(SimulationState& state, double dt);

    const SolverConfig& config() const { return config_; }

private:
    const CoefficientProfile& profile_;
    SolverConfig config_;
    Tridiagonal sys_;
    std::vector<double> rhs_, scratch_, M_new_, A_old_;
};

// Integrate from t=0 to the configured horizon, landing exactly on each
// requested output time.  Snapshots are appended at t=0, at each output time,
// and wherever the stop rule first fires.
Trajectory run(const CoefficientProfile& profile, const InitialData& init,
               const SolverConfig& config, const RunOptions& options = {});

// Exact-in-time integral representation of the aquatic stage at one node,
// driven by the recorded winged field.  The node is tracked at its initial
// physical position.  Throws MissingHistory when the record does not cover t.
double reconstruct_A_integral(const CoefficientProfile& profile,
                              const FieldHistory& history, int node, double t);

} // namespace mosqfront
