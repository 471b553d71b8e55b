#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "mosqfront/errors.hpp"

namespace mosqfront {

enum class ProfileKind { Constant, Step, Bump, Tabulated };

// One spatial coefficient x -> value.  Families:
//   constant   value
//   step       left for x < at, right for x >= at
//   bump       base + amp * exp(-((x-center)/width)^2)
//   tabulated  piecewise linear through (x_k, v_k); constant extrapolation
//              to the declared limit outside the table
class ProfileSpec {
public:
    static ProfileSpec constant(double value);
    static ProfileSpec step(double left, double right, double at);
    static ProfileSpec bump(double base, double amp, double center, double width);
    static ProfileSpec tabulated(std::vector<double> x, std::vector<double> v, double limit);
    // two-column text file (x value), '#' comments
    static ProfileSpec tabulated_from_file(const std::string& path, double limit);

    double operator()(double x) const {
        switch (kind_) {
        case ProfileKind::Constant:
            return p0_;
        case ProfileKind::Step:
            return x < p2_ ? p0_ : p1_;
        case ProfileKind::Bump: {
            const double u = (x - p2_) / p3_;
            return p0_ + p1_ * std::exp(-u * u);
        }
        case ProfileKind::Tabulated:
            return eval_table(x);
        }
        return p0_;
    }

    ProfileKind kind() const { return kind_; }

    // true when the x -> +inf and x -> -inf limits coincide
    bool has_symmetric_limits() const;
    // the common asymptotic value; throws InvalidProfile when asymmetric
    double limit() const;
    // greatest lower bound of the profile over all of R (for positivity checks)
    double min_value() const;
    double max_value() const;

    // family parameters, exposed for serialization
    double param(int i) const;
    const std::vector<double>& table_x() const { return tx_; }
    const std::vector<double>& table_v() const { return tv_; }
    const std::string& source_file() const { return file_; }

private:
    ProfileSpec() = default;
    double eval_table(double x) const;

    ProfileKind kind_ = ProfileKind::Constant;
    double p0_ = 0, p1_ = 0, p2_ = 0, p3_ = 1;
    std::vector<double> tx_, tv_;
    std::string file_;
};

// free-function evaluation; rejects non-finite results
double evaluate_profile(const ProfileSpec& spec, double x);

// Full coefficient set of the model.  Construction validates positivity of
// the rates, carrying capacities and D, and requires every rate to have a
// single two-sided asymptotic limit.
struct CoefficientProfile {
    ProfileSpec r, gamma, mu1, mu2;
    double D = 1.0;
    double nu = 0.0;
    double K1 = 1.0;
    double K2 = 1.0;
    double homogenization_radius = 50.0;

    CoefficientProfile(ProfileSpec r_, ProfileSpec gamma_, ProfileSpec mu1_, ProfileSpec mu2_,
                       double D_, double nu_, double K1_, double K2_,
                       double homogenization_radius_ = 50.0);

    double r_inf() const { return r.limit(); }
    double gamma_inf() const { return gamma.limit(); }
    double mu1_inf() const { return mu1.limit(); }
    double mu2_inf() const { return mu2.limit(); }

    // convenience: homogeneous profile with constant rates
    static CoefficientProfile homogeneous(double r, double gamma, double mu1, double mu2,
                                          double D, double nu, double K1, double K2);
};

// Persistence condition on the homogenized far field:
//   margin = r_inf*gamma_inf/(mu2_inf+gamma_inf) - mu1_inf > 0.
struct AssumptionHVerdict {
    double margin = 0.0;
    bool holds = false;            // margin > 0
    bool farfield_matches = false; // sampled far field agrees with declared limits
    double max_farfield_deviation = 0.0;
    bool pass() const { return holds && farfield_matches; }
};
AssumptionHVerdict check_assumption_H(const CoefficientProfile& p, double tolerance = 1e-6);

// Small-advection condition:
//   |nu| < 2 D sqrt((r_inf gamma_inf - mu1_inf (mu2_inf+gamma_inf)) / (mu2_inf+gamma_inf)).
// Precondition: assumption (H) margin positive.
struct AdvectionVerdict {
    double bound = 0.0;
    double nu_abs = 0.0;
    bool pass = false;
};
AdvectionVerdict check_small_advection(const CoefficientProfile& p);

} // namespace mosqfront
