#include "mosqfront/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mosqfront {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw InvalidProfile(std::string(what) + ": non-finite parameter");
}

} // namespace

ProfileSpec ProfileSpec::constant(double value) {
    require_finite(value, "constant profile");
    ProfileSpec s;
    s.kind_ = ProfileKind::Constant;
    s.p0_ = value;
    return s;
}

ProfileSpec ProfileSpec::step(double left, double right, double at) {
    require_finite(left, "step profile");
    require_finite(right, "step profile");
    require_finite(at, "step profile");
    ProfileSpec s;
    s.kind_ = ProfileKind::Step;
    s.p0_ = left;
    s.p1_ = right;
    s.p2_ = at;
    return s;
}

ProfileSpec ProfileSpec::bump(double base, double amp, double center, double width) {
    require_finite(base, "bump profile");
    require_finite(amp, "bump profile");
    require_finite(center, "bump profile");
    require_finite(width, "bump profile");
    if (width <= 0.0) throw InvalidProfile("bump profile: width must be positive");
    ProfileSpec s;
    s.kind_ = ProfileKind::Bump;
    s.p0_ = base;
    s.p1_ = amp;
    s.p2_ = center;
    s.p3_ = width;
    return s;
}

ProfileSpec ProfileSpec::tabulated(std::vector<double> x, std::vector<double> v, double limit) {
    if (x.size() != v.size()) throw InvalidProfile("tabulated profile: column length mismatch");
    if (x.size() < 2) throw InvalidProfile("tabulated profile: need at least two rows");
    require_finite(limit, "tabulated profile");
    for (std::size_t i = 0; i < x.size(); ++i) {
        require_finite(x[i], "tabulated profile");
        require_finite(v[i], "tabulated profile");
        if (i > 0 && x[i] <= x[i - 1])
            throw InvalidProfile("tabulated profile: abscissae must be strictly increasing");
    }
    ProfileSpec s;
    s.kind_ = ProfileKind::Tabulated;
    s.p0_ = limit;
    s.tx_ = std::move(x);
    s.tv_ = std::move(v);
    return s;
}

ProfileSpec ProfileSpec::tabulated_from_file(const std::string& path, double limit) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open profile table: " + path);
    std::vector<double> xs, vs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        double x, v;
        if (!(row >> x)) continue; // blank line
        if (!(row >> v))
            throw IoError(path + ":" + std::to_string(lineno) + ": expected two columns");
        xs.push_back(x);
        vs.push_back(v);
    }
    ProfileSpec s = tabulated(std::move(xs), std::move(vs), limit);
    s.file_ = path;
    return s;
}

double ProfileSpec::eval_table(double x) const {
    if (x <= tx_.front() || x >= tx_.back()) {
        // constant extrapolation to the declared limit, endpoints included
        if (x == tx_.front()) return tv_.front();
        if (x == tx_.back()) return tv_.back();
        return p0_;
    }
    const auto it = std::upper_bound(tx_.begin(), tx_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - tx_.begin());
    const double t = (x - tx_[i - 1]) / (tx_[i] - tx_[i - 1]);
    return tv_[i - 1] + t * (tv_[i] - tv_[i - 1]);
}

bool ProfileSpec::has_symmetric_limits() const {
    if (kind_ == ProfileKind::Step) return p0_ == p1_;
    return true; // constant, bump and tabulated share one declared limit
}

double ProfileSpec::limit() const {
    switch (kind_) {
    case ProfileKind::Constant:
        return p0_;
    case ProfileKind::Step:
        if (p0_ != p1_)
            throw InvalidProfile("step profile has different limits at +inf and -inf");
        return p0_;
    case ProfileKind::Bump:
        return p0_;
    case ProfileKind::Tabulated:
        return p0_;
    }
    return p0_;
}

double ProfileSpec::min_value() const {
    switch (kind_) {
    case ProfileKind::Constant:
        return p0_;
    case ProfileKind::Step:
        return std::min(p0_, p1_);
    case ProfileKind::Bump:
        // exp factor ranges over (0, 1]
        return std::min(p0_, p0_ + p1_);
    case ProfileKind::Tabulated: {
        double m = p0_;
        for (double v : tv_) m = std::min(m, v);
        return m;
    }
    }
    return p0_;
}

double ProfileSpec::max_value() const {
    switch (kind_) {
    case ProfileKind::Constant:
        return p0_;
    case ProfileKind::Step:
        return std::max(p0_, p1_);
    case ProfileKind::Bump:
        return std::max(p0_, p0_ + p1_);
    case ProfileKind::Tabulated: {
        double m = p0_;
        for (double v : tv_) m = std::max(m, v);
        return m;
    }
    }
    return p0_;
}

double ProfileSpec::param(int i) const {
    switch (i) {
    case 0: return p0_;
    case 1: return p1_;
    case 2: return p2_;
    case 3: return p3_;
    default: throw InvalidArgument("ProfileSpec::param index");
    }
}

double evaluate_profile(const ProfileSpec& spec, double x) {
    if (!std::isfinite(x)) throw InvalidArgument("evaluate_profile: non-finite x");
    const double v = spec(x);
    if (!std::isfinite(v)) throw InvalidProfile("profile evaluated to a non-finite value");
    return v;
}

CoefficientProfile::CoefficientProfile(ProfileSpec r_, ProfileSpec gamma_, ProfileSpec mu1_,
                                       ProfileSpec mu2_, double D_, double nu_, double K1_,
                                       double K2_, double homogenization_radius_)
    : r(std::move(r_)), gamma(std::move(gamma_)), mu1(std::move(mu1_)), mu2(std::move(mu2_)),
      D(D_), nu(nu_), K1(K1_), K2(K2_), homogenization_radius(homogenization_radius_) {
    if (!(D > 0.0) || !std::isfinite(D)) throw InvalidProfile("D must be positive and finite");
    if (!std::isfinite(nu)) throw InvalidProfile("nu must be finite");
    if (!(K1 > 0.0) || !std::isfinite(K1)) throw InvalidProfile("K1 must be positive and finite");
    if (!(K2 > 0.0) || !std::isfinite(K2)) throw InvalidProfile("K2 must be positive and finite");
    if (!(homogenization_radius > 0.0))
        throw InvalidProfile("homogenization radius must be positive");

    const char* names[4] = {"r", "gamma", "mu1", "mu2"};
    const ProfileSpec* specs[4] = {&r, &gamma, &mu1, &mu2};
    for (int i = 0; i < 4; ++i) {
        if (!specs[i]->has_symmetric_limits())
            throw InvalidProfile(std::string("rate ") + names[i] +
                                 ": far-field limits differ between +inf and -inf");
        if (!(specs[i]->min_value() > 0.0))
            throw InvalidProfile(std::string("rate ") + names[i] +
                                 " must be strictly positive everywhere");
    }
}

CoefficientProfile CoefficientProfile::homogeneous(double r, double gamma, double mu1, double mu2,
                                                   double D, double nu, double K1, double K2) {
    return CoefficientProfile(ProfileSpec::constant(r), ProfileSpec::constant(gamma),
                              ProfileSpec::constant(mu1), ProfileSpec::constant(mu2),
                              D, nu, K1, K2);
}

AssumptionHVerdict check_assumption_H(const CoefficientProfile& p, double tolerance) {
    AssumptionHVerdict v;
    const double ri = p.r_inf(), gi = p.gamma_inf(), m1 = p.mu1_inf(), m2 = p.mu2_inf();
    v.margin = ri * gi / (m2 + gi) - m1;
    v.holds = v.margin > 0.0;

    // sample each rate beyond the homogenization radius and compare with the
    // declared limit
    const double R = p.homogenization_radius;
    const double probes[8] = {R, 1.25 * R, 2.0 * R, 4.0 * R, -R, -1.25 * R, -2.0 * R, -4.0 * R};
    const ProfileSpec* specs[4] = {&p.r, &p.gamma, &p.mu1, &p.mu2};
    const double limits[4] = {ri, gi, m1, m2};
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (double x : probes) {
            const double val = evaluate_profile(*specs[i], x);
            const double dev = std::abs(val - limits[i]) / std::max(std::abs(limits[i]), 1e-300);
            worst = std::max(worst, dev);
        }
    }
    v.max_farfield_deviation = worst;
    v.farfield_matches = worst <= tolerance;
    return v;
}

AdvectionVerdict check_small_advection(const CoefficientProfile& p) {
    const auto h = check_assumption_H(p);
    if (!h.holds)
        throw InvalidArgument("check_small_advection requires a positive persistence margin");
    const double gi = p.gamma_inf(), m2 = p.mu2_inf();
    AdvectionVerdict v;
    v.bound = 2.0 * p.D * std::sqrt((p.r_inf() * gi - p.mu1_inf() * (m2 + gi)) / (m2 + gi));
    v.nu_abs = std::abs(p.nu);
    v.pass = v.nu_abs < v.bound;
    return v;
}

} // namespace mosqfront
