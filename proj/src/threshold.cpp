#include "mosqfront/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "mosqfront/errors.hpp"
#include "mosqfront/numerics.hpp"

namespace mosqfront {

namespace {

void check_interval(double p, double q, int resolution) {
    if (!std::isfinite(p) || !std::isfinite(q) || !(q > p))
        throw InvalidArgument("interval must satisfy q > p");
    if (resolution < 16) throw InvalidArgument("eigen resolution must be at least 16");
}

struct Grid {
    double p, dx;
    int n; // interior node count
    double x(int i) const { return p + (i + 1) * dx; } // i = 0 .. n-1
};

Grid make_grid(double p, double q, int resolution) {
    return Grid{p, (q - p) / resolution, resolution - 1};
}

} // namespace

ThresholdReport compute_R0(double p, double q, const CoefficientProfile& profile,
                           int resolution) {
    check_interval(p, q, resolution);
    const Grid grid = make_grid(p, q, resolution);
    const int n = grid.n;
    const double D = profile.D, nu = profile.nu;
    const double off = -D / (grid.dx * grid.dx);
    const double shift = nu * nu / (4.0 * D);

    Tridiagonal L(static_cast<std::size_t>(n));
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x = grid.x(i);
        L.lower[i] = off;
        L.upper[i] = off;
        L.diag[i] = 2.0 * D / (grid.dx * grid.dx) + shift + profile.mu1(x);
        w[i] = profile.r(x) * profile.gamma(x) / (profile.mu2(x) + profile.gamma(x));
    }

    std::vector<double> v(static_cast<std::size_t>(n), 1.0);
    std::vector<double> z(static_cast<std::size_t>(n)), scratch(static_cast<std::size_t>(n));
    std::vector<double> Lv(static_cast<std::size_t>(n));
    double theta = 0.0;
    bool converged = false;
    const int max_iter = 10000;
    int used = 0;
    for (int it = 0; it < max_iter; ++it) {
        ++used;
        double num = 0.0, den = 0.0;
        L.apply(v, Lv);
        for (int i = 0; i < n; ++i) {
            num += v[i] * w[i] * v[i];
            den += v[i] * Lv[i];
        }
        const double theta_new = num / den;
        if (it > 0 && std::abs(theta_new - theta) <= 1e-12 * std::abs(theta_new)) {
            theta = theta_new;
            converged = true;
            break;
        }
        theta = theta_new;
        for (int i = 0; i < n; ++i) z[i] = w[i] * v[i];
        L.solve(z, scratch);
        const double norm = sup_norm(z);
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw EigenNoConvergence("power iteration produced a degenerate iterate");
        for (int i = 0; i < n; ++i) v[i] = z[i] / norm;
    }
    if (!converged) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "power iteration did not converge in %d iterations (last R0^2=%.17g)",
                      used, theta);
        throw EigenNoConvergence(buf);
    }

    ThresholdReport rep;
    rep.p = p;
    rep.q = q;
    rep.resolution = resolution;
    rep.R0 = std::sqrt(theta);

    // un-gauge and attach the pair, endpoint zeros included
    rep.eigen_M.assign(static_cast<std::size_t>(resolution + 1), 0.0);
    rep.eigen_A.assign(static_cast<std::size_t>(resolution + 1), 0.0);
    if (v[n / 2] < 0.0)
        for (auto& vi : v) vi = -vi;
    for (int i = 0; i < n; ++i) {
        const double x = grid.x(i);
        const double phi = std::exp(nu * x / (2.0 * D)) * v[i];
        rep.eigen_M[i + 1] = phi;
        rep.eigen_A[i + 1] =
            profile.r(x) * phi / (rep.R0 * (profile.mu2(x) + profile.gamma(x)));
    }
    const double s = sup_norm(rep.eigen_M) + sup_norm(rep.eigen_A);
    for (auto& e : rep.eigen_M) e /= s;
    for (auto& e : rep.eigen_A) e /= s;
    return rep;
}

double compute_lambda0(double p, double q, const CoefficientProfile& profile,
                       int resolution) {
    check_interval(p, q, resolution);
    const Grid grid = make_grid(p, q, resolution);
    const int n = grid.n;
    const double D = profile.D;
    const double off = -D / (grid.dx * grid.dx);
    const double shift = profile.nu * profile.nu / (4.0 * D) + 2.0 * D / (grid.dx * grid.dx);

    std::vector<double> r(n), gam(n), m1(n), m2(n);
    double rate_max = 0.0, mg_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double x = grid.x(i);
        r[i] = profile.r(x);
        gam[i] = profile.gamma(x);
        m1[i] = profile.mu1(x);
        m2[i] = profile.mu2(x);
        rate_max = std::max({rate_max, r[i], gam[i], m1[i], m2[i]});
        mg_min = std::min(mg_min, m2[i] + gam[i]);
    }

    std::vector<double> diag(n);
    auto kappa = [&](double lambda) {
        for (int i = 0; i < n; ++i)
            diag[i] = shift + m1[i] - r[i] * gam[i] / (m2[i] + gam[i] - lambda);
        return smallest_eigenvalue_sturm(diag, off);
    };

    double lo = -10.0 * rate_max;
    double hi = mg_min - 1e-6;
    auto fail = [&](double flo, double fhi) {
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "no sign change for lambda0 in [%.17g, %.17g]: F(lo)=%.17g, F(hi)=%.17g",
                      lo, hi, flo, fhi);
        throw BracketFailure(buf);
    };
    if (!(lo < hi)) fail(0.0, 0.0);
    double flo = kappa(lo) - lo;
    double fhi = kappa(hi) - hi;
    if (!(flo >= 0.0) || !(fhi <= 0.0)) fail(flo, fhi);
    while (hi - lo > 1e-8) {
        const double mid = 0.5 * (lo + hi);
        const double f = kappa(mid) - mid;
        if (f > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

ThresholdReport make_threshold_report(double p, double q, const CoefficientProfile& profile,
                                      int resolution) {
    ThresholdReport rep = compute_R0(p, q, profile, resolution);
    rep.lambda0 = compute_lambda0(p, q, profile, resolution);
    return rep;
}

std::vector<R0FPoint> r0f_trace(const Trajectory& traj, const CoefficientProfile& profile,
                                int resolution) {
    if (traj.empty()) throw InvalidArgument("trajectory must contain at least one snapshot");
    std::vector<R0FPoint> trace;
    trace.reserve(traj.snapshots.size());
    for (const auto& s : traj.snapshots)
        trace.push_back({s.t, compute_R0(s.g, s.h, profile, resolution).R0});
    return trace;
}

} // namespace mosqfront
