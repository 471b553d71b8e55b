#include "mosqfront/steady.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "mosqfront/errors.hpp"
#include "mosqfront/numerics.hpp"
#include "mosqfront/threshold.hpp"

namespace mosqfront {

double close_A(double M, double x, const CoefficientProfile& profile) {
    const double r = profile.r(x);
    return r * M / (r * M / profile.K2 + profile.mu2(x) + profile.gamma(x));
}

double reaction_per_density(double M, double x, const CoefficientProfile& profile) {
    const double r = profile.r(x);
    return profile.gamma(x) * r * (1.0 - M / profile.K1) /
               (r * M / profile.K2 + profile.mu2(x) + profile.gamma(x)) -
           profile.mu1(x);
}

namespace {

// The truncation is solved in the exponentially gauged frame u = e^{-s} M,
// s = nu x / (2D), where the stationary operator becomes the symmetric
// tridiagonal T0 = -D d_xx + nu^2/(4D) and the certificates below are exact
// discrete identities (no commutation error against the eigenfunction).
struct TruncProblem {
    double L, dx, c;
    int n; // interior nodes
    const CoefficientProfile* p;
    std::vector<double> x, es, esi;         // coordinates, e^{s}, e^{-s}
    std::vector<double> r, gam, m1, m2;
    Tridiagonal T0;

    TruncProblem(double L_, const CoefficientProfile& prof, int resolution)
        : L(L_), dx(2.0 * L_ / resolution), c(0.0), n(resolution - 1), p(&prof),
          T0(static_cast<std::size_t>(resolution - 1)) {
        const double D = prof.D, nu = prof.nu;
        if (std::abs(nu) * L / (2.0 * D) > 300.0)
            throw InvalidArgument("advection-domain product too large for the gauged truncation");
        x.resize(n);
        es.resize(n);
        esi.resize(n);
        r.resize(n);
        gam.resize(n);
        m1.resize(n);
        m2.resize(n);
        for (int i = 0; i < n; ++i) {
            x[i] = -L + (i + 1) * dx;
            const double s = nu * x[i] / (2.0 * D);
            es[i] = std::exp(s);
            esi[i] = std::exp(-s);
            r[i] = prof.r(x[i]);
            gam[i] = prof.gamma(x[i]);
            m1[i] = prof.mu1(x[i]);
            m2[i] = prof.mu2(x[i]);
            c = std::max(c, gam[i] * (r[i] / (m2[i] + gam[i]) + prof.K2 / prof.K1) + m1[i]);
        }
        const double off = -D / (dx * dx);
        const double d0 = 2.0 * D / (dx * dx) + nu * nu / (4.0 * D);
        for (int i = 0; i < n; ++i) {
            T0.lower[i] = off;
            T0.upper[i] = off;
            T0.diag[i] = d0;
        }
    }

    double F(int i, double M) const {
        const double S = r[i] * M / (r[i] * M / p->K2 + m2[i] + gam[i]);
        return gam[i] * S * (1.0 - M / p->K1) - m1[i] * M;
    }
    double dF(int i, double M) const {
        const double den = r[i] * M / p->K2 + m2[i] + gam[i];
        const double S = r[i] * M / den;
        const double Sp = r[i] * (m2[i] + gam[i]) / (den * den);
        return gam[i] * (Sp * (1.0 - M / p->K1) - S / p->K1) - m1[i];
    }
    // gauged reaction H(u)_i = e^{-s_i} F(e^{s_i} u_i)
    double H(int i, double u) const { return esi[i] * F(i, es[i] * u); }

    // rows of T0 v - H(v), the gauged discrete residual
    void residual(const std::vector<double>& u, std::vector<double>& out) const {
        T0.apply(u, out);
        for (int i = 0; i < n; ++i) out[i] -= H(i, u[i]);
    }
    // reported in density units: row i of the conjugated operator on M
    double residual_sup_M(const std::vector<double>& u, std::vector<double>& work) const {
        residual(u, work);
        double m = 0.0;
        for (int i = 0; i < n; ++i) m = std::max(m, std::abs(es[i] * work[i]));
        return m;
    }
};

// gauged principal eigenvector of T(lambda0) by inverse iteration (SPD shift)
std::vector<double> principal_gauged_eigenvector(const TruncProblem& tp, double lambda0) {
    const int n = tp.n;
    const double eps = 1e-6 * (1.0 + std::abs(lambda0));
    Tridiagonal A(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        A.lower[i] = tp.T0.lower[i];
        A.upper[i] = tp.T0.upper[i];
        A.diag[i] = tp.T0.diag[i] + tp.m1[i] -
                    tp.r[i] * tp.gam[i] / (tp.m2[i] + tp.gam[i] - lambda0) - (lambda0 - eps);
    }
    std::vector<double> v(static_cast<std::size_t>(n), 1.0), prev(static_cast<std::size_t>(n)),
        scratch(static_cast<std::size_t>(n));
    for (int it = 0; it < 500; ++it) {
        prev = v;
        A.solve(v, scratch);
        const double norm = sup_norm(v);
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw EigenNoConvergence("inverse iteration for the lower-solution eigenvector failed");
        for (auto& vi : v) vi /= norm;
        double change = 0.0;
        for (int i = 0; i < n; ++i) change = std::max(change, std::abs(v[i] - prev[i]));
        if (change < 1e-13) return v;
    }
    throw EigenNoConvergence("inverse iteration for the lower-solution eigenvector stalled");
}

} // namespace

StationarySolution solve_truncated(double L, const CoefficientProfile& profile, int resolution) {
    if (!std::isfinite(L) || !(L > 0.0)) throw InvalidArgument("truncation half-width must be positive");
    if (resolution < 16) throw InvalidArgument("stationary resolution must be at least 16");

    const ThresholdReport gate = compute_R0(-L, L, profile, resolution);
    if (!(gate.R0 > 1.0)) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "truncation (-%g, %g) is subcritical: R0 = %.12g <= 1", L, L, gate.R0);
        throw SubcriticalDomain(buf);
    }
    const double lambda0 = compute_lambda0(-L, L, profile, resolution);
    if (!(lambda0 < -1e-12)) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "truncation (-%g, %g) is numerically critical (lambda0 = %.12g); enlarge it",
                      L, L, lambda0);
        throw SubcriticalDomain(buf);
    }

    TruncProblem tp(L, profile, resolution);
    const int n = tp.n;
    const double K1 = profile.K1;

    // lower solution delta * Psi, halving delta until the discrete
    // subsolution inequality T0(delta Psi) <= H(delta Psi) certifies
    std::vector<double> psi = principal_gauged_eigenvector(tp, lambda0);
    double r_max = 0.0;
    for (int i = 0; i < n; ++i) r_max = std::max(r_max, tp.r[i]);
    double delta = std::min(0.1, std::abs(lambda0) * std::min(profile.K1, profile.K2) / (2.0 * r_max));
    std::vector<double> lower(static_cast<std::size_t>(n)), work(static_cast<std::size_t>(n));
    const double row_scale = 2.0 * profile.D / (tp.dx * tp.dx) + tp.c + 1.0;
    bool certified = false;
    for (int attempt = 0; attempt < 60 && !certified; ++attempt) {
        for (int i = 0; i < n; ++i) lower[i] = delta * psi[i];
        tp.residual(lower, work); // want <= 0 (subsolution)
        certified = true;
        for (int i = 0; i < n; ++i)
            if (work[i] > 1e-11 * row_scale * lower[i] + 1e-300) {
                certified = false;
                break;
            }
        if (!certified) delta *= 0.5;
    }
    if (!certified)
        throw Error("could not certify a discrete lower solution; refine the grid or enlarge L");

    // upper solution K1 (constant in density units)
    std::vector<double> upper(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) upper[i] = K1 * tp.esi[i];
    tp.residual(upper, work); // want >= 0 (supersolution)
    for (int i = 0; i < n; ++i)
        if (work[i] < -1e-11 * row_scale * upper[i] - 1e-300)
            throw Error("carrying capacity failed the discrete supersolution check; refine the grid");

    // monotone sweeps (T0 + c) u_{k+1} = H(u_k) + c u_k, run in lockstep
    Tridiagonal Tc = tp.T0;
    for (int i = 0; i < n; ++i) Tc.diag[i] += tp.c;
    std::vector<double> rhs(static_cast<std::size_t>(n)), scratch(static_cast<std::size_t>(n));
    StationarySolution sol;
    sol.L = L;
    bool up_done = false, lo_done = false;
    int sweeps = 0;
    const int max_sweeps = 200000;
    while ((!up_done || !lo_done) && sweeps < max_sweeps) {
        ++sweeps;
        if (!up_done) {
            for (int i = 0; i < n; ++i) rhs[i] = tp.H(i, upper[i]) + tp.c * upper[i];
            Tc.solve(rhs, scratch);
            double delta_sup = 0.0;
            for (int i = 0; i < n; ++i) {
                const double d = (rhs[i] - upper[i]) * tp.es[i];
                sol.upper_monotone_defect = std::max(sol.upper_monotone_defect, d);
                delta_sup = std::max(delta_sup, std::abs(d));
            }
            upper.swap(rhs);
            up_done = delta_sup < 1e-10;
        }
        if (!lo_done) {
            for (int i = 0; i < n; ++i) rhs[i] = tp.H(i, lower[i]) + tp.c * lower[i];
            Tc.solve(rhs, scratch);
            double delta_sup = 0.0;
            for (int i = 0; i < n; ++i) {
                const double d = (lower[i] - rhs[i]) * tp.es[i];
                sol.lower_monotone_defect = std::max(sol.lower_monotone_defect, d);
                delta_sup = std::max(delta_sup, std::abs(d));
            }
            lower.swap(rhs);
            lo_done = delta_sup < 1e-10;
        }
        for (int i = 0; i < n; ++i)
            sol.ordering_defect =
                std::max(sol.ordering_defect, (lower[i] - upper[i]) * tp.es[i]);
    }
    sol.sweeps = sweeps;
    double gap = 0.0;
    for (int i = 0; i < n; ++i) gap = std::max(gap, (upper[i] - lower[i]) * tp.es[i]);
    sol.sandwich_gap = gap;
    if (!(gap <= 1e-6)) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "monotone sandwich did not close: gap %.6g > 1e-6 at L = %g "
                      "(%d sweeps)", gap, L, sweeps);
        throw UniquenessGapWarning(buf);
    }

    // Newton post-pass from the sandwich midpoint to drive the residual down
    std::vector<double> u(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) u[i] = 0.5 * (upper[i] + lower[i]);
    double best_res = tp.residual_sup_M(u, work);
    std::vector<double> best = u;
    Tridiagonal J = tp.T0;
    for (int newton = 0; newton < 12 && best_res > 1e-12; ++newton) {
        tp.residual(u, rhs);
        for (int i = 0; i < n; ++i) {
            rhs[i] = -rhs[i];
            J.diag[i] = tp.T0.diag[i] - tp.dF(i, tp.es[i] * u[i]);
        }
        J.solve(rhs, scratch);
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            u[i] += rhs[i];
            const double M = tp.es[i] * u[i];
            if (!std::isfinite(M) || M < -1e-9 * K1 || M > K1 * (1.0 + 1e-9)) ok = false;
        }
        if (!ok) break;
        const double res = tp.residual_sup_M(u, work);
        if (res < best_res) {
            best_res = res;
            best = u;
        } else {
            break;
        }
    }

    sol.x.assign(static_cast<std::size_t>(n + 2), 0.0);
    sol.M_star.assign(static_cast<std::size_t>(n + 2), 0.0);
    sol.A_star.assign(static_cast<std::size_t>(n + 2), 0.0);
    sol.x.front() = -L;
    sol.x.back() = L;
    for (int i = 0; i < n; ++i) {
        const double M = std::min(std::max(tp.es[i] * best[i], 0.0), K1);
        sol.x[i + 1] = tp.x[i];
        sol.M_star[i + 1] = M;
        sol.A_star[i + 1] = close_A(M, tp.x[i], profile);
    }
    sol.residual = best_res;
    return sol;
}

std::vector<double> default_L_sequence(const CoefficientProfile& profile, int resolution) {
    double L = 1.0;
    for (int k = 0; k <= 20; ++k, L *= 2.0) {
        if (compute_R0(-L, L, profile, resolution).R0 > 1.05) {
            std::vector<double> seq(5);
            for (int j = 0; j < 5; ++j) seq[j] = L * double(1 << j);
            return seq;
        }
    }
    throw SubcriticalDomain("no dyadic truncation up to 2^20 reaches R0 > 1.05");
}

GlobalStationary solve_global(const CoefficientProfile& profile, int resolution,
                              const std::vector<double>& L_sequence, double window) {
    if (L_sequence.empty()) throw InvalidArgument("truncation sequence must be nonempty");
    for (std::size_t k = 0; k + 1 < L_sequence.size(); ++k)
        if (!(L_sequence[k] < L_sequence[k + 1]))
            throw InvalidArgument("truncation sequence must be strictly increasing");
    if (resolution < 16) throw InvalidArgument("stationary resolution must be at least 16");
    const double L0 = L_sequence.front();
    if (window <= 0.0) window = 0.5 * L0;
    if (!(window < L0))
        throw InvalidArgument("observation window must fit inside the first truncation");

    GlobalStationary out;
    out.window = window;
    const int probes = 401;
    std::vector<double> prev_M;
    double prev_L = 0.0;
    int prev_n = 0;
    for (double L : L_sequence) {
        int nk = static_cast<int>(std::llround(resolution * L / L0));
        if (nk % 2) ++nk;
        nk = std::max(nk, 16);
        StationarySolution sol = solve_truncated(L, profile, nk);
        GlobalConvergenceRow row;
        row.L = L;
        row.residual = sol.residual;
        if (prev_M.empty()) {
            row.sup_diff = std::numeric_limits<double>::quiet_NaN();
        } else {
            double diff = 0.0;
            for (int j = 0; j < probes; ++j) {
                const double xp = -window + 2.0 * window * j / (probes - 1);
                const double a = lagrange_uniform(sol.M_star, -L, 2.0 * L / nk, xp);
                const double b = lagrange_uniform(prev_M, -prev_L, 2.0 * prev_L / prev_n, xp);
                diff = std::max(diff, std::abs(a - b));
            }
            row.sup_diff = diff;
        }
        out.table.push_back(row);
        prev_M = sol.M_star;
        prev_L = L;
        prev_n = nk;
        out.solution = std::move(sol);
    }
    out.converged = out.table.size() >= 2 && out.table.back().sup_diff < 1e-6;
    return out;
}

} // namespace mosqfront
