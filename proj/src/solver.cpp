#include "mosqfront/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "mosqfront/errors.hpp"

namespace mosqfront {

namespace {

std::string describe_interval(double g, double h) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "g=%.17g, h=%.17g", g, h);
    return buf;
}

} // namespace

// ---- state helpers ------------------------------------------------------

double SimulationState::M_at(double x, int order) const {
    if (x <= g || x >= h) return 0.0; // fields extend by zero beyond the fronts
    const FrontFixMap map(g, h, h0);
    return lagrange_uniform(M, -h0, 2.0 * h0 / N(), map.y_of_x(x), order);
}

double SimulationState::A_at(double x, int order) const {
    if (x <= g || x >= h) return 0.0;
    const FrontFixMap map(g, h, h0);
    return lagrange_uniform(A, -h0, 2.0 * h0 / N(), map.y_of_x(x), order);
}

InitialData InitialData::cosine(double h0, double amp_M, double amp_A) {
    if (!std::isfinite(h0) || !(h0 > 0.0))
        throw InvalidArgument("initial half-width must be positive and finite");
    if (!std::isfinite(amp_M) || !(amp_M > 0.0) || !std::isfinite(amp_A) || !(amp_A > 0.0))
        throw InvalidArgument("cosine initial amplitudes must be positive and finite");
    InitialData d;
    d.h0 = h0;
    d.M0 = [h0, amp_M](double x) {
        if (std::abs(x) >= h0) return 0.0;
        return amp_M * std::cos(std::numbers::pi * x / (2.0 * h0));
    };
    d.A0 = [h0, amp_A](double x) {
        if (std::abs(x) >= h0) return 0.0;
        return amp_A * std::cos(std::numbers::pi * x / (2.0 * h0));
    };
    return d;
}

InitialData InitialData::scaled(double factor) const {
    if (!std::isfinite(factor) || !(factor > 0.0))
        throw InvalidArgument("initial scale factor must be positive");
    InitialData d;
    d.h0 = h0;
    auto m = M0;
    auto a = A0;
    d.M0 = [m, factor](double x) { return factor * m(x); };
    d.A0 = [a, factor](double x) { return factor * a(x); };
    return d;
}

void SolverConfig::validate() const {
    if (N < 16 || N % 2 != 0)
        throw InvalidArgument("resolution N must be an even integer >= 16");
    if (dt_policy == DtPolicy::Fixed) {
        if (!std::isfinite(dt) || !(dt > 0.0))
            throw InvalidArgument("fixed time step must be positive");
    } else {
        if (!std::isfinite(cfl_factor) || !(cfl_factor > 0.0))
            throw InvalidArgument("cfl factor must be positive");
    }
    if (!std::isfinite(mu) || !(mu > 0.0))
        throw InvalidArgument("expansion capability mu must be positive");
    if (!std::isfinite(horizon) || horizon < 0.0)
        throw InvalidArgument("horizon must be nonnegative");
    if (boundary_stencil_order != 1 && boundary_stencil_order != 2)
        throw InvalidArgument("boundary stencil order must be 1 or 2");
}

double SolverConfig::step_size(double h0) const {
    if (dt_policy == DtPolicy::Fixed) return dt;
    const double dy = 2.0 * h0 / N;
    return cfl_factor * dy * dy;
}

// ---- front-fixing map ---------------------------------------------------

FrontFixMap::FrontFixMap(double g_, double h_, double h0_) : g(g_), h(h_), h0(h0_) {
    if (!std::isfinite(g) || !std::isfinite(h) || !(h > g))
        throw DegenerateDomain("collapsed domain: requires h > g (" + describe_interval(g, h) + ")");
    if (!std::isfinite(h0) || !(h0 > 0.0))
        throw DegenerateDomain("computational half-width must be positive");
}

// ---- stepper ------------------------------------------------------------

Stepper::Stepper(const CoefficientProfile& profile, const SolverConfig& config)
    : profile_(profile), config_(config), sys_(static_cast<std::size_t>(config.N - 1)) {
    config_.validate();
    const std::size_t interior = static_cast<std::size_t>(config_.N - 1);
    rhs_.assign(interior, 0.0);
    scratch_.assign(interior, 0.0);
    M_new_.assign(static_cast<std::size_t>(config_.N + 1), 0.0);
    A_old_.assign(static_cast<std::size_t>(config_.N + 1), 0.0);
}

Stepper::FrontSpeeds Stepper::step(SimulationState& state, double dt) {
    if (!std::isfinite(dt) || !(dt > 0.0)) throw InvalidArgument("step size must be positive");
    const int N = config_.N;
    if (state.N() != N || static_cast<int>(state.A.size()) != N + 1)
        throw InvalidArgument("state resolution does not match the stepper configuration");
    const double h0 = state.h0;
    const double dy = 2.0 * h0 / N;
    const double K1 = profile_.K1, K2 = profile_.K2;

    // (i) Stefan update from one-sided slopes of the previous field.  The
    // computational slope converts to a physical one through the old width.
    double slope_r, slope_l; // M_y at +h0 and -h0 (endpoint values are zero)
    if (config_.boundary_stencil_order == 2) {
        slope_r = (-4.0 * state.M[N - 1] + state.M[N - 2]) / (2.0 * dy);
        slope_l = (4.0 * state.M[1] - state.M[2]) / (2.0 * dy);
    } else {
        slope_r = -state.M[N - 1] / dy;
        slope_l = state.M[1] / dy;
    }
    const double old_scale = 2.0 * h0 / (state.h - state.g);
    FrontSpeeds v;
    v.hp = std::max(0.0, -config_.mu * slope_r * old_scale);
    v.gp = std::min(0.0, -config_.mu * slope_l * old_scale);
    const double h_new = state.h + dt * v.hp;
    const double g_new = state.g + dt * v.gp;
    const FrontFixMap map(g_new, h_new, h0);

    // (ii) winged stage: implicit diffusion + upwind advection, explicit reaction
    const double B = map.diffusion_coef(profile_.D);
    const double bdt = dt * B / (dy * dy);
    for (int i = 1; i < N; ++i) {
        const double y = -h0 + i * dy;
        const double x = map.x_of_y(y);
        const double a = map.advection_coef(y, v.hp, v.gp, profile_.nu);
        const double ap = std::max(a, 0.0), am = std::max(-a, 0.0);
        const std::size_t k = static_cast<std::size_t>(i - 1);
        sys_.lower[k] = -(bdt + dt * am / dy);
        sys_.upper[k] = -(bdt + dt * ap / dy);
        sys_.diag[k] = 1.0 + 2.0 * bdt + dt * (ap + am) / dy;
        const double Mi = state.M[i], Ai = state.A[i];
        rhs_[k] = Mi + dt * (profile_.gamma(x) * Ai * (1.0 - Mi / K1) - profile_.mu1(x) * Mi);
    }
    sys_.solve(rhs_, scratch_);
    M_new_[0] = M_new_[N] = 0.0;
    for (int i = 1; i < N; ++i) M_new_[i] = rhs_[static_cast<std::size_t>(i - 1)];

    // (iii) aquatic stage: the immobile stage is only carried by the moving
    // mesh, so remap it along the mesh characteristics (monotone cubic keeps
    // the values inside the local data range, hence inside [0, K2]), then
    // apply the exact update of the local ODE
    //   A' = r*Mbar - (r*Mbar/K2 + mu2 + gamma)*A  with M frozen over the step.
    A_old_ = state.A;
    for (int i = 1; i < N; ++i) {
        const double y = -h0 + i * dy;
        const double foot = y + dt * map.mesh_drift_coef(y, v.hp, v.gp);
        const double x = map.x_of_y(y);
        const double mbar = 0.5 * (state.M[i] + M_new_[i]);
        const double r = profile_.r(x);
        const double lambda = r * mbar / K2 + profile_.mu2(x) + profile_.gamma(x);
        const double a_inf = r * mbar / lambda;
        const double a_tilde = monotone_cubic_uniform(A_old_, -h0, dy, foot);
        state.A[i] = a_inf + (a_tilde - a_inf) * std::exp(-lambda * dt);
    }
    state.A[0] = state.A[static_cast<std::size_t>(N)] = 0.0;
    state.M.swap(M_new_);

    // (v) discrete bound assertions with a tight tolerance band
    const double tol1 = 1e-10 * K1, tol2 = 1e-10 * K2;
    for (int i = 0; i <= N; ++i) {
        double& m = state.M[i];
        double& a = state.A[i];
        if (!std::isfinite(m) || !std::isfinite(a))
            throw NumericalBlowup("non-finite field value after step at node " + std::to_string(i));
        if (m < -tol1 || m > K1 + tol1 || a < -tol2 || a > K2 + tol2) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "field bounds violated at node %d (M=%.17g, A=%.17g); reduce the time step",
                          i, m, a);
            throw SchemeInstability(buf);
        }
        m = std::min(std::max(m, 0.0), K1);
        a = std::min(std::max(a, 0.0), K2);
    }

    state.g = g_new;
    state.h = h_new;
    state.t += dt;
    return v;
}

// ---- run ----------------------------------------------------------------

namespace {

SimulationState sample_initial(const CoefficientProfile& profile, const InitialData& init,
                               int N) {
    if (!init.M0 || !init.A0) throw InvalidArgument("initial data functions must be set");
    if (!std::isfinite(init.h0) || !(init.h0 > 0.0))
        throw InvalidArgument("initial half-width must be positive");
    SimulationState s;
    s.t = 0.0;
    s.h0 = init.h0;
    s.g = -init.h0;
    s.h = init.h0;
    s.M.assign(static_cast<std::size_t>(N + 1), 0.0);
    s.A.assign(static_cast<std::size_t>(N + 1), 0.0);
    const double dy = 2.0 * init.h0 / N;
    const double end_tol1 = 1e-9 * profile.K1, end_tol2 = 1e-9 * profile.K2;
    for (int side = 0; side <= 1; ++side) {
        const double x = side ? init.h0 : -init.h0;
        if (std::abs(init.M0(x)) > end_tol1 || std::abs(init.A0(x)) > end_tol2)
            throw InvalidArgument("initial densities must vanish at the interval endpoints");
    }
    for (int i = 1; i < N; ++i) {
        const double x = -init.h0 + i * dy;
        const double m = init.M0(x), a = init.A0(x);
        if (!std::isfinite(m) || !std::isfinite(a))
            throw InvalidArgument("initial densities must be finite");
        if (!(m > 0.0) || !(a > 0.0))
            throw InvalidArgument("initial densities must be strictly positive inside the interval");
        if (!(m < profile.K1) || !(a < profile.K2))
            throw InvalidArgument("initial densities must stay strictly below the carrying capacities");
        s.M[i] = m;
        s.A[i] = a;
    }
    return s;
}

void record_history(FieldHistory& hist, const SimulationState& s) {
    if (!hist.t.empty() && hist.t.back() == s.t) return;
    hist.t.push_back(s.t);
    hist.g.push_back(s.g);
    hist.h.push_back(s.h);
    hist.M.push_back(s.M);
    if (hist.t.size() == 1) hist.A0 = s.A;
}

} // namespace

Trajectory run(const CoefficientProfile& profile, const InitialData& init,
               const SolverConfig& config, const RunOptions& options) {
    config.validate();
    SimulationState state = sample_initial(profile, init, config.N);

    std::vector<double> targets = options.output_times;
    for (double t : targets)
        if (!std::isfinite(t) || t < 0.0) throw InvalidArgument("output times must be nonnegative");
    targets.push_back(config.horizon);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    while (!targets.empty() && targets.back() > config.horizon) targets.pop_back();

    Trajectory traj;
    traj.h0 = init.h0;
    traj.N = config.N;
    if (options.history) {
        options.history->h0 = init.h0;
        options.history->N = config.N;
        options.history->t.clear();
        options.history->g.clear();
        options.history->h.clear();
        options.history->M.clear();
        options.history->A0.clear();
        record_history(*options.history, state);
    }
    traj.snapshots.push_back(state);
    if (options.stop_rule && options.stop_rule(state)) return traj;

    Stepper stepper(profile, config);
    const double dt_nominal = config.step_size(init.h0);
    long step_index = 0;
    for (double target : targets) {
        if (target <= 0.0) continue;
        while (state.t < target) {
            const double dt = std::min(dt_nominal, target - state.t);
            stepper.step(state, dt);
            ++step_index;
            if (target - state.t < 1e-12 * std::max(1.0, target)) state.t = target;
            const bool landed = state.t == target;
            if (options.history &&
                (landed || (options.record_every > 0 && step_index % options.record_every == 0)))
                record_history(*options.history, state);
        }
        traj.snapshots.push_back(state);
        if (options.stop_rule && options.stop_rule(state)) break;
    }
    return traj;
}

// ---- integral representation of the aquatic stage ------------------------
//
// Along the fixed physical probe x_p (the node's initial position),
//   A(t) = e^{-(r/K2) I(t) - (mu2+gamma) t} A(0)
//        + \int_0^t r m(tau) e^{(r/K2)(I(tau)-I(t)) + (mu2+gamma)(tau-t)} dtau
// with m(tau) = M(tau, x_p) and I its running integral.  m is taken piecewise
// linear between records, so I is piecewise quadratic and the integrand is
// evaluated exactly at Simpson nodes.

double reconstruct_A_integral(const CoefficientProfile& profile,
                              const FieldHistory& history, int node, double t) {
    const std::size_t n = history.t.size();
    if (n == 0) throw MissingHistory("field history is empty");
    if (history.N <= 0 || static_cast<std::size_t>(history.N + 1) != history.A0.size())
        throw MissingHistory("field history lacks the initial aquatic record");
    if (node < 0 || node > history.N) throw InvalidArgument("node index out of range");
    const double t0 = history.t.front();
    double t_end = history.t.back();
    if (t < t0 - 1e-12 || t > t_end * (1.0 + 1e-12) + 1e-15)
        throw MissingHistory("field history does not cover the queried time");
    t = std::min(t, t_end);
    if (t <= t0) return history.A0[static_cast<std::size_t>(node)];

    const double h0 = history.h0;
    const double dy = 2.0 * h0 / history.N;
    const double y0 = -h0 + node * dy;
    const FrontFixMap first(history.g.front(), history.h.front(), h0);
    const double x_p = first.x_of_y(y0);

    const double r = profile.r(x_p);
    const double decay = profile.mu2(x_p) + profile.gamma(x_p);
    const double rk = r / profile.K2;

    // m_k = M(t_k, x_p) by interpolation in the frame of record k
    std::vector<double> tm, mm;
    tm.reserve(n);
    mm.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const FrontFixMap map(history.g[k], history.h[k], h0);
        tm.push_back(history.t[k]);
        mm.push_back(lagrange_uniform(history.M[k], -h0, dy, map.y_of_x(x_p)));
        if (history.t[k] >= t) break;
    }
    const std::size_t m = tm.size();
    if (m < 2 || tm.back() < t - 1e-12) throw MissingHistory("field history does not cover the queried time");

    // running integral of m (trapezoid, exact for piecewise-linear m)
    std::vector<double> I(m, 0.0);
    for (std::size_t k = 1; k < m; ++k)
        I[k] = I[k - 1] + 0.5 * (mm[k] + mm[k - 1]) * (tm[k] - tm[k - 1]);

    auto m_at = [&](std::size_t k, double tau) {
        const double w = (tau - tm[k]) / (tm[k + 1] - tm[k]);
        return mm[k] * (1.0 - w) + mm[k + 1] * w;
    };
    auto I_at = [&](std::size_t k, double tau) {
        const double d = tau - tm[k];
        return I[k] + mm[k] * d + 0.5 * (m_at(k, tau) - mm[k]) * d;
    };
    const double I_t = I_at(m - 2, std::min(t, tm.back()));

    auto integrand = [&](std::size_t k, double tau) {
        return r * m_at(k, tau) * std::exp(rk * (I_at(k, tau) - I_t) + decay * (tau - t));
    };

    double integral = 0.0;
    for (std::size_t k = 0; k + 1 < m; ++k) {
        const double a = tm[k];
        const double b = std::min(t, tm[k + 1]);
        if (b <= a) break;
        const double mid = 0.5 * (a + b);
        integral += (b - a) / 6.0 * (integrand(k, a) + 4.0 * integrand(k, mid) + integrand(k, b));
        if (b >= t) break;
    }

    const double A0 = history.A0[static_cast<std::size_t>(node)];
    return std::exp(-rk * I_t - decay * (t - t0)) * A0 + integral;
}

} // namespace mosqfront
