#include "mosqfront/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mosqfront/errors.hpp"

namespace mosqfront {

void Tridiagonal::solve(std::vector<double>& rhs, std::vector<double>& scratch) const {
    const std::size_t n = size();
    if (rhs.size() != n) throw InvalidArgument("tridiagonal solve: size mismatch");
    if (n == 0) return;
    scratch.resize(n);

    // forward sweep
    double piv = diag[0];
    if (piv == 0.0) throw NumericalBlowup("tridiagonal solve: zero pivot");
    scratch[0] = upper[0] / piv;
    rhs[0] /= piv;
    for (std::size_t i = 1; i < n; ++i) {
        piv = diag[i] - lower[i] * scratch[i - 1];
        if (piv == 0.0) throw NumericalBlowup("tridiagonal solve: zero pivot");
        scratch[i] = upper[i] / piv;
        rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / piv;
    }
    // back substitution
    for (std::size_t i = n - 1; i-- > 0;)
        rhs[i] -= scratch[i] * rhs[i + 1];
}

std::vector<double> Tridiagonal::solve(std::vector<double> rhs) const {
    std::vector<double> scratch;
    solve(rhs, scratch);
    return rhs;
}

void Tridiagonal::apply(const std::vector<double>& x, std::vector<double>& y) const {
    const std::size_t n = size();
    y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = diag[i] * x[i];
        if (i > 0) s += lower[i] * x[i - 1];
        if (i + 1 < n) s += upper[i] * x[i + 1];
        y[i] = s;
    }
}

int sturm_count(const std::vector<double>& diag, double off, double sigma) {
    // LDL^T of (T - sigma I); the number of negative pivots equals the
    // number of eigenvalues below sigma.
    const double off2 = off * off;
    const double tiny = std::numeric_limits<double>::min();
    int count = 0;
    double d = std::numeric_limits<double>::infinity(); // first pivot has no predecessor
    for (double a : diag) {
        d = (a - sigma) - off2 / d;
        if (d == 0.0) d = tiny;
        if (d < 0.0) ++count;
    }
    return count;
}

double smallest_eigenvalue_sturm(const std::vector<double>& diag, double off, double rel_tol) {
    if (diag.empty()) throw InvalidArgument("sturm: empty matrix");
    // Gershgorin bounds
    double lo = diag[0], hi = diag[0];
    for (std::size_t i = 0; i < diag.size(); ++i) {
        double r = (i == 0 || i + 1 == diag.size()) ? std::abs(off) : 2.0 * std::abs(off);
        if (diag.size() == 1) r = 0.0;
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    const double scale = std::max({std::abs(lo), std::abs(hi), 1.0});
    const double tol = std::max(rel_tol * scale, 4.0 * std::numeric_limits<double>::epsilon() * scale);
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(diag, off, mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

double lagrange_uniform(const std::vector<double>& values, double y0, double dy,
                        double y, int order) {
    const int n = static_cast<int>(values.size());
    if (n == 0) throw InvalidArgument("interpolation: empty data");
    if (n == 1) return values[0];
    if (order < 2) order = 2;
    if (order > n) order = n;

    const double ymax = y0 + dy * (n - 1);
    if (y < y0) y = y0;
    if (y > ymax) y = ymax;

    // stencil start so the query sits centrally, clamped to the grid
    double s = (y - y0) / dy;
    int first = static_cast<int>(std::floor(s)) - (order - 1) / 2;
    first = std::clamp(first, 0, n - order);

    double result = 0.0;
    for (int j = 0; j < order; ++j) {
        double w = 1.0;
        for (int k = 0; k < order; ++k) {
            if (k == j) continue;
            w *= (s - (first + k)) / static_cast<double>(j - k);
        }
        result += w * values[first + j];
    }
    return result;
}

double monotone_cubic_uniform(const std::vector<double>& values, double y0, double dy,
                              double y) {
    const int n = static_cast<int>(values.size());
    if (n == 0) throw InvalidArgument("interpolation: empty data");
    if (n == 1) return values[0];

    const double ymax = y0 + dy * (n - 1);
    if (y < y0) y = y0;
    if (y > ymax) y = ymax;

    int cell = static_cast<int>(std::floor((y - y0) / dy));
    cell = std::clamp(cell, 0, n - 2);
    const double theta = (y - (y0 + cell * dy)) / dy;

    // secant through a cell, one-sided copies past the ends
    auto secant = [&](int c) {
        c = std::clamp(c, 0, n - 2);
        return (values[c + 1] - values[c]) / dy;
    };
    // limited node slope: zero at extrema, magnitude capped at 3x both secants
    auto slope = [&](int i) {
        const double dl = secant(i - 1), dr = secant(i);
        if (dl * dr <= 0.0) return 0.0;
        const double m = 0.5 * (dl + dr);
        const double cap = 3.0 * std::min(std::abs(dl), std::abs(dr));
        return std::copysign(std::min(std::abs(m), cap), m);
    };

    const double s0 = slope(cell), s1 = slope(cell + 1);
    const double t2 = theta * theta, t3 = t2 * theta;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + theta;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * values[cell] + h10 * dy * s0 + h01 * values[cell + 1] + h11 * dy * s1;
}

} // namespace mosqfront
