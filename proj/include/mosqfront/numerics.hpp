#pragma once

#include <cstddef>
#include <vector>

namespace mosqfront {

// ---- tridiagonal systems ----------------------------------------------
//
// Rows are lower[i]*x[i-1] + diag[i]*x[i] + upper[i]*x[i+1] = rhs[i] with
// lower[0] and upper[n-1] ignored.  The callers only build diagonally
// dominant M-matrices, so plain Thomas elimination without pivoting is safe.
struct Tridiagonal {
    std::vector<double> lower, diag, upper;

    explicit Tridiagonal(std::size_t n) : lower(n), diag(n), upper(n) {}
    std::size_t size() const { return diag.size(); }

    // in-place solve; scratch reused between calls by the solvers
    void solve(std::vector<double>& rhs, std::vector<double>& scratch) const;
    std::vector<double> solve(std::vector<double> rhs) const;

    // y = T x
    void apply(const std::vector<double>& x, std::vector<double>& y) const;
};

// Smallest eigenvalue of the symmetric tridiagonal matrix with constant
// off-diagonal `off` and diagonal `diag`, located by Sturm-count bisection.
double smallest_eigenvalue_sturm(const std::vector<double>& diag, double off,
                                 double rel_tol = 1e-12);

// Number of eigenvalues strictly below sigma (Sturm count via LDL^T signs).
int sturm_count(const std::vector<double>& diag, double off, double sigma);

// ---- interpolation on a uniform grid ----------------------------------
//
// values[i] lives at y0 + i*dy.  Lagrange interpolation with an `order`
// point stencil (2 = linear, 4 = cubic, 6 = quintic), clamped one-sided
// near the ends.  Queries are clamped to the grid range.
double lagrange_uniform(const std::vector<double>& values, double y0, double dy,
                        double y, int order = 6);

// Monotone cubic Hermite interpolation (Fritsch-Carlson limited slopes) on a
// uniform grid.  Never leaves the range of the two bracketing data values, so
// remapping a field bounded in [0, K] stays in [0, K].  Queries are clamped
// to the grid range.
double monotone_cubic_uniform(const std::vector<double>& values, double y0, double dy,
                              double y);

// ---- misc ---------------------------------------------------------------
inline double sup_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) {
        double a = x < 0 ? -x : x;
        if (a > m) m = a;
    }
    return m;
}

} // namespace mosqfront
