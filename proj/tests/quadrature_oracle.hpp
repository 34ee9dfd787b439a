#ifndef TRACX_TESTS_QUADRATURE_ORACLE_HPP
#define TRACX_TESTS_QUADRATURE_ORACLE_HPP

// Test-only oracle: p-values by adaptive-Simpson integration of the t and F
// densities, independent of the incomplete-beta evaluation they check.

#include <cmath>
#include <functional>

namespace tracx_oracle {

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                               double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

inline double t_density(double x, double df) {
    const double c = std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0) - 0.5 * std::log(df * M_PI);
    return std::exp(c - (df + 1.0) / 2.0 * std::log1p(x * x / df));
}

inline double t_pvalue(double t, double df) {
    const double at = std::abs(t);
    const double body = integrate([&](double x) { return t_density(x, df); }, 0.0, at, 1e-12);
    return std::fmax(0.0, 1.0 - 2.0 * body);
}

inline double f_density(double x, double d1, double d2) {
    const double lb = std::lgamma(d1 / 2.0) + std::lgamma(d2 / 2.0) - std::lgamma((d1 + d2) / 2.0);
    const double ln = 0.5 * (d1 * std::log(d1 * x) + d2 * std::log(d2) - (d1 + d2) * std::log(d1 * x + d2));
    return std::exp(ln - lb) / x;
}

inline double f_pvalue(double fstat, double d1, double d2) {
    const double body = integrate([&](double x) { return f_density(x, d1, d2); }, 1e-12, fstat, 1e-12);
    return std::fmax(0.0, 1.0 - body);
}

inline double t_pvalue_oracle(double t, double df) { return t_pvalue(t, df); }
inline double f_pvalue_oracle(double f, double d1, double d2) { return f_pvalue(f, d1, d2); }

} // namespace tracx_oracle

#endif
