#pragma once

// Test-only numerical oracles, independent of the library code paths they
// check: golden-section maximization, adaptive Simpson quadrature, and a
// brute-force Cartesian overlap integral.

#include <cmath>
#include <complex>
#include <functional>

namespace oracles {

/// Location of the maximum of f on [a, b] (f unimodal there).
inline double golden_section_max(const std::function<double(double)>& f, double a, double b,
                                 double tol = 1e-14)
{
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    while (b - a > tol * (1.0 + std::abs(a) + std::abs(b))) {
        if (f(c) > f(d)) {
            b = d;
        } else {
            a = c;
        }
        c = b - gr * (b - a);
        d = a + gr * (b - a);
    }
    return 0.5 * (a + b);
}

namespace detail {

inline double simpson(const std::function<double(double)>& f, double a, double b, double fa,
                      double fm, double fb)
{
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_step(const std::function<double(double)>& f, double a, double b,
                            double fa, double fm, double fb, double whole, double tol,
                            int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
           + adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Adaptive Simpson integral of f on [a, b].
inline double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                                  double tol = 1e-12)
{
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    return detail::adaptive_step(f, a, b, fa, fm, fb, detail::simpson(f, a, b, fa, fm, fb),
                                 tol, 48);
}

/// Central-difference derivative with step h.
inline double central_difference(const std::function<double(double)>& f, double x, double h)
{
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Brute-force Cartesian inner product <a|b> = sum conj(a)*b*dx^2 of two
/// complex-valued functions sampled on an n x n grid centred like the library
/// fields (axis at pixel n/2).
inline std::complex<double> brute_force_overlap(
    const std::function<std::complex<double>(double, double)>& a,
    const std::function<std::complex<double>(double, double)>& b, int n, double dx)
{
    std::complex<double> s(0.0, 0.0);
    for (int iy = 0; iy < n; ++iy) {
        const double y = (iy - n / 2) * dx;
        for (int ix = 0; ix < n; ++ix) {
            const double x = (ix - n / 2) * dx;
            s += std::conj(a(x, y)) * b(x, y);
        }
    }
    return s * (dx * dx);
}

} // namespace oracles
