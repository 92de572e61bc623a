// Copyright 2026 The tailbounds authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace tailbounds {

namespace detail {

inline double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_simpson_rec(F&& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                            int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(a, m, fa, flm, fm);
    double right = simpson(m, b, fm, frm, fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature with absolute tolerance.
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-12, int max_depth = 60) {
    if (!(a <= b)) throw std::invalid_argument("integrate: bad interval");
    if (a == b) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = detail::simpson(a, b, fa, fm, fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

/// Adaptive Simpson with a relative tolerance: the absolute tolerance is set
/// from a coarse sample of the integrand's magnitude.
template <class F>
double integrate_rel(F&& f, double a, double b, double rel_tol = 1e-10) {
    double peak = 0.0;
    for (int i = 0; i <= 256; ++i) peak = std::max(peak, std::abs(f(a + (b - a) * i / 256.0)));
    double scale = std::max(peak * (b - a), 1e-300);
    return integrate(f, a, b, rel_tol * scale);
}

/// Golden-section search for the maximum of a unimodal function on [a, b].
template <class F>
double golden_max(F&& f, double a, double b, double tol = 1e-12, int max_iter = 200) {
    const double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < max_iter && (b - a) > tol * (1.0 + std::abs(a) + std::abs(b)); ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 > f2 ? x1 : x2;
}

/// Solves f(x) = target by bisection on [lo, hi]; f must be monotone.
template <class F>
double bisect(F&& f, double lo, double hi, double target, double rel_tol = 1e-12, int max_iter = 400) {
    double flo = f(lo) - target;
    double fhi = f(hi) - target;
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) throw std::domain_error("bisect: root not bracketed");
    for (int it = 0; it < max_iter; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid) - target;
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo <= rel_tol * (std::abs(lo) + std::abs(hi) + 1e-300)) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace tailbounds
