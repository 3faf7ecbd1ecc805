#pragma once

// Adaptive Simpson quadrature, 1D and tensorized 2D. Good enough for the
// closed-form cross-checks; not a general-purpose integrator.

#include <cmath>
#include <functional>
#include <stdexcept>

namespace abt {

namespace detail {

inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_step(const std::function<double(double)>& f, double a,
                            double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(f, a, m, fa, flm, fm);
    double right = simpson(f, m, b, fm, frm, fb);
    if (depth <= 0) return left + right;
    if (std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_step(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace detail

inline double integrate_1d(const std::function<double(double)>& f, double a,
                           double b, double tol = 1e-10, int max_depth = 40) {
    if (!(b > a)) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = detail::simpson(f, a, b, fa, fm, fb);
    return detail::adaptive_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Integrate over [ax,bx] x [ay,by] by nesting adaptive rules. Inner tolerance
// is tightened relative to the outer one.
inline double integrate_2d(const std::function<double(double, double)>& f,
                           double ax, double bx, double ay, double by,
                           double tol = 1e-9) {
    return integrate_1d(
        [&](double y) {
            return integrate_1d([&](double x) { return f(x, y); }, ax, bx, tol / 10);
        },
        ay, by, tol);
}

}  // namespace abt
