#pragma once

// Closed-form norm candidates kappa_n(p) = (1/q)_n / (1/p)_n, their
// asymptotics and algebraic properties, and the Lehto-family lower-bound
// experiment. Products are evaluated in log space via lgamma so the ratio
// scan can reach n = 10^4 without overflow.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "abt/grid.hpp"
#include "abt/operators.hpp"

namespace abt {

inline constexpr double kEulerGamma = 0.5772156649015328606;

inline double pochhammer(double a, int n) {
    if (n < 0) throw std::invalid_argument("pochhammer needs n >= 0");
    double acc = 1.0;
    for (int j = 0; j < n; ++j) acc *= a + j;
    return acc;
}

inline double log_pochhammer(double a, int n) {
    // requires a > 0
    return std::lgamma(a + n) - std::lgamma(a);
}

inline double kappa(int n, double p) {
    if (p <= 1.0) throw std::invalid_argument("kappa needs p > 1");
    double q = p / (p - 1.0);
    return std::exp(log_pochhammer(1.0 / q, n) - log_pochhammer(1.0 / p, n));
}

struct KappaRow {
    int n = 1;
    double p = 2.0;
    double q = 2.0;
    double kappa = 1.0;
    double bound = 1.0;  // n^{1-2/p}(p-1) for p >= 2
    double ratio = 1.0;
};

inline KappaRow ratio_check(int n, double p) {
    if (p < 2.0 || n < 1) throw std::invalid_argument("ratio_check needs p >= 2, n >= 1");
    KappaRow row;
    row.n = n;
    row.p = p;
    row.q = p / (p - 1.0);
    row.kappa = kappa(n, p);
    row.bound = std::pow(n, 1.0 - 2.0 / p) * (p - 1.0);
    row.ratio = row.kappa / row.bound;
    return row;
}

inline bool kappa_submultiplicative(int m, int n, double p, bool* equality = nullptr) {
    double lhs = kappa(m + n, p);
    double rhs = kappa(m, p) * kappa(n, p);
    if (equality) *equality = std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs);
    return lhs <= rhs * (1.0 + 1e-12);
}

inline double gamma_p(double s, double p) { return std::pow(s, 1.0 - 2.0 / p) * (p - 1.0); }

inline bool gamma_submultiplicative(double s, double t, double p) {
    if (s < 1.0 || t < 1.0 || p < 2.0)
        throw std::invalid_argument("gamma_submultiplicative needs s,t >= 1 and p >= 2");
    return gamma_p(s + t, p) <= gamma_p(s, p) * gamma_p(t, p) * (1.0 + 1e-12);
}

// ((u+1)/(u-1)) log u, value 2 at u = 1; symmetric under u -> 1/u and
// increasing on [1, inf).
inline double phi(double u) {
    if (u <= 0.0) throw std::invalid_argument("phi needs u > 0");
    double d = u - 1.0;
    if (std::abs(d) < 1e-6) {
        // (u+1)(1 - d/2 + d^2/3 - d^3/4 + ...)
        return (u + 1.0) * (1.0 - d / 2.0 + d * d / 3.0 - d * d * d / 4.0);
    }
    return (u + 1.0) / d * std::log(u);
}

// psi(n) = sum_{k=1}^{n-1} 2/(2k+1) - log n; decreasing, negative, with limit
// euler_gamma + 2 log 2 - 2.
inline double psi_seq(long n) {
    if (n < 2) throw std::invalid_argument("psi_seq needs n >= 2");
    double acc = 0.0;
    for (long k = n - 1; k >= 1; --k) acc += 2.0 / (2.0 * k + 1.0);
    return acc - std::log(static_cast<double>(n));
}

// Unit-disc integrals of |d^n f|^p and |dbar^n f|^p for the Lehto field:
// (pi/(1-alpha p)) prod_{k=1}^{n} (k-alpha)^p and
// (pi/(1-alpha p)) prod_{k=0}^{n-1} (k+alpha)^p.
inline std::pair<double, double> disc_integrals(int n, double p, double alpha) {
    if (alpha * p >= 1.0) throw std::invalid_argument("disc_integrals needs alpha p < 1");
    double front = kPi / (1.0 - alpha * p);
    double lg1 = 0.0;
    for (int k = 1; k <= n; ++k) lg1 += std::log(k - alpha);
    double second;
    if (alpha == 0.0) {
        second = 0.0;  // the k = 0 factor vanishes
    } else {
        double lg2 = 0.0;
        for (int k = 0; k < n; ++k) lg2 += std::log(k + alpha);
        second = front * std::exp(p * lg2);
    }
    return {front * std::exp(p * lg1), second};
}

// ---------------------------------------------------------------------------
// Lehto field derivatives, hand-coded through the radial profile
// phi(r) = r^{-2 alpha} g_n(r). Valid on the whole plane; only n <= 2 is
// supported because the cutoff is merely C^{n-1} across r = 1.

struct LehtoParams {
    int n = 1;       // 1 or 2
    double alpha = 0.0;
    double p = 4.0;  // > 2, with alpha < 1/p

    void validate() const {
        if (n != 1 && n != 2) throw std::invalid_argument("lehto order must be 1 or 2");
        if (p <= 2.0) throw std::invalid_argument("lehto needs p > 2");
        if (alpha * p >= 1.0) throw std::invalid_argument("lehto needs alpha < 1/p");
    }
};

namespace detail {

struct RadialProfile {
    double v, d1, d2;  // phi, phi', phi''
};

inline RadialProfile lehto_profile(int n, double alpha, double r) {
    double g, gp, gpp;
    if (r <= 1.0) {
        g = 1.0;
        gp = 0.0;
        gpp = 0.0;
    } else {
        double s = r - 1.0;
        g = std::exp(-std::pow(s, n));
        double w = n * std::pow(s, n - 1);
        gp = -w * g;
        gpp = (w * w - n * (n - 1) * (n >= 2 ? std::pow(s, n - 2) : 0.0)) * g;
    }
    double ra = std::pow(r, -2.0 * alpha);
    RadialProfile out;
    out.v = ra * g;
    out.d1 = -2.0 * alpha * ra / r * g + ra * gp;
    out.d2 = (-2.0 * alpha) * (-2.0 * alpha - 1.0) * ra / (r * r) * g +
             2.0 * (-2.0 * alpha) * ra / r * gp + ra * gpp;
    return out;
}

}  // namespace detail

// d^n f and dbar^n f at z, for f(z) = z^n |z|^{-2 alpha} g_n(|z|)
inline cplx lehto_d(const LehtoParams& lp, cplx z) {
    double r = std::abs(z);
    auto ph = detail::lehto_profile(lp.n, lp.alpha, r);
    if (lp.n == 1) return ph.v + 0.5 * r * ph.d1;
    return 2.0 * ph.v + 1.75 * r * ph.d1 + 0.25 * r * r * ph.d2;
}

inline cplx lehto_dbar(const LehtoParams& lp, cplx z) {
    double r = std::abs(z);
    auto ph = detail::lehto_profile(lp.n, lp.alpha, r);
    cplx phase = z / std::conj(z);
    if (lp.n == 1) return phase * 0.5 * r * ph.d1;
    return phase * phase * 0.25 * r * r * (ph.d2 - ph.d1 / r);
}

// ||d^n f||_p / ||dbar^n f||_p assembled from the closed disc integrals plus
// grid quadrature of the exterior (the integrand is smooth off the seam at
// |z| = 1; seam cells are 4x4 subsampled).
inline double lehto_ratio(const LehtoParams& lp, const GridSpec& g) {
    lp.validate();
    auto [disc_d, disc_dbar] = disc_integrals(lp.n, lp.p, lp.alpha);

    const double h = g.spacing();
    double ext_d = 0.0, ext_dbar = 0.0;
    for (int i = 0; i < g.size; ++i)
        for (int j = 0; j < g.size; ++j) {
            cplx z = g.point(i, j);
            double r = std::abs(z);
            double lo = r - h, hi = r + h;  // conservative seam bracket
            if (hi <= 1.0) continue;
            if (lo >= 1.0) {
                ext_d += std::pow(std::abs(lehto_d(lp, z)), lp.p) * g.cell_area();
                ext_dbar += std::pow(std::abs(lehto_dbar(lp, z)), lp.p) * g.cell_area();
            } else {
                double ad = 0.0, adbar = 0.0;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) {
                        cplx zs = z + cplx((a - 1.5) * h / 4.0, (b - 1.5) * h / 4.0);
                        if (std::abs(zs) <= 1.0) continue;
                        ad += std::pow(std::abs(lehto_d(lp, zs)), lp.p);
                        adbar += std::pow(std::abs(lehto_dbar(lp, zs)), lp.p);
                    }
                ext_d += ad / 16.0 * g.cell_area();
                ext_dbar += adbar / 16.0 * g.cell_area();
            }
        }
    return std::pow((disc_d + ext_d) / (disc_dbar + ext_dbar), 1.0 / lp.p);
}

// L^p norm of -2 pi x e^{-pi |z|^2}:
// (2^p pi^{(p-1)/2} Gamma((p+1)/2) / p^{1+p/2})^{1/p}
inline double gaussian_pnorm_closed(double p) {
    if (p < 1.0) throw std::invalid_argument("gaussian_pnorm_closed needs p >= 1");
    double logv = p * std::log(2.0) + (p - 1.0) / 2.0 * std::log(kPi) +
                  std::lgamma((p + 1.0) / 2.0) - (1.0 + p / 2.0) * std::log(p);
    return std::exp(logv / p);
}

// lambda |{ |T^n f| > lambda }| / ||f||_1 over a log-spaced lambda grid, for a
// mollified point mass. Diagnostic only.
struct WeakCurvePoint {
    double lambda;
    double value;
};

inline std::vector<WeakCurvePoint> weak11_diagnostic(int n, const GridSpec& g,
                                                     int n_lambda = 24) {
    double sigma = 4.0 * g.spacing();
    SampledField f = sample(g, [sigma](cplx z) {
        return std::exp(-std::norm(z) / (2.0 * sigma * sigma));
    });
    double mass = lp_norm(f, 1.0);
    for (cplx& z : f.v) z /= mass;

    SampledField tf = n == 0 ? f : ab_transform(f, n);
    double top = 0.0;
    for (const cplx& z : tf.v) top = std::max(top, std::abs(z));

    std::vector<WeakCurvePoint> curve;
    for (int k = 0; k < n_lambda; ++k) {
        double lam = top * std::pow(10.0, -3.0 * (1.0 - k / double(n_lambda - 1)));
        double area = 0.0;
        for (const cplx& z : tf.v)
            if (std::abs(z) > lam) area += g.cell_area();
        curve.push_back({lam, lam * area});
    }
    return curve;
}

}  // namespace abt
