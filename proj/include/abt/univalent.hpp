#pragma once

// Koebe/Bieberbach/de Branges coefficient checks, Taylor extraction on
// circles, the generating function built from <T^n f, g>, and the explicit
// collision construction showing (1-alpha) z + alpha K fails injectivity for
// alpha in (0, 2/3).

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "abt/grid.hpp"
#include "abt/norm_lab.hpp"
#include "abt/operators.hpp"

namespace abt {

inline cplx koebe(cplx z) {
    if (std::abs(z) >= 1.0) throw std::invalid_argument("koebe needs |z| < 1");
    return z / ((1.0 - z) * (1.0 - z));
}

// the blend (1-alpha) z + alpha K(z)
inline cplx koebe_blend(double alpha, cplx z) {
    return (1.0 - alpha) * z + alpha * koebe(z);
}

struct TaylorCoeffs {
    double radius = 0.5;
    std::vector<cplx> a;  // a[0] is the coefficient of z^1

    cplx coeff(int n) const { return a.at(n - 1); }
    int count() const { return static_cast<int>(a.size()); }
};

inline TaylorCoeffs koebe_coeffs(int n_max) {
    TaylorCoeffs out;
    out.a.resize(n_max);
    for (int n = 1; n <= n_max; ++n) out.a[n - 1] = static_cast<double>(n);
    return out;
}

// a_n = r^{-n} (1/M) sum f(r e^{i theta_j}) e^{-i n theta_j}
inline TaylorCoeffs taylor_from_circle(const std::function<cplx(cplx)>& f, double r,
                                       int n_max, int m_samples = 0) {
    if (!(r > 0.0) || r >= 1.0)
        throw std::invalid_argument("taylor_from_circle needs r in (0,1)");
    if (m_samples == 0) m_samples = std::max(256, 4 * n_max);
    if (m_samples < 4 * n_max)
        throw std::invalid_argument("taylor_from_circle needs M >= 4N");
    std::vector<cplx> vals(m_samples);
    for (int j = 0; j < m_samples; ++j) {
        vals[j] = f(std::polar(r, 2.0 * kPi * j / m_samples));
        if (!std::isfinite(vals[j].real()) || !std::isfinite(vals[j].imag()))
            throw std::invalid_argument("divergent circle samples");
    }
    TaylorCoeffs out;
    out.radius = r;
    out.a.resize(n_max);
    for (int n = 1; n <= n_max; ++n) {
        cplx acc{};
        for (int j = 0; j < m_samples; ++j)
            acc += vals[j] * std::polar(1.0, -2.0 * kPi * n * j / m_samples);
        out.a[n - 1] = acc / (static_cast<double>(m_samples) * std::pow(r, n));
    }
    return out;
}

struct CoefficientGates {
    bool bieberbach = true;       // |a_2| <= 2
    bool de_branges = true;       // |a_n| <= n for all available n
    bool bieberbach_equality = false;
    std::vector<int> violations;  // indices with |a_n| > n
};

inline CoefficientGates coefficient_gates(const TaylorCoeffs& c) {
    if (std::abs(c.coeff(1) - 1.0) > 1e-6)
        throw std::invalid_argument("coefficient gates need a normalized a_1 = 1");
    CoefficientGates out;
    if (c.count() >= 2) {
        double a2 = std::abs(c.coeff(2));
        out.bieberbach = a2 <= 2.0 + 1e-9;
        out.bieberbach_equality = std::abs(a2 - 2.0) <= 1e-9;
    }
    for (int n = 2; n <= c.count(); ++n)
        if (std::abs(c.coeff(n)) > n + 1e-9) {
            out.de_branges = false;
            out.violations.push_back(n);
        }
    return out;
}

// ---------------------------------------------------------------------------
// collision construction for alpha in (0, 2/3)

struct CollisionWitness {
    double alpha = 0.0;
    cplx z, w;       // distinct points of the disc with g(z) = g(w)
    cplx a, b;       // the half-plane pair, Re > 1/2
    double gamma = 0.0;
    double defect = 0.0;  // |g(z) - g(w)|
};

// Build the witness from an admissible abscissa x (x > 1/2, x(4x-1)^2 < gamma).
inline CollisionWitness collision_from_x(double alpha, double x) {
    double beta = alpha / (1.0 - alpha);
    double gamma = 1.0 / beta;
    double eps = gamma / x - (4.0 * x - 1.0) * (4.0 * x - 1.0);
    if (!(x > 0.5) || !(eps > 0.0))
        throw std::invalid_argument("collision abscissa out of range");
    double y = std::sqrt(4.0 * (3.0 * x * x - x) + eps);
    // y1 y2 = 3x^2 - x, y1 + y2 = y; the discriminant is exactly eps
    double y1 = 0.5 * (y + std::sqrt(eps));
    double y2 = 0.5 * (y - std::sqrt(eps));
    CollisionWitness out;
    out.alpha = alpha;
    out.gamma = gamma;
    out.a = {x, y1};
    out.b = {x, y2};
    out.z = 1.0 - 1.0 / out.a;
    out.w = 1.0 - 1.0 / out.b;
    out.defect = std::abs(koebe_blend(alpha, out.z) - koebe_blend(alpha, out.w));
    return out;
}

// Deterministic witness: pick x by bisection so that x(4x-1)^2 lands between
// 1/2 and gamma, keeping eps bounded away from zero.
inline CollisionWitness collision_construct(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 2.0 / 3.0))
        throw std::invalid_argument(
            "collision_construct needs alpha in (0, 2/3); the blend is injective "
            "elsewhere in [0,1]");
    double beta = alpha / (1.0 - alpha);
    double gamma = 1.0 / beta;  // > 1/2
    double target = 0.5 + 0.9 * (gamma - 0.5);
    double lo = 0.5, hi = 0.5;
    while (hi * (4.0 * hi - 1.0) * (4.0 * hi - 1.0) < target) hi *= 1.5;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (mid * (4.0 * mid - 1.0) * (4.0 * mid - 1.0) < target ? lo : hi) = mid;
    }
    return collision_from_x(alpha, 0.5 * (lo + hi));
}

// min over sampled pairs in |z| <= 0.95 of |g(z)-g(w)|/|z-w|; optional seed
// points are included in the sample set.
inline double injectivity_scan(double alpha, int samples, unsigned seed,
                               const std::vector<cplx>& seeded = {}) {
    if (alpha < 0.0 || alpha > 1.0)
        throw std::invalid_argument("injectivity_scan needs alpha in [0,1]");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<cplx> pts = seeded;
    pts.reserve(pts.size() + samples);
    while (static_cast<int>(pts.size()) < samples) {
        cplx z{2.0 * unif(rng) - 1.0, 2.0 * unif(rng) - 1.0};
        if (std::abs(z) <= 0.95) pts.push_back(z);
    }
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < pts.size(); ++i) {
        cplx gi = koebe_blend(alpha, pts[i]);
        for (size_t j = i + 1; j < pts.size(); ++j) {
            double d = std::abs(pts[i] - pts[j]);
            if (d < 1e-12) continue;
            best = std::min(best, std::abs(gi - koebe_blend(alpha, pts[j])) / d);
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// generating function Psi(z) = z + sum_{n>=2} e^{i a_n} <T^{n-1} f, g> /
// kappa_{n-1}(p) * n z^n, from spectral pairings.

inline std::vector<cplx> psi_coefficients(const SampledField& f, const SampledField& g,
                                          double p, const std::vector<double>& phases,
                                          int n_max) {
    if (n_max > 16) throw std::invalid_argument("psi_coefficients supports N <= 16");
    double q = p / (p - 1.0);
    if (std::abs(lp_norm(f, p) - 1.0) > 1e-3 || std::abs(lp_norm(g, q) - 1.0) > 1e-3)
        throw std::invalid_argument("psi_coefficients needs unit-norm f in L^p, g in L^q");
    std::vector<cplx> coeffs(n_max, cplx{});
    coeffs[0] = 1.0;  // the leading z
    SampledField tf = f;
    for (int n = 2; n <= n_max; ++n) {
        tf = ab_transform(tf, 1);  // now T^{n-1} f
        cplx inner = pairing(tf, g);
        double phase = (static_cast<int>(phases.size()) >= n - 1) ? phases[n - 2] : 0.0;
        coeffs[n - 1] = std::polar(1.0, phase) * inner / kappa(n - 1, p) *
                        static_cast<double>(n);
    }
    return coeffs;
}

// z + 2 a z^2 has a disc collision exactly when |a| > 1/4 (z + w = -1/(2a));
// scan version used to verify the criterion numerically.
inline bool quadratic_has_collision(cplx a, int samples, unsigned seed) {
    if (std::abs(a) < 1e-12) return false;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    cplx s = -1.0 / (2.0 * a);  // required z + w
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
        cplx z{2.0 * unif(rng) - 1.0, 2.0 * unif(rng) - 1.0};
        cplx w = s - z;
        if (std::abs(z) < 1.0 && std::abs(w) < 1.0 && std::abs(z - w) > 1e-6) {
            cplx gz = z + 2.0 * a * z * z, gw = w + 2.0 * a * w * w;
            best = std::min(best, std::abs(gz - gw));
        }
    }
    return best < 1e-9;
}

}  // namespace abt
