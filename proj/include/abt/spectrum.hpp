#pragma once

// Approximate point spectrum probes: band-limited bumps, lattice-exact
// modulations S_n, the shifted-multiplier identity, and the residual
// ||(T - lambda) S_n f||_2 whose decay realizes sigma(T) = boundary of the
// unit disc.
//
// For lattice-exact (theta, n) the probe is band limited, so the residual can
// be evaluated exactly on the frequency lattice without any grid large enough
// to hold the shifted spectrum; spectral_residual does that, and the grid
// route is cross-checked against it for small n.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "abt/grid.hpp"
#include "abt/operators.hpp"

namespace abt {

inline constexpr double kBumpRadius = 0.9;

// smooth compactly supported spectral profile on |xi| < kBumpRadius
inline double bump_profile(cplx xi) {
    double t = std::abs(xi) / kBumpRadius;
    if (t >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

// Field whose spectrum is the bump, normalized to ||f||_2 = 1.
inline SampledField bandlimited_bump(const GridSpec& g) {
    if (g.extent < 8.0)
        throw std::invalid_argument("bandlimited bump needs extent >= 8");
    SpectralField F(g);
    double energy = 0.0;
    for (int k1 = 0; k1 < g.size; ++k1)
        for (int k2 = 0; k2 < g.size; ++k2) {
            double v = bump_profile(g.freq(k1, k2));
            F.at(k1, k2) = v;
            energy += v * v;
        }
    energy /= g.extent * g.extent;  // Parseval measure
    double scale = 1.0 / std::sqrt(energy);
    for (cplx& z : F.c) z *= scale;
    return from_spectrum(F);
}

struct Modulated {
    SampledField field;
    bool lattice_exact = false;  // frequency shift n e^{i theta} on the 1/L lattice
};

inline bool modulation_is_lattice_exact(const GridSpec& g, double theta, double n) {
    double s = n * g.extent;
    bool integer_shift = std::abs(s - std::round(s)) < 1e-12;
    double q = theta / (kPi / 2.0);
    bool quarter = std::abs(q - std::round(q)) < 1e-12;
    return integer_shift && quarter;
}

// pointwise product with e^{2 n pi i Re(e^{-i theta} z)}
inline Modulated modulate(const SampledField& f, double theta, double n) {
    Modulated out;
    out.lattice_exact = modulation_is_lattice_exact(f.grid, theta, n);
    out.field = f;
    double c = std::cos(theta), s = std::sin(theta);
    const GridSpec& g = f.grid;
    for (int i = 0; i < g.size; ++i)
        for (int j = 0; j < g.size; ++j) {
            double re = c * g.coord(i) + s * g.coord(j);
            out.field.at(i, j) *= std::polar(1.0, 2.0 * n * kPi * re);
        }
    return out;
}

// relative L2 discrepancy between DFT(S_n^{-1} T S_n f) computed on the grid
// and the symbol Phi(xi/n + e^{i theta}) hat f(xi)
inline double shifted_multiplier_check(const SampledField& f, double theta, int n) {
    const GridSpec& g = f.grid;
    if (!modulation_is_lattice_exact(g, theta, n))
        throw std::invalid_argument("shifted_multiplier_check needs lattice-exact inputs");
    // grid route
    Modulated snf = modulate(f, theta, n);
    SampledField tsnf = ab_transform(snf.field, 1);
    Modulated back = modulate(tsnf, theta, -static_cast<double>(n));
    SpectralField lhs = to_spectrum(back.field);
    // symbol route
    SpectralField rhs = to_spectrum(f);
    MultiplierSymbol sym = MultiplierSymbol::shifted_ab(n, theta);
    for (int k1 = 0; k1 < g.size; ++k1)
        for (int k2 = 0; k2 < g.size; ++k2) rhs.at(k1, k2) *= sym(g.freq(k1, k2));
    double num = 0.0, den = 0.0;
    for (size_t k = 0; k < lhs.c.size(); ++k) {
        num += std::norm(lhs.c[k] - rhs.c[k]);
        den += std::norm(rhs.c[k]);
    }
    return std::sqrt(num / den);
}

struct SpectralProbe {
    double theta = 0.0;
    cplx lambda;
    int n = 1;
    double residual = 0.0;
};

// ||(T - lambda) S_n f||_2 for lambda = e^{-2 i theta} and f the band-limited
// bump, evaluated on the frequency lattice (exact for any grid whose Nyquist
// range holds the shifted bump).
inline SpectralProbe spectral_residual(const GridSpec& g, double theta, int n) {
    if (!modulation_is_lattice_exact(g, theta, n))
        throw std::invalid_argument("spectral_residual needs lattice-exact inputs");
    SpectralProbe probe;
    probe.theta = theta;
    probe.n = n;
    probe.lambda = std::polar(1.0, -2.0 * theta);
    cplx shift = std::polar(static_cast<double>(n), theta);

    double num = 0.0, den = 0.0;
    int reach = static_cast<int>(std::ceil(kBumpRadius * g.extent)) + 1;
    for (int m1 = -reach; m1 <= reach; ++m1)
        for (int m2 = -reach; m2 <= reach; ++m2) {
            cplx xi = cplx(m1, m2) / g.extent;
            double b = bump_profile(xi);
            if (b == 0.0) continue;
            cplx w = xi + shift;  // frequency of the modulated mode
            cplx phi = std::conj(w) / w;
            num += std::norm(phi - probe.lambda) * b * b;
            den += b * b;
        }
    probe.residual = std::sqrt(num / den);
    return probe;
}

// log-log slope of the residual against n over the given probe orders
inline double residual_slope(const GridSpec& g, double theta,
                             const std::vector<int>& orders) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int n : orders) {
        double x = std::log(static_cast<double>(n));
        double y = std::log(spectral_residual(g, theta, n).residual);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double m = orders.size();
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace abt
