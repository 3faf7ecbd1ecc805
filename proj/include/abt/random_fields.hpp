#pragma once

// Seeded random test objects: smooth mean-zero fields (low-mode random
// spectra), scale-free rough fields saturating an L^p budget, and log-uniform
// dyadic weights.

#include <random>

#include "abt/dyadic.hpp"
#include "abt/grid.hpp"

namespace abt {

// Mean-zero smooth field: random Gaussian coefficients on modes |m| <= reach
// with spectral decay e^{-|xi|^2}.
inline SampledField random_smooth_field(const GridSpec& g, std::mt19937_64& rng,
                                        int reach = 8) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    SpectralField F(g);
    for (int k1 = 0; k1 < g.size; ++k1)
        for (int k2 = 0; k2 < g.size; ++k2) {
            int m1 = g.freq_index(k1), m2 = g.freq_index(k2);
            if (m1 == 0 && m2 == 0) continue;
            if (std::abs(m1) > reach || std::abs(m2) > reach) continue;
            cplx xi = g.freq(k1, k2);
            F.at(k1, k2) = cplx(gauss(rng), gauss(rng)) * std::exp(-std::norm(xi));
        }
    return from_spectrum(F);
}

// Scale-free rough field with |hat h(xi)| ~ |xi|^{-1/2} and random phases;
// its dbar-antiderivative has Holder regularity 1/2 across the resolved
// scales, which is what makes the exponent 1 - 2/p observable at p = 4.
inline SampledField random_rough_field(const GridSpec& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 2.0 * kPi);
    SpectralField F(g);
    for (int k1 = 0; k1 < g.size; ++k1)
        for (int k2 = 0; k2 < g.size; ++k2) {
            cplx xi = g.freq(k1, k2);
            if (xi == cplx{}) continue;
            F.at(k1, k2) = std::polar(std::pow(std::abs(xi), -0.5), unif(rng));
        }
    return from_spectrum(F);
}

inline DyadicWeight random_dyadic_weight(int depth, std::mt19937_64& rng,
                                         double log_range = 3.0) {
    std::uniform_real_distribution<double> unif(-log_range, log_range);
    std::vector<double> leaves(1L << depth);
    for (double& v : leaves) v = std::exp(unif(rng));
    return DyadicWeight::from_leaves(std::move(leaves));
}

inline StepFunction random_step(int depth, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    StepFunction f(depth);
    for (cplx& z : f.leaf) z = cplx(gauss(rng), gauss(rng));
    return f;
}

}  // namespace abt
