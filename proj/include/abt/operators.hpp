#pragma once

// Fourier-multiplier application and direct principal-value kernel quadrature
// for the Beurling transform T, its powers, complex Riesz powers R^k and the
// Wirtinger derivatives.
//
// Every multiplier sends the zero frequency to 0 (p.v. kernels have vanishing
// circle averages); callers wanting the mean back must add it themselves.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "abt/grid.hpp"

namespace abt {

struct MultiplierSymbol {
    enum class Tag { AbPower, RieszPower, WirtingerD, WirtingerDbar, ShiftedAb };
    Tag tag = Tag::AbPower;
    int order = 1;       // n for AbPower/ShiftedAb, k for RieszPower
    double theta = 0.0;  // ShiftedAb only

    static MultiplierSymbol ab_power(int n) { return {Tag::AbPower, n, 0.0}; }
    static MultiplierSymbol riesz_power(int k) { return {Tag::RieszPower, k, 0.0}; }
    static MultiplierSymbol wirtinger_d() { return {Tag::WirtingerD, 0, 0.0}; }
    static MultiplierSymbol wirtinger_dbar() { return {Tag::WirtingerDbar, 0, 0.0}; }
    static MultiplierSymbol shifted_ab(int n, double theta) {
        return {Tag::ShiftedAb, n, theta};
    }

    cplx operator()(cplx xi) const {
        switch (tag) {
            case Tag::AbPower:
                // (conj xi / xi)^n, computed in polar form so |symbol| = 1
                if (xi == cplx{}) return {};
                return std::polar(1.0, -2.0 * order * std::arg(xi));
            case Tag::RieszPower:
                if (xi == cplx{}) return {};
                return std::polar(1.0, -1.0 * order * std::arg(xi));
            case Tag::WirtingerD:
                return kPi * cplx(0, 1) * std::conj(xi);
            case Tag::WirtingerDbar:
                return kPi * cplx(0, 1) * xi;
            case Tag::ShiftedAb: {
                // the conjugated operator has the full symbol, value e^{-2i theta}
                // at the origin; the pole at xi = -n e^{i theta} lies outside the
                // support of admissible probes
                cplx w = xi / static_cast<double>(order) + std::polar(1.0, theta);
                if (w == cplx{}) return {};
                return std::conj(w) / w;
            }
        }
        return {};
    }
};

inline SampledField apply_multiplier(const SampledField& f, const MultiplierSymbol& m) {
    SpectralField F = to_spectrum(f);
    const GridSpec& g = f.grid;
    for (int k1 = 0; k1 < g.size; ++k1)
        for (int k2 = 0; k2 < g.size; ++k2) F.at(k1, k2) *= m(g.freq(k1, k2));
    return from_spectrum(F);
}

// T^n; negative n gives the inverse powers (S = T^{-1} = T^*).
inline SampledField ab_transform(const SampledField& f, int n = 1) {
    return apply_multiplier(f, MultiplierSymbol::ab_power(n));
}

enum class Wirtinger { D, Dbar };

inline SampledField wirtinger(const SampledField& f, Wirtinger which, int order = 1) {
    if (order < 1) throw std::invalid_argument("wirtinger order must be >= 1");
    MultiplierSymbol m = which == Wirtinger::D ? MultiplierSymbol::wirtinger_d()
                                               : MultiplierSymbol::wirtinger_dbar();
    SpectralField F = to_spectrum(f);
    const GridSpec& g = f.grid;
    for (int k1 = 0; k1 < g.size; ++k1)
        for (int k2 = 0; k2 < g.size; ++k2) {
            cplx s = m(g.freq(k1, k2));
            cplx p = 1.0;
            for (int r = 0; r < order; ++r) p *= s;
            F.at(k1, k2) *= p;
        }
    return from_spectrum(F);
}

// conj-conjugated transform S g = conj(T conj(g))
inline SampledField s_transform(const SampledField& f) {
    SampledField cf = f;
    for (cplx& z : cf.v) z = std::conj(z);
    SampledField t = ab_transform(cf, 1);
    for (cplx& z : t.v) z = std::conj(z);
    return t;
}

// ---------------------------------------------------------------------------
// direct p.v. kernel quadrature

struct KernelSpec {
    int k = 2;           // kernel order, nonzero
    double epsilon = 0;  // truncation radius, >= 2 grid cells

    // Omega_k(zeta) = i^{|k|} |k| / (2 pi) * zeta^{-k} on the unit circle
    cplx omega(cplx unit_zeta) const {
        cplx ik = std::polar(1.0, kPi / 2.0 * std::abs(k));
        return ik * (std::abs(k) / (2.0 * kPi)) * std::polar(1.0, -k * std::arg(unit_zeta));
    }
};

// Truncated singular integral sum_{|zeta|>eps} Omega_k(zeta/|zeta|)/|zeta|^2
// f(z-zeta) h^2 over the offset lattice, with periodic wrap of f. O(N^4);
// meant for cross-validation at N <= 128.
inline SampledField direct_kernel_apply(const SampledField& f, const KernelSpec& spec) {
    const GridSpec& g = f.grid;
    if (spec.k == 0) throw std::invalid_argument("kernel order must be nonzero");
    if (spec.epsilon < 2.0 * g.spacing())
        throw std::invalid_argument("kernel truncation must be at least 2 cells");

    const int n = g.size;
    const double h = g.spacing();
    // kernel table indexed by offset (di, dj) with di, dj in [-N/2, N/2)
    std::vector<cplx> kern(g.cells(), cplx{});
    for (int di = -n / 2; di < n / 2; ++di)
        for (int dj = -n / 2; dj < n / 2; ++dj) {
            double x = di * h, y = dj * h;
            double r = std::hypot(x, y);
            if (r <= spec.epsilon) continue;
            cplx zeta(x, y);
            size_t idx = static_cast<size_t>(di + n / 2) * n + (dj + n / 2);
            kern[idx] = spec.omega(zeta / r) / (r * r);
        }

    SampledField out(g);
    auto worker = [&](int i_begin, int i_end) {
        for (int i = i_begin; i < i_end; ++i)
            for (int j = 0; j < n; ++j) {
                cplx acc{};
                for (int di = -n / 2; di < n / 2; ++di) {
                    int si = i - di;
                    si &= (n - 1);  // periodic wrap, N is a power of two
                    size_t krow = static_cast<size_t>(di + n / 2) * n;
                    size_t frow = static_cast<size_t>(si) * n;
                    for (int dj = -n / 2; dj < n / 2; ++dj) {
                        cplx kv = kern[krow + (dj + n / 2)];
                        if (kv == cplx{}) continue;
                        int sj = (j - dj) & (n - 1);
                        acc += kv * f.v[frow + sj];
                    }
                }
                out.at(i, j) = acc * g.cell_area();
            }
    };

    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (hw == 1 || n < 64) {
        worker(0, n);
    } else {
        std::vector<std::thread> pool;
        int chunk = (n + hw - 1) / hw;
        for (unsigned t = 0; t < hw; ++t) {
            int b = t * chunk, e = std::min(n, b + chunk);
            if (b < e) pool.emplace_back(worker, b, e);
        }
        for (auto& th : pool) th.join();
    }
    return out;
}

// |<Tf,g> - <f,Sg>|; contract: <= 1e-10 ||f||_2 ||g||_2
inline double adjoint_check(const SampledField& f, const SampledField& g) {
    require_same_grid(f.grid, g.grid);
    cplx lhs = pairing(ab_transform(f, 1), g);
    cplx rhs = pairing(f, s_transform(g));
    return std::abs(lhs - rhs);
}

// grid rotation U_psi f(x) = f(O_{-psi} x) for psi = quarters * pi/2; exact
// sample permutation on the half-offset grid.
inline SampledField grid_rotate(const SampledField& f, int quarters) {
    const int n = f.grid.size;
    SampledField out(f.grid);
    int q = ((quarters % 4) + 4) % 4;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            // one quarter turn: O_{-pi/2}(x,y) = (y, -x) -> index (j, n-1-i)
            int si = i, sj = j;
            for (int r = 0; r < q; ++r) {
                int ti = sj, tj = n - 1 - si;
                si = ti;
                sj = tj;
            }
            out.at(i, j) = f.at(si, sj);
        }
    return out;
}

}  // namespace abt
