#pragma once

// Centered square grids on the torus [-L/2, L/2)^2, complex sampled fields,
// midpoint quadrature norms/pairings and the scaled DFT.
//
// Samples sit at half-cell offsets: (i,j) -> ((i+1/2)L/N - L/2, (j+1/2)L/N - L/2),
// so no sample ever coincides with the origin. The forward transform is scaled
// by the cell area, making the coefficients approximations of the continuous
// transform with kernel e^{-2 pi i <x,xi>} at frequencies (m1,m2)/L.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "abt/fft.hpp"

namespace abt {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

struct GridSpec {
    double extent = 0.0;  // side length L
    int size = 0;         // samples per side N (power of two, >= 8)

    double spacing() const { return extent / size; }
    double cell_area() const { return spacing() * spacing(); }

    double coord(int i) const { return (i + 0.5) * spacing() - extent / 2.0; }
    cplx point(int i, int j) const { return {coord(i), coord(j)}; }

    // integer frequency m in [-N/2, N/2) for storage index k in [0, N)
    int freq_index(int k) const { return k < size / 2 ? k : k - size; }
    // complex frequency xi = (m1 + i m2)/L for storage indices (k1,k2)
    cplx freq(int k1, int k2) const {
        return cplx(freq_index(k1), freq_index(k2)) / extent;
    }

    size_t cells() const { return static_cast<size_t>(size) * size; }
    bool operator==(const GridSpec&) const = default;
};

inline bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

inline GridSpec make_grid(double extent, int size) {
    if (extent <= 0.0) throw std::invalid_argument("grid extent must be positive");
    if (!is_pow2(size) || size < 8)
        throw std::invalid_argument("grid size must be a power of two >= 8");
    return GridSpec{extent, size};
}

struct SampledField {
    GridSpec grid;
    std::vector<cplx> v;  // row-major, index i*N + j

    SampledField() = default;
    explicit SampledField(const GridSpec& g) : grid(g), v(g.cells(), cplx{}) {}

    cplx& at(int i, int j) { return v[static_cast<size_t>(i) * grid.size + j]; }
    const cplx& at(int i, int j) const {
        return v[static_cast<size_t>(i) * grid.size + j];
    }
};

struct SpectralField {
    GridSpec grid;
    std::vector<cplx> c;  // FFTW storage order, index k1*N + k2

    SpectralField() = default;
    explicit SpectralField(const GridSpec& g) : grid(g), c(g.cells(), cplx{}) {}

    cplx& at(int k1, int k2) { return c[static_cast<size_t>(k1) * grid.size + k2]; }
    const cplx& at(int k1, int k2) const {
        return c[static_cast<size_t>(k1) * grid.size + k2];
    }
};

struct WeightField {
    GridSpec grid;
    std::vector<double> w;

    WeightField() = default;
    explicit WeightField(const GridSpec& g) : grid(g), w(g.cells(), 1.0) {}

    double& at(int i, int j) { return w[static_cast<size_t>(i) * grid.size + j]; }
    double at(int i, int j) const { return w[static_cast<size_t>(i) * grid.size + j]; }
};

inline void require_same_grid(const GridSpec& a, const GridSpec& b) {
    if (!(a == b)) throw std::invalid_argument("grid mismatch");
}

// ---------------------------------------------------------------------------
// sampling

inline SampledField sample(const GridSpec& g, const std::function<cplx(cplx)>& f) {
    SampledField out(g);
    for (int i = 0; i < g.size; ++i)
        for (int j = 0; j < g.size; ++j) out.at(i, j) = f(g.point(i, j));
    return out;
}

inline SampledField make_constant(const GridSpec& g, cplx value) {
    SampledField out(g);
    std::fill(out.v.begin(), out.v.end(), value);
    return out;
}

inline SampledField make_identity(const GridSpec& g) {
    return sample(g, [](cplx z) { return z; });
}

inline SampledField make_gaussian(const GridSpec& g) {
    return sample(g, [](cplx z) { return std::exp(-kPi * std::norm(z)); });
}

// d/dx of e^{-pi|z|^2}
inline SampledField make_gaussian_dx(const GridSpec& g) {
    return sample(g, [](cplx z) {
        return -2.0 * kPi * z.real() * std::exp(-kPi * std::norm(z));
    });
}

// Smooth cutoff used by the Lehto family: 1 on [0,1], exp(-(r-1)^n) beyond.
inline double lehto_cutoff(int n, double r) {
    return r <= 1.0 ? 1.0 : std::exp(-std::pow(r - 1.0, n));
}

// z^n |z|^{-2 alpha} g_n(|z|); requires alpha < 1/2 so the field is p-integrable
// for some p > 2.
inline SampledField make_lehto(const GridSpec& g, int n, double alpha) {
    if (n < 1) throw std::invalid_argument("lehto order must be >= 1");
    if (alpha >= 0.5) throw std::invalid_argument("lehto exponent must satisfy alpha < 1/2");
    return sample(g, [n, alpha](cplx z) {
        double r = std::abs(z);
        return std::pow(z, n) * std::pow(r, -2.0 * alpha) * lehto_cutoff(n, r);
    });
}

inline bool in_quadrant_sector(double x, double y) {
    return x > 0.0 && y > 0.0 && x * x + y * y < 1.0;
}

// |z|^{-alpha} on the open first-quadrant unit sector. Cells crossing the
// sector boundary (including the singular corner at 0) are averaged over a
// 4x4 subsample of the true integrand.
inline SampledField make_quadrant_power(const GridSpec& g, double alpha) {
    if (alpha >= 2.0) throw std::invalid_argument("quadrant power needs alpha < 2");
    SampledField out(g);
    const double h = g.spacing();
    for (int i = 0; i < g.size; ++i) {
        for (int j = 0; j < g.size; ++j) {
            double x = g.coord(i), y = g.coord(j);
            double x0 = x - h / 2, x1 = x + h / 2, y0 = y - h / 2, y1 = y + h / 2;
            bool inside = in_quadrant_sector(x0, y0) && in_quadrant_sector(x1, y1) &&
                          in_quadrant_sector(x0, y1) && in_quadrant_sector(x1, y0);
            bool outside = (x1 <= 0.0) || (y1 <= 0.0) || (x0 * x0 + y0 * y0 >= 1.0);
            if (inside) {
                out.at(i, j) = std::pow(x * x + y * y, -alpha / 2.0);
            } else if (outside) {
                out.at(i, j) = 0.0;
            } else {
                double acc = 0.0;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) {
                        double xs = x0 + (a + 0.5) * h / 4;
                        double ys = y0 + (b + 0.5) * h / 4;
                        if (in_quadrant_sector(xs, ys))
                            acc += std::pow(xs * xs + ys * ys, -alpha / 2.0);
                    }
                out.at(i, j) = acc / 16.0;
            }
        }
    }
    return out;
}

// Name-based dispatch used by the CLI; params are family specific.
inline SampledField sample_family(const GridSpec& g, const std::string& name,
                                  double p1 = 0.0, double p2 = 0.0) {
    if (name == "gaussian") return make_gaussian(g);
    if (name == "gaussian_dx") return make_gaussian_dx(g);
    if (name == "lehto") return make_lehto(g, static_cast<int>(p1), p2);
    if (name == "quadrant_power") return make_quadrant_power(g, p1);
    if (name == "identity") return make_identity(g);
    if (name == "constant") return make_constant(g, p1);
    throw std::invalid_argument("unknown field family: " + name);
}

// ---------------------------------------------------------------------------
// quadrature norms and pairings

inline double lp_norm(const SampledField& f, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm requires p >= 1");
    double acc = 0.0;
    for (const cplx& z : f.v) acc += std::pow(std::abs(z), p);
    return std::pow(acc * f.grid.cell_area(), 1.0 / p);
}

inline double l2_norm(const SampledField& f) {
    double acc = 0.0;
    for (const cplx& z : f.v) acc += std::norm(z);
    return std::sqrt(acc * f.grid.cell_area());
}

inline double weighted_lp_norm(const SampledField& f, const WeightField& w, double p) {
    if (p < 1.0) throw std::invalid_argument("weighted_lp_norm requires p >= 1");
    require_same_grid(f.grid, w.grid);
    double acc = 0.0;
    for (size_t k = 0; k < f.v.size(); ++k)
        acc += std::pow(std::abs(f.v[k]), p) * w.w[k];
    return std::pow(acc * f.grid.cell_area(), 1.0 / p);
}

// <f,g> = sum f conj(g) * cell_area
inline cplx pairing(const SampledField& f, const SampledField& g) {
    require_same_grid(f.grid, g.grid);
    cplx acc{};
    for (size_t k = 0; k < f.v.size(); ++k) acc += f.v[k] * std::conj(g.v[k]);
    return acc * f.grid.cell_area();
}

inline cplx spectral_pairing(const SpectralField& f, const SpectralField& g) {
    require_same_grid(f.grid, g.grid);
    cplx acc{};
    for (size_t k = 0; k < f.c.size(); ++k) acc += f.c[k] * std::conj(g.c[k]);
    return acc / (f.grid.extent * f.grid.extent);
}

inline cplx grid_mean(const SampledField& f) {
    cplx acc{};
    for (const cplx& z : f.v) acc += z;
    return acc / static_cast<double>(f.v.size());
}

inline SampledField subtract_mean(SampledField f) {
    cplx m = grid_mean(f);
    for (cplx& z : f.v) z -= m;
    return f;
}

inline SampledField scaled(SampledField f, cplx c) {
    for (cplx& z : f.v) z *= c;
    return f;
}

inline SampledField operator+(SampledField a, const SampledField& b) {
    require_same_grid(a.grid, b.grid);
    for (size_t k = 0; k < a.v.size(); ++k) a.v[k] += b.v[k];
    return a;
}

inline SampledField operator-(SampledField a, const SampledField& b) {
    require_same_grid(a.grid, b.grid);
    for (size_t k = 0; k < a.v.size(); ++k) a.v[k] -= b.v[k];
    return a;
}

inline double rel_l2_error(const SampledField& got, const SampledField& want) {
    return l2_norm(got - want) / l2_norm(want);
}

// ---------------------------------------------------------------------------
// scaled DFT with half-cell phase correction

namespace detail {

// per-axis phase e^{-2pi i <x_j, m/L>} factored as e^{-2pi i j m/N} * axis_phase(m)
inline std::vector<cplx> axis_phases(const GridSpec& g) {
    std::vector<cplx> ph(g.size);
    for (int k = 0; k < g.size; ++k) {
        int m = g.freq_index(k);
        double arg = -kPi * m / g.size + kPi * m;  // e^{-pi i m/N} * (-1)^m
        ph[k] = std::polar(1.0, arg);
    }
    return ph;
}

}  // namespace detail

inline SpectralField to_spectrum(const SampledField& f) {
    const GridSpec& g = f.grid;
    SpectralField out(g);
    out.c = f.v;
    detail::fft2_inplace(g.size, FFTW_FORWARD, out.c.data());
    auto ph = detail::axis_phases(g);
    const double scale = g.cell_area();
    for (int k1 = 0; k1 < g.size; ++k1)
        for (int k2 = 0; k2 < g.size; ++k2) out.at(k1, k2) *= scale * ph[k1] * ph[k2];
    return out;
}

inline SampledField from_spectrum(const SpectralField& F) {
    const GridSpec& g = F.grid;
    SampledField out(g);
    out.v = F.c;
    auto ph = detail::axis_phases(g);
    for (int k1 = 0; k1 < g.size; ++k1)
        for (int k2 = 0; k2 < g.size; ++k2)
            out.at(k1, k2) *= std::conj(ph[k1] * ph[k2]);
    detail::fft2_inplace(g.size, FFTW_BACKWARD, out.v.data());
    const double scale = 1.0 / (g.extent * g.extent);
    for (cplx& z : out.v) z *= scale;
    return out;
}

}  // namespace abt
