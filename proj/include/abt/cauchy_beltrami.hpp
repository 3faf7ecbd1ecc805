#pragma once

// The renormalized planar Cauchy transform P (spectral dbar-inverse with
// P h(0) = 0), the Neumann-series normal solution of the Beltrami equation
// f_zbar = mu f_z, Jacobians and area distortion, and the radial stretch
// coefficient used as the closed-form oracle.

#include <cmath>
#include <stdexcept>

#include "abt/grid.hpp"
#include "abt/operators.hpp"

namespace abt {

// bilinear value at the origin; the origin is a cell corner, so this is the
// average of the four nearest samples.
inline cplx value_at_origin(const SampledField& f) {
    int c = f.grid.size / 2;
    return 0.25 * (f.at(c - 1, c - 1) + f.at(c - 1, c) + f.at(c, c - 1) + f.at(c, c));
}

// Solve dbar g = h spectrally (zero mode annihilated) and normalize g(0) = 0.
inline SampledField cauchy_P(const SampledField& h) {
    SpectralField H = to_spectrum(h);
    const GridSpec& g = h.grid;
    for (int k1 = 0; k1 < g.size; ++k1)
        for (int k2 = 0; k2 < g.size; ++k2) {
            cplx xi = g.freq(k1, k2);
            if (xi == cplx{}) {
                H.at(k1, k2) = 0.0;
            } else {
                H.at(k1, k2) /= kPi * cplx(0, 1) * xi;
            }
        }
    SampledField out = from_spectrum(H);
    cplx v0 = value_at_origin(out);
    for (cplx& z : out.v) z -= v0;
    return out;
}

struct BeltramiCoefficient {
    SampledField field;
    double k = 0.0;              // max |mu|
    double support_radius = 0.0;

    static BeltramiCoefficient from_field(SampledField mu) {
        BeltramiCoefficient out;
        double kmax = 0.0, rad = 0.0;
        for (int i = 0; i < mu.grid.size; ++i)
            for (int j = 0; j < mu.grid.size; ++j) {
                double a = std::abs(mu.at(i, j));
                if (a > kmax) kmax = a;
                if (a > 0.0) rad = std::max(rad, std::abs(mu.grid.point(i, j)));
            }
        if (kmax >= 1.0)
            throw std::invalid_argument("Beltrami coefficient needs ||mu||_inf < 1");
        out.field = std::move(mu);
        out.k = kmax;
        out.support_radius = rad;
        return out;
    }
};

// mu(z) = -((K-1)/(K+1)) z/zbar on the closed unit disc, 0 outside; the
// coefficient of the radial stretch z |z|^{1/K - 1}.
inline BeltramiCoefficient radial_stretch_mu(double K, const GridSpec& g) {
    if (K <= 1.0) throw std::invalid_argument("radial stretch needs K > 1");
    double k = (K - 1.0) / (K + 1.0);
    SampledField mu = sample(g, [k](cplx z) {
        if (std::abs(z) > 1.0) return cplx{};
        return -k * z / std::conj(z);
    });
    return BeltramiCoefficient::from_field(std::move(mu));
}

// Closed-form radial stretch and its derivatives (the oracle).
inline cplx radial_stretch_map(double K, cplx z) {
    double r = std::abs(z);
    if (r > 1.0) return z;
    return z * std::pow(r, 1.0 / K - 1.0);
}

inline cplx radial_stretch_dz(double K, cplx z) {
    double r = std::abs(z);
    if (r > 1.0) return 1.0;
    return 0.5 * (1.0 / K + 1.0) * std::pow(r, 1.0 / K - 1.0);
}

inline cplx radial_stretch_dzbar(double K, cplx z) {
    double r = std::abs(z);
    if (r > 1.0) return {};
    return 0.5 * (1.0 / K - 1.0) * (z / std::conj(z)) * std::pow(r, 1.0 / K - 1.0);
}

// Fixed-point iteration h <- mu + mu T h for h = (I - mu T)^{-1} mu.
// Converges geometrically with rate k since ||T||_2 = 1.
inline SampledField neumann_solve(const BeltramiCoefficient& mu, double tol,
                                  int maxit, int* iterations = nullptr,
                                  double* final_residual = nullptr) {
    const SampledField& m = mu.field;
    const double mu_norm = l2_norm(m);
    SampledField h = m;
    SampledField th = ab_transform(h, 1);
    double res = 0.0;
    for (int it = 1; it <= maxit; ++it) {
        SampledField next(m.grid);
        for (size_t k = 0; k < next.v.size(); ++k)
            next.v[k] = m.v[k] * (1.0 + th.v[k]);
        SampledField tnext = ab_transform(next, 1);
        // residual of the new iterate: next - mu - mu T next = mu (T h - T next)
        double acc = 0.0;
        for (size_t k = 0; k < next.v.size(); ++k)
            acc += std::norm(m.v[k] * (th.v[k] - tnext.v[k]));
        res = std::sqrt(acc * m.grid.cell_area());
        h = std::move(next);
        th = std::move(tnext);
        if (res <= tol * mu_norm || mu_norm == 0.0) {
            if (iterations) *iterations = it;
            if (final_residual) *final_residual = res;
            return h;
        }
    }
    if (final_residual) *final_residual = res;
    throw std::runtime_error("neumann_solve did not converge: residual " +
                             std::to_string(res));
}

struct NormalSolution {
    SampledField displacement;  // g = f - z
    int iterations = 0;
    double residual = 0.0;
};

// f = z + P((I - mu T)^{-1} mu), returned through its displacement
inline NormalSolution normal_solution(const BeltramiCoefficient& mu, double tol,
                                      int maxit) {
    NormalSolution out;
    SampledField h = neumann_solve(mu, tol, maxit, &out.iterations, &out.residual);
    out.displacement = cauchy_P(h);
    return out;
}

// || f_zbar - mu f_z ||_2 / || f_z ||_2 for f = z + g, derivatives spectral.
inline double beltrami_residual(const SampledField& displacement,
                                const BeltramiCoefficient& mu) {
    require_same_grid(displacement.grid, mu.field.grid);
    SampledField gz = wirtinger(displacement, Wirtinger::D);
    SampledField gzb = wirtinger(displacement, Wirtinger::Dbar);
    double num = 0.0, den = 0.0;
    for (size_t k = 0; k < gz.v.size(); ++k) {
        cplx fz = 1.0 + gz.v[k];
        num += std::norm(gzb.v[k] - mu.field.v[k] * fz);
        den += std::norm(fz);
    }
    return std::sqrt(num / den);
}

// J = |f_z|^2 - |f_zbar|^2 pointwise, f = z + g
inline SampledField jacobian(const SampledField& displacement) {
    SampledField gz = wirtinger(displacement, Wirtinger::D);
    SampledField gzb = wirtinger(displacement, Wirtinger::Dbar);
    SampledField out(displacement.grid);
    for (size_t k = 0; k < out.v.size(); ++k)
        out.v[k] = std::norm(1.0 + gz.v[k]) - std::norm(gzb.v[k]);
    return out;
}

// |f(B(0,r))| = integral of J over the disc of radius r; boundary cells are
// weighted by their 4x4 subsampled coverage fraction.
inline double area_image(const SampledField& displacement, double r) {
    const GridSpec& g = displacement.grid;
    if (r >= g.extent / 2.0) throw std::invalid_argument("area_image needs r < L/2");
    SampledField J = jacobian(displacement);
    const double h = g.spacing();
    double acc = 0.0;
    for (int i = 0; i < g.size; ++i)
        for (int j = 0; j < g.size; ++j) {
            double d = std::abs(g.point(i, j));
            if (d > r + h) continue;
            double frac = 1.0;
            if (d > r - h) {
                int hit = 0;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) {
                        cplx zs = g.point(i, j) +
                                  cplx((a - 1.5) * h / 4.0, (b - 1.5) * h / 4.0);
                        if (std::abs(zs) < r) ++hit;
                    }
                frac = hit / 16.0;
            }
            acc += J.at(i, j).real() * g.cell_area() * frac;
        }
    return acc;
}

}  // namespace abt
