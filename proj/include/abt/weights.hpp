#pragma once

// Planar Muckenhoupt A2 machinery: power weights, characteristic estimation
// over square families (a certified lower estimate of the supremum), the
// weighted sharpness experiment for T on L^2(|z|^alpha), and the affine
// change-of-variables norm identity.

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "abt/grid.hpp"
#include "abt/operators.hpp"
#include "abt/quadrature.hpp"

namespace abt {

inline WeightField power_weight(double alpha, const GridSpec& g) {
    if (std::abs(alpha) >= 2.0)
        throw std::invalid_argument("power weight needs |alpha| < 2");
    WeightField out(g);
    for (int i = 0; i < g.size; ++i)
        for (int j = 0; j < g.size; ++j)
            out.at(i, j) = std::pow(std::abs(g.point(i, j)), alpha);
    return out;
}

inline WeightField weight_from_function(const GridSpec& g,
                                        const std::function<double(cplx)>& w) {
    WeightField out(g);
    for (int i = 0; i < g.size; ++i)
        for (int j = 0; j < g.size; ++j) {
            double v = w(g.point(i, j));
            if (!(v > 0.0) || !std::isfinite(v))
                throw std::invalid_argument("weight must be positive and finite");
            out.at(i, j) = v;
        }
    return out;
}

struct Square {
    double cx = 0.0, cy = 0.0;  // center
    double side = 1.0;
    double angle = 0.0;  // orientation

    bool contains(double x, double y) const {
        double dx = x - cx, dy = y - cy;
        double c = std::cos(angle), s = std::sin(angle);
        double u = c * dx + s * dy, v = -s * dx + c * dy;
        return std::abs(u) <= side / 2 && std::abs(v) <= side / 2;
    }
};

struct SquareFamily {
    std::vector<Square> squares;
};

// Dyadic scales with origin-centered, random and randomly rotated placements.
// All squares stay inside the grid domain.
inline SquareFamily make_square_family(const GridSpec& g, unsigned seed,
                                       int scales = 4, int per_scale = 16) {
    if (scales < 3 || per_scale < 16)
        throw std::invalid_argument("square family needs >= 3 scales and >= 16 placements");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SquareFamily fam;
    double side = g.extent / 2.0;
    for (int s = 0; s < scales; ++s, side /= 2.0) {
        if (side < 8.0 * g.spacing()) break;
        fam.squares.push_back({0.0, 0.0, side, 0.0});  // centered, axis aligned
        fam.squares.push_back({0.0, 0.0, side, kPi / 4.0});
        for (int k = 0; k < per_scale; ++k) {
            double room = (g.extent - side * std::sqrt(2.0)) / 2.0;
            double cx = (2.0 * unit(rng) - 1.0) * room;
            double cy = (2.0 * unit(rng) - 1.0) * room;
            double ang = unit(rng) * kPi / 2.0;
            fam.squares.push_back({cx, cy, side, ang});
        }
    }
    return fam;
}

// max over the family of <w>_Q <w^{-1}>_Q; a lower estimate of [w]_{A2}.
inline double a2_estimate(const WeightField& w, const SquareFamily& fam) {
    const GridSpec& g = w.grid;
    double best = 0.0;
    for (const Square& q : fam.squares) {
        double half = q.side / 2.0 * std::sqrt(2.0);
        if (std::abs(q.cx) + half > g.extent / 2.0 ||
            std::abs(q.cy) + half > g.extent / 2.0)
            throw std::invalid_argument("square leaves the grid domain");
        // restrict the scan to the bounding box
        int i0 = std::max(0, static_cast<int>((q.cx - half + g.extent / 2) / g.spacing()) - 1);
        int i1 = std::min(g.size, static_cast<int>((q.cx + half + g.extent / 2) / g.spacing()) + 2);
        int j0 = std::max(0, static_cast<int>((q.cy - half + g.extent / 2) / g.spacing()) - 1);
        int j1 = std::min(g.size, static_cast<int>((q.cy + half + g.extent / 2) / g.spacing()) + 2);
        double sum = 0.0, sum_inv = 0.0;
        long count = 0;
        for (int i = i0; i < i1; ++i)
            for (int j = j0; j < j1; ++j) {
                if (!q.contains(g.coord(i), g.coord(j))) continue;
                double v = w.at(i, j);
                sum += v;
                sum_inv += 1.0 / v;
                ++count;
            }
        if (count < 4) continue;
        best = std::max(best, (sum / count) * (sum_inv / count));
    }
    return best;
}

// ---------------------------------------------------------------------------
// sharpness experiment: f = |z|^{-alpha} chi_E on the first-quadrant unit
// sector, w = |z|^alpha, X = -E.

namespace detail {

// int_{[0,R] x [0,R]} |z|^{-alpha} dA = 2 R^{2-alpha}/(2-alpha) *
// int_0^{pi/4} sec(phi)^{2-alpha} dphi
inline double corner_block_integral(double R, double alpha) {
    double angular = integrate_1d(
        [alpha](double phi) { return std::pow(std::cos(phi), alpha - 2.0); }, 0.0,
        kPi / 4.0, 1e-13);
    return 2.0 * std::pow(R, 2.0 - alpha) / (2.0 - alpha) * angular;
}

}  // namespace detail

// ||f||^2_{L2(w_alpha)} = int_E |z|^{-alpha} for the sector field. The block
// [0, R0]^2 holding the singular corner is integrated exactly in polar form
// (the origin is a cell corner, so the block is a whole number of cells);
// interior cells use the midpoint rule and arc-crossing cells an 8x8
// coverage subsample. Closed form: pi / (2 (2 - alpha)).
inline double sector_weighted_norm_sq(const GridSpec& g, double alpha) {
    const double h = g.spacing();
    // cells per side of the exact corner block, kept inside the unit arc
    const int block = std::max(2, std::min(16, static_cast<int>(0.4 / h)));
    const double r0 = block * h;
    double acc = detail::corner_block_integral(r0, alpha);
    int limit = static_cast<int>(std::ceil(1.0 / h)) + 2;
    int c = g.size / 2;
    for (int i = c; i < std::min(g.size, c + limit); ++i)
        for (int j = c; j < std::min(g.size, c + limit); ++j) {
            double x0 = g.coord(i) - h / 2, y0 = g.coord(j) - h / 2;
            if (x0 + h <= r0 + h / 4 && y0 + h <= r0 + h / 4) continue;  // in the block
            double rr_min = x0 * x0 + y0 * y0;
            if (rr_min >= 1.0) continue;
            double xf = x0 + h, yf = y0 + h;
            if (xf * xf + yf * yf < 1.0) {
                double xm = x0 + h / 2, ym = y0 + h / 2;
                acc += std::pow(xm * xm + ym * ym, -alpha / 2.0) * h * h;
            } else {
                // the unit arc crosses the cell
                double sub = 0.0;
                for (int a = 0; a < 8; ++a)
                    for (int b = 0; b < 8; ++b) {
                        double xs = x0 + (a + 0.5) * h / 8, ys = y0 + (b + 0.5) * h / 8;
                        if (xs * xs + ys * ys < 1.0)
                            sub += std::pow(xs * xs + ys * ys, -alpha / 2.0);
                    }
                acc += sub / 64.0 * h * h;
            }
        }
    return acc;
}

struct SharpnessReport {
    double alpha = 0.0;
    double f_norm_sq = 0.0;         // ||f||^2_{L2(w)}, refined quadrature
    double f_norm_sq_closed = 0.0;  // pi / (2 (2-alpha))
    double tf_on_x_sq = 0.0;        // ||Tf chi_X||^2_{L2(w)}
    double lower_bound = 0.0;       // C_l / (2-alpha)^3, C_l = pi/4096
    double ratio = 0.0;             // ||Tf||_{L2(w)} / ||f||_{L2(w)}
};

inline SharpnessReport sharpness_experiment(double alpha, const GridSpec& g) {
    if (!(alpha > 0.0) || alpha >= 2.0)
        throw std::invalid_argument("sharpness experiment needs alpha in (0,2)");
    if (g.size < 256 || g.extent < 4.0)
        throw std::invalid_argument("sharpness experiment needs N >= 256, L >= 4");

    SharpnessReport rep;
    rep.alpha = alpha;
    rep.f_norm_sq = sector_weighted_norm_sq(g, alpha);
    rep.f_norm_sq_closed = kPi / (2.0 * (2.0 - alpha));
    rep.lower_bound = kPi / 4096.0 / std::pow(2.0 - alpha, 3.0);

    SampledField f = make_quadrant_power(g, alpha);
    WeightField w = power_weight(alpha, g);
    SampledField tf = ab_transform(f, 1);

    // X = -E; its indicator on cell centers (boundary cells subsampled like E)
    double acc = 0.0;
    for (int i = 0; i < g.size; ++i)
        for (int j = 0; j < g.size; ++j) {
            double x = -g.coord(i), y = -g.coord(j);
            if (in_quadrant_sector(x, y))
                acc += std::norm(tf.at(i, j)) * w.at(i, j) * g.cell_area();
        }
    rep.tf_on_x_sq = acc;
    rep.ratio = weighted_lp_norm(tf, w, 2.0) / std::sqrt(rep.f_norm_sq);
    return rep;
}

// ---------------------------------------------------------------------------
// affine change of variables, restricted to exact lattice maps plus dyadic
// dilations: ||g o A||_{L2(w o A)} = det(Lambda)^{-1/2} ||g||_{L2(w)}.

struct AffineMap {
    int quarter_turns = 0;  // rotation by quarter_turns * pi/2
    int translate_i = 0;    // integer-cell translation
    int translate_j = 0;
    int dilation_log2 = 0;  // scale 2^dilation_log2, A(x) includes x -> x/scale sampling

    double det() const { return std::ldexp(1.0, 2 * dilation_log2); }
};

namespace detail {

inline cplx bilinear_sample(const SampledField& f, double x, double y) {
    const GridSpec& g = f.grid;
    double h = g.spacing();
    double u = (x + g.extent / 2.0) / h - 0.5;
    double v = (y + g.extent / 2.0) / h - 0.5;
    int i0 = static_cast<int>(std::floor(u)), j0 = static_cast<int>(std::floor(v));
    double fu = u - i0, fv = v - j0;
    auto wrap = [&](int k) { return ((k % g.size) + g.size) % g.size; };
    cplx f00 = f.at(wrap(i0), wrap(j0)), f10 = f.at(wrap(i0 + 1), wrap(j0));
    cplx f01 = f.at(wrap(i0), wrap(j0 + 1)), f11 = f.at(wrap(i0 + 1), wrap(j0 + 1));
    return f00 * (1 - fu) * (1 - fv) + f10 * fu * (1 - fv) + f01 * (1 - fu) * fv +
           f11 * fu * fv;
}

}  // namespace detail

inline SampledField compose_with_affine(const SampledField& f, const AffineMap& A) {
    const GridSpec& g = f.grid;
    SampledField out(g);
    double scale = std::ldexp(1.0, A.dilation_log2);
    if (A.dilation_log2 == 0) {
        // exact sample permutation
        auto wrap = [&](long k) { return static_cast<int>(((k % g.size) + g.size) % g.size); };
        for (int i = 0; i < g.size; ++i)
            for (int j = 0; j < g.size; ++j) {
                int si = i, sj = j;
                int q = ((A.quarter_turns % 4) + 4) % 4;
                for (int r = 0; r < q; ++r) {
                    int ti = sj, tj = g.size - 1 - si;
                    si = ti;
                    sj = tj;
                }
                out.at(i, j) = f.at(wrap(si + A.translate_i), wrap(sj + A.translate_j));
            }
        return out;
    }
    for (int i = 0; i < g.size; ++i)
        for (int j = 0; j < g.size; ++j) {
            cplx z = g.point(i, j);
            // rotate, scale, translate; the plane interpretation demands that
            // points mapped outside the domain read zero rather than wrap
            cplx rz = z * std::polar(1.0, -A.quarter_turns * kPi / 2.0);
            double x = rz.real() * scale + A.translate_i * g.spacing();
            double y = rz.imag() * scale + A.translate_j * g.spacing();
            if (std::abs(x) >= g.extent / 2.0 || std::abs(y) >= g.extent / 2.0) continue;
            out.at(i, j) = detail::bilinear_sample(f, x, y);
        }
    return out;
}

// relative discrepancy | ||g o A||_{L2(w o A)} - det^{-1/2} ||g||_{L2(w)} | / rhs
inline double affine_norm_identity(const SampledField& f, const AffineMap& A,
                                   const WeightField& w) {
    SampledField fa = compose_with_affine(f, A);
    SampledField wfield(w.grid);
    for (size_t k = 0; k < w.w.size(); ++k) wfield.v[k] = w.w[k];
    SampledField wa = compose_with_affine(wfield, A);
    WeightField w2(w.grid);
    for (size_t k = 0; k < w2.w.size(); ++k)
        w2.w[k] = std::max(1e-300, wa.v[k].real());
    double lhs = weighted_lp_norm(fa, w2, 2.0);
    double rhs = weighted_lp_norm(f, w, 2.0) / std::sqrt(A.det());
    return std::abs(lhs - rhs) / rhs;
}

}  // namespace abt
