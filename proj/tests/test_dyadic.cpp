#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "abt/averaging.hpp"
#include "abt/dyadic.hpp"
#include "abt/random_fields.hpp"

using namespace abt;
using Catch::Approx;

TEST_CASE("haar functions") {
    const int D = 6;
    for (int lev = 0; lev < D; ++lev) {
        DyadicInterval I{lev, (1L << lev) - 1};
        CHECK(step_l2(haar(I, D)) == Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(haar(DyadicInterval{6, 0}, 6), std::invalid_argument);

    // exhaustive orthogonality at depth 6
    std::vector<StepFunction> basis;
    for (int lev = 0; lev < D; ++lev)
        for (long idx = 0; idx < (1L << lev); ++idx)
            basis.push_back(haar(DyadicInterval{lev, idx}, D));
    for (size_t a = 0; a < basis.size(); ++a)
        for (size_t b = a + 1; b < basis.size(); ++b)
            REQUIRE(std::abs(step_inner(basis[a], basis[b])) < 1e-12);
}

TEST_CASE("martingale transform") {
    const int D = 8;
    std::mt19937_64 rng(3);
    StepFunction f = random_step(D, rng);

    StepFunction zero = martingale_transform(f, MartingaleSymbol::constant(D, 0.0));
    CHECK(step_l2(zero) == 0.0);

    // sigma = 1 reconstructs f minus its mean
    StepFunction ones = martingale_transform(f, MartingaleSymbol::constant(D, 1.0));
    cplx mean{};
    for (const cplx& z : f.leaf) mean += z;
    mean /= static_cast<double>(f.leaf.size());
    double worst = 0.0;
    for (size_t k = 0; k < f.leaf.size(); ++k)
        worst = std::max(worst, std::abs(ones.leaf[k] - (f.leaf[k] - mean)));
    CHECK(worst < 1e-12);

    for (int t = 0; t < 20; ++t) {
        MartingaleSymbol s = MartingaleSymbol::random(D, rng);
        REQUIRE(step_l2(martingale_transform(f, s)) <= step_l2(f) * (1.0 + 1e-12));
    }
    CHECK_THROWS_AS(MartingaleSymbol::constant(D, cplx(1.5, 0.0)), std::invalid_argument);
}

TEST_CASE("dyadic weights and A2") {
    DyadicWeight unit = DyadicWeight::from_leaves(std::vector<double>(64, 1.0));
    CHECK(dyadic_a2(unit) == 1.0);

    DyadicWeight two = DyadicWeight::from_leaves({1.0, 9.0});
    CHECK(dyadic_a2(two) == Approx(25.0 / 9.0).epsilon(1e-15));

    // averages refine consistently: <w>_I = (<w>_{I-} + <w>_{I+})/2
    std::mt19937_64 rng(5);
    DyadicWeight w = random_dyadic_weight(8, rng);
    for (int lev = 0; lev < 8; ++lev)
        for (long idx = 0; idx < (1L << lev); ++idx) {
            DyadicInterval I{lev, idx};
            REQUIRE(w.mean(I) ==
                    Approx(0.5 * (w.mean(I.minus()) + w.mean(I.plus()))).epsilon(1e-14));
        }

    CHECK_THROWS_AS(DyadicWeight::from_leaves({1.0, -2.0}), std::invalid_argument);
    CHECK_THROWS_AS(DyadicWeight::from_leaves({1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("weighted haar system") {
    const int D = 6;
    std::mt19937_64 rng(7);
    DyadicWeight w = random_dyadic_weight(D, rng);

    // w = 1 reduces to the plain Haar function
    DyadicWeight unit = DyadicWeight::from_leaves(std::vector<double>(1 << D, 1.0));
    DyadicInterval I{2, 1};
    StepFunction hw = weighted_haar_step(I, unit);
    StepFunction h = haar(I, D);
    for (size_t k = 0; k < h.leaf.size(); ++k)
        REQUIRE(std::abs(hw.leaf[k] - h.leaf[k]) < 1e-14);

    // normalization, zero mean, positivity on the right half
    for (int lev = 0; lev < D; ++lev)
        for (long idx = 0; idx < (1L << lev); ++idx) {
            DyadicInterval J{lev, idx};
            StepFunction hj = weighted_haar_step(J, w);
            REQUIRE(std::abs(weighted_inner(hj, hj, w) - cplx(1.0)) < 1e-12);
            StepFunction chi(D);
            long span = 1L << (D - lev);
            for (long k = 0; k < span; ++k) chi.leaf[J.index * span + k] = 1.0;
            REQUIRE(std::abs(weighted_inner(hj, chi, w)) < 1e-12);
            REQUIRE(weighted_haar(J, w).on_plus > 0.0);
        }

    // exhaustive orthogonality in L^2(w)
    std::vector<StepFunction> basis;
    for (int lev = 0; lev < D; ++lev)
        for (long idx = 0; idx < (1L << lev); ++idx)
            basis.push_back(weighted_haar_step(DyadicInterval{lev, idx}, w));
    for (size_t a = 0; a < basis.size(); ++a)
        for (size_t b = a + 1; b < basis.size(); ++b)
            REQUIRE(std::abs(weighted_inner(basis[a], basis[b], w)) < 1e-12);
}

TEST_CASE("haar decomposition in the weighted system") {
    DyadicWeight two = DyadicWeight::from_leaves({1.0, 9.0});
    HaarDecomposition d = haar_decomposition(DyadicInterval{0, 0}, two);
    CHECK(d.beta == Approx(0.8).epsilon(1e-15));  // (b-a)/(a+b)

    DyadicWeight unit = DyadicWeight::from_leaves(std::vector<double>(16, 1.0));
    HaarDecomposition du = haar_decomposition(DyadicInterval{0, 0}, unit);
    CHECK(du.alpha == Approx(1.0).epsilon(1e-15));
    CHECK(du.beta == 0.0);

    const int D = 7;
    std::mt19937_64 rng(11);
    for (int t = 0; t < 30; ++t) {
        DyadicWeight w = random_dyadic_weight(D, rng);
        for (int lev = 0; lev < D; ++lev) {
            DyadicInterval I{lev, static_cast<long>(rng() % (1UL << lev))};
            HaarDecomposition dec = haar_decomposition(I, w);
            REQUIRE(std::abs(dec.alpha) > 0.0);
            REQUIRE(std::abs(dec.alpha) <= std::sqrt(w.mean(I)) + 1e-12);
            REQUIRE(std::abs(dec.beta) <= std::abs(w.delta(I)) / w.mean(I) + 1e-12);
            StepFunction h = haar(I, D);
            StepFunction hw = weighted_haar_step(I, w);
            long span = 1L << (D - lev);
            for (long k = 0; k < span; ++k) {
                size_t cell = I.index * span + k;
                cplx recon = dec.alpha * hw.leaf[cell] +
                             dec.beta / std::sqrt(I.length());
                REQUIRE(std::abs(recon - h.leaf[cell]) < 1e-12);
            }
        }
    }
}

TEST_CASE("bellman quadratic form") {
    CHECK(bellman_hessian_check(1.0, 1.0, 1.0, 0.0, 0.25));
    // plug-in values: LHS = 3/16, RHS = 1/8
    {
        double x = 1, y = 1, u = 1, v = 0, alpha = 0.25;
        double b = std::pow(x * y, alpha);
        double lhs = alpha * b * ((1 - alpha) * (u * u + v * v));
        CHECK(lhs == Approx(3.0 / 16.0).epsilon(1e-15));
        CHECK(alpha * (1 - 2 * alpha) * b * (u * u + v * v) ==
              Approx(1.0 / 8.0).epsilon(1e-15));
    }
    // equality on the diagonal
    {
        double alpha = 0.3, u = 0.7;
        double lhs = alpha * ((1 - alpha) * 2 * u * u - 2 * alpha * u * u);
        double rhs = alpha * (1 - 2 * alpha) * 2 * u * u;
        CHECK(lhs == Approx(rhs).epsilon(1e-14));
    }
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> logu(-3.0, 3.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (double alpha : {0.1, 0.25, 0.4})
        for (int t = 0; t < 10000; ++t)
            REQUIRE(bellman_hessian_check(std::pow(10.0, logu(rng)),
                                          std::pow(10.0, logu(rng)), gauss(rng),
                                          gauss(rng), alpha));
    CHECK_THROWS_AS(bellman_hessian_check(1.0, 1.0, 1.0, 1.0, 0.7),
                    std::invalid_argument);
}

TEST_CASE("carleson sums") {
    const int D = 8;
    DyadicWeight unit = DyadicWeight::from_leaves(std::vector<double>(1 << D, 1.0));
    CHECK(carleson_sum(unit, 0.25, DyadicInterval{0, 0}).sum == 0.0);

    DyadicWeight two = DyadicWeight::from_leaves({1.0, 9.0});
    CarlesonResult r = carleson_sum(two, 0.25, DyadicInterval{0, 0});
    // single term: (25/9)^{1/4} ((8/5)^2 + (8/5)^2)
    double mu_root = std::pow(25.0 / 9.0, 0.25) * 2.0 * std::pow(8.0 / 5.0, 2.0);
    CHECK(r.sum == Approx(mu_root).epsilon(1e-12));
    CHECK(r.sum <= r.bound);

    std::mt19937_64 rng(17);
    for (int t = 0; t < 200; ++t) {
        DyadicWeight w = random_dyadic_weight(D, rng);
        CarlesonResult rr = carleson_sum(w, 0.25, DyadicInterval{0, 0});
        REQUIRE(rr.sum <= rr.bound);
    }
    CHECK_THROWS_AS(carleson_sum(two, 0.6, DyadicInterval{0, 0}), std::invalid_argument);
}

TEST_CASE("wittwer probes stay bounded") {
    const int D = 8;
    std::mt19937_64 rng(19);
    StepFunction f = random_step(D, rng);
    DyadicWeight unit = DyadicWeight::from_leaves(std::vector<double>(1 << D, 1.0));
    MartingaleSymbol s = MartingaleSymbol::random(D, rng);
    CHECK(wittwer_probe(unit, s, f) <= 1.0 + 1e-12);

    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        DyadicWeight w = random_dyadic_weight(D, rng);
        MartingaleSymbol sym = MartingaleSymbol::random(D, rng);
        StepFunction g = random_step(D, rng);
        worst = std::max(worst, wittwer_probe(w, sym, g));
    }
    CHECK(worst <= 10.0);
}

TEST_CASE("planar haar projection") {
    GridSpec g = make_grid(8.0, 128);
    SampledField c = make_constant(g, cplx(3.0, 1.0));
    CHECK(l2_norm(planar_haar_projection(c, 0, 0, 1.0)) < 1e-12);

    SampledField f = sample(g, [](cplx z) { return std::exp(-std::norm(z)); });
    SampledField once = planar_haar_projection(f, 5, 2, 2.0);
    SampledField twice = planar_haar_projection(once, 5, 2, 2.0);
    CHECK(rel_l2_error(twice, once) < 1e-12);

    CHECK_THROWS_AS(planar_haar_projection(f, 0, 0, 0.7), std::invalid_argument);

    // the translation average over aligned reference points reproduces the
    // convolution with F^rho
    const double rho = 1.0;
    const int side = static_cast<int>(std::lround(rho / g.spacing()));
    SampledField avg(g);
    for (int ti = 0; ti < side; ++ti)
        for (int tj = 0; tj < side; ++tj) {
            SampledField p = planar_haar_projection(f, ti, tj, rho);
            for (size_t k = 0; k < avg.v.size(); ++k) avg.v[k] += p.v[k];
        }
    for (cplx& z : avg.v) z /= static_cast<double>(side) * side;

    SampledField conv(g);
    const int n = g.size;
    const double h = g.spacing();
    for (int di = -side; di <= side; ++di)
        for (int dj = -side; dj <= side; ++dj) {
            double kv = F_kernel(di * h / rho, dj * h / rho) / (rho * rho) * g.cell_area();
            if (kv == 0.0) continue;
            for (int i = 0; i < n; ++i) {
                int si = ((i - di) % n + n) % n;
                for (int j = 0; j < n; ++j)
                    conv.at(i, j) += kv * f.at(si, ((j - dj) % n + n) % n);
            }
        }
    CHECK(rel_l2_error(avg, conv) < 0.02);
}
