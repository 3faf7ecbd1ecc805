#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "abt/grid.hpp"
#include "abt/random_fields.hpp"

using namespace abt;
using Catch::Approx;

TEST_CASE("grid construction and preconditions") {
    GridSpec g = make_grid(8.0, 64);
    CHECK(g.cell_area() == Approx(0.015625).epsilon(1e-15));
    CHECK_THROWS_AS(make_grid(8.0, 63), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(8.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(-1.0, 64), std::invalid_argument);

    // half-cell offset: no sample near the origin, min |z| = (L/N)/sqrt(2)
    GridSpec g2 = make_grid(16.0, 256);
    double minr = 1e9;
    for (int i = 0; i < g2.size; ++i)
        for (int j = 0; j < g2.size; ++j) minr = std::min(minr, std::abs(g2.point(i, j)));
    CHECK(minr > 1.0 / 32.0);
    CHECK(minr == Approx(g2.spacing() / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("analytic families") {
    GridSpec g = make_grid(8.0, 128);
    SampledField one = make_constant(g, 1.0);
    for (const cplx& z : one.v) REQUIRE(z == cplx(1.0));

    // lehto(1, 0) is the identity inside the unit disc
    SampledField lh = make_lehto(g, 1, 0.0);
    SampledField id = make_identity(g);
    for (int i = 0; i < g.size; ++i)
        for (int j = 0; j < g.size; ++j)
            if (std::abs(g.point(i, j)) < 1.0)
                REQUIRE(std::abs(lh.at(i, j) - id.at(i, j)) < 1e-15);

    CHECK_THROWS_AS(make_lehto(g, 1, 0.7), std::invalid_argument);
    CHECK_THROWS_AS(sample_family(g, "no_such_family"), std::invalid_argument);

    // gaussian total mass int e^{-pi|z|^2} = 1
    SampledField gauss = make_gaussian(g);
    cplx mass{};
    for (const cplx& z : gauss.v) mass += z;
    mass *= g.cell_area();
    CHECK(std::abs(mass - cplx(1.0)) < 1e-12);
}

TEST_CASE("quadrature norms") {
    GridSpec g = make_grid(8.0, 256);
    SampledField fd = make_gaussian_dx(g);
    // ||d/dx gaussian||_2^2 = pi/2
    double n2 = lp_norm(fd, 2.0);
    CHECK(n2 * n2 == Approx(kPi / 2.0).margin(1e-6));
    // ||gaussian||_2 = 2^{-1/2} since int e^{-2 pi |z|^2} = 1/2
    CHECK(lp_norm(make_gaussian(g), 2.0) == Approx(std::pow(2.0, -0.5)).margin(1e-6));

    GridSpec g2 = make_grid(2.0, 16);
    CHECK(lp_norm(make_constant(g2, 1.0), 1.0) == Approx(4.0).epsilon(1e-14));
    CHECK_THROWS_AS(lp_norm(fd, 0.5), std::invalid_argument);

    // homogeneity |c| ||f||_p
    std::mt19937_64 rng(5);
    SampledField f = random_smooth_field(g, rng);
    for (double p : {1.0, 2.0, 3.5}) {
        double base = lp_norm(f, p);
        CHECK(lp_norm(scaled(f, cplx(-2.5, 1.0)), p) ==
              Approx(std::abs(cplx(-2.5, 1.0)) * base).epsilon(1e-12));
    }
}

TEST_CASE("weighted norms") {
    GridSpec g = make_grid(8.0, 128);
    std::mt19937_64 rng(7);
    SampledField f = random_smooth_field(g, rng);
    WeightField unit(g);
    CHECK(weighted_lp_norm(f, unit, 2.0) == Approx(lp_norm(f, 2.0)).epsilon(1e-14));

    WeightField doubled(g);
    for (double& w : doubled.w) w = 2.0;
    for (double p : {1.0, 2.0, 4.0})
        CHECK(weighted_lp_norm(f, doubled, p) ==
              Approx(std::pow(2.0, 1.0 / p) * lp_norm(f, p)).epsilon(1e-12));

    GridSpec other = make_grid(8.0, 64);
    WeightField mismatched(other);
    CHECK_THROWS_AS(weighted_lp_norm(f, mismatched, 2.0), std::invalid_argument);

    // f = |z|^{-alpha} chi_E with w = |z|^alpha at alpha = 1:
    // squared norm = pi/(2(2-alpha))
    GridSpec gs = make_grid(4.0, 512);
    SampledField qp = make_quadrant_power(gs, 1.0);
    WeightField w = WeightField(gs);
    for (int i = 0; i < gs.size; ++i)
        for (int j = 0; j < gs.size; ++j) w.at(i, j) = std::abs(gs.point(i, j));
    double nsq = std::pow(weighted_lp_norm(qp, w, 2.0), 2.0);
    CHECK(nsq == Approx(kPi / 2.0).epsilon(0.01));
}

TEST_CASE("pairing") {
    GridSpec g = make_grid(8.0, 128);
    std::mt19937_64 rng(11);
    SampledField f = random_smooth_field(g, rng);
    cplx self = pairing(f, f);
    CHECK(self.real() == Approx(std::pow(lp_norm(f, 2.0), 2.0)).epsilon(1e-12));
    CHECK(std::abs(self.imag()) < 1e-14);

    // odd integrand cancels
    cplx cross = pairing(make_gaussian(g), make_gaussian_dx(g));
    CHECK(std::abs(cross) < 1e-12);
}

TEST_CASE("transform round trip and Parseval") {
    GridSpec g = make_grid(8.0, 128);
    std::mt19937_64 rng(13);
    SampledField f = random_smooth_field(g, rng);
    SampledField back = from_spectrum(to_spectrum(f));
    CHECK(rel_l2_error(back, f) < 1e-12);

    SampledField h = random_smooth_field(g, rng);
    cplx space = pairing(f, h);
    cplx freq = spectral_pairing(to_spectrum(f), to_spectrum(h));
    CHECK(std::abs(space - freq) <= 1e-10 * lp_norm(f, 2.0) * lp_norm(h, 2.0));

    // constant field puts everything at frequency zero
    SpectralField C = to_spectrum(make_constant(g, cplx(2.0, -1.0)));
    for (int k1 = 0; k1 < g.size; ++k1)
        for (int k2 = 0; k2 < g.size; ++k2)
            if (k1 != 0 || k2 != 0) REQUIRE(std::abs(C.at(k1, k2)) < 1e-10);
    CHECK(std::abs(C.at(0, 0) - cplx(2.0, -1.0) * (g.extent * g.extent)) < 1e-9);
}

TEST_CASE("gaussian is its own transform") {
    GridSpec g = make_grid(16.0, 256);
    SpectralField F = to_spectrum(make_gaussian(g));
    double worst = 0.0;
    for (int k1 = 0; k1 < g.size; ++k1)
        for (int k2 = 0; k2 < g.size; ++k2) {
            cplx xi = g.freq(k1, k2);
            worst = std::max(worst,
                             std::abs(F.at(k1, k2) - std::exp(-kPi * std::norm(xi))));
        }
    CHECK(worst < 1e-8);
}
