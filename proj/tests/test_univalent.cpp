#include <catch2/catch_amalgamated.hpp>

#include "abt/univalent.hpp"

using namespace abt;
using Catch::Approx;

TEST_CASE("koebe function") {
    CHECK(koebe(cplx{}) == cplx{});
    TaylorCoeffs c = taylor_from_circle([](cplx z) { return koebe(z); }, 0.5, 20);
    CHECK(std::abs(c.coeff(1) - cplx(1.0)) < 1e-9);  // K'(0) = 1
    for (int n = 1; n <= 20; ++n)
        REQUIRE(std::abs(c.coeff(n) - cplx(double(n))) < 1e-6);
    // the image avoids the slit (-inf, -1/4]
    CHECK(koebe(cplx(-0.999, 0.0)).real() > -0.25);
    CHECK(koebe(cplx(-0.999, 0.0)).real() == Approx(-0.25).margin(1e-6));
    CHECK_THROWS_AS(koebe(cplx(1.2, 0.0)), std::invalid_argument);
}

TEST_CASE("taylor extraction") {
    TaylorCoeffs id = taylor_from_circle([](cplx z) { return z; }, 0.5, 10);
    CHECK(std::abs(id.coeff(1) - cplx(1.0)) < 1e-12);
    for (int n = 2; n <= 10; ++n) REQUIRE(std::abs(id.coeff(n)) < 1e-10);

    // exact for polynomials up to the coefficient count
    TaylorCoeffs poly = taylor_from_circle(
        [](cplx z) { return z + cplx(0.0, 2.0) * z * z * z; }, 0.6, 8);
    CHECK(std::abs(poly.coeff(3) - cplx(0.0, 2.0)) < 1e-10);
    for (int n : {2, 4, 5, 6, 7, 8}) REQUIRE(std::abs(poly.coeff(n)) < 1e-10);

    double alpha = 0.4;
    TaylorCoeffs blend =
        taylor_from_circle([alpha](cplx z) { return koebe_blend(alpha, z); }, 0.5, 10);
    CHECK(std::abs(blend.coeff(2) - cplx(2.0 * alpha)) < 1e-8);

    CHECK_THROWS_AS(taylor_from_circle([](cplx z) { return z; }, 1.5, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(taylor_from_circle([](cplx z) { return z; }, 0.5, 10, 20),
                    std::invalid_argument);
}

TEST_CASE("coefficient gates") {
    TaylorCoeffs kc = koebe_coeffs(12);
    CoefficientGates gk = coefficient_gates(kc);
    CHECK(gk.bieberbach);
    CHECK(gk.de_branges);
    CHECK(gk.bieberbach_equality);

    TaylorCoeffs id;
    id.a = {cplx(1.0)};
    CoefficientGates gi = coefficient_gates(id);
    CHECK(gi.bieberbach);
    CHECK_FALSE(gi.bieberbach_equality);

    TaylorCoeffs bad = koebe_coeffs(12);
    for (int n = 2; n <= 12; ++n) bad.a[n - 1] *= 1.01;
    CoefficientGates gb = coefficient_gates(bad);
    CHECK_FALSE(gb.de_branges);
    CHECK(gb.violations.size() == 11);

    TaylorCoeffs denorm = koebe_coeffs(4);
    denorm.a[0] = 1.5;
    CHECK_THROWS_AS(coefficient_gates(denorm), std::invalid_argument);
}

TEST_CASE("collision construction") {
    for (double alpha = 0.1; alpha <= 0.6 + 1e-9; alpha += 0.1) {
        CollisionWitness w = collision_construct(alpha);
        REQUIRE(w.defect <= 1e-9);
        REQUIRE(std::abs(w.z) < 1.0);
        REQUIRE(std::abs(w.w) < 1.0);
        REQUIRE(std::abs(w.z - w.w) > 1e-6);
        REQUIRE(w.a.real() > 0.5);
        REQUIRE(w.b.real() > 0.5);
        REQUIRE(std::abs(w.a * w.b * (1.0 - w.a - w.b) - w.gamma) <= 1e-9);
        REQUIRE(std::abs(1.0 - w.a - w.b) > 1.0);
    }
    CHECK_THROWS_AS(collision_construct(0.7), std::invalid_argument);
    CHECK_THROWS_AS(collision_construct(0.0), std::invalid_argument);

    // the worked example: alpha = 1/2 with x = 0.51
    CollisionWitness w = collision_from_x(0.5, 0.51);
    double y = w.a.imag() + w.b.imag();
    CHECK(y * y == Approx(1.9604).margin(1e-3));
    CHECK(w.defect <= 1e-9);
    CHECK(std::abs(w.z) < 1.0);
    CHECK(std::abs(w.w) < 1.0);
}

TEST_CASE("injectivity scans") {
    CHECK(injectivity_scan(0.0, 60, 7) == Approx(1.0).epsilon(1e-12));
    for (double alpha : {2.0 / 3.0, 0.8, 1.0})
        REQUIRE(injectivity_scan(alpha, 200, 7) >= 1e-3);
    CollisionWitness w = collision_construct(0.5);
    CHECK(injectivity_scan(0.5, 50, 7, {w.z, w.w}) <= 1e-6);
}

TEST_CASE("quadratic injectivity criterion") {
    CHECK(quadratic_has_collision(cplx(0.3, 0.0), 200000, 3));
    CHECK(quadratic_has_collision(cplx(0.5, 0.0), 200000, 3));
    CHECK_FALSE(quadratic_has_collision(cplx(0.2, 0.0), 200000, 3));
}

TEST_CASE("psi generating coefficients") {
    // extent 24: the angular lattice artifact in <T^n f, g> scales like L^{-4}
    // and needs this much room to drop below 1e-3
    GridSpec g = make_grid(24.0, 256);
    SampledField f = make_gaussian_dx(g);
    double n2 = l2_norm(f);
    CHECK(n2 * n2 == Approx(kPi / 2.0).margin(1e-5));
    SampledField f1 = scaled(f, 1.0 / n2);

    auto coeffs = psi_coefficients(f1, f1, 2.0, {}, 6);
    CHECK(coeffs[0] == cplx(1.0));
    // a = <T f1, g1> = 1/2, coefficient of z^2 is 2a
    CHECK(std::abs(coeffs[1]) / 2.0 == Approx(0.5).margin(1e-3));
    for (int n = 3; n <= 6; ++n) REQUIRE(std::abs(coeffs[n - 1]) < n * 1e-3);

    CHECK_THROWS_AS(psi_coefficients(f, f, 2.0, {}, 6), std::invalid_argument);
    CHECK_THROWS_AS(psi_coefficients(f1, f1, 2.0, {}, 20), std::invalid_argument);
}
