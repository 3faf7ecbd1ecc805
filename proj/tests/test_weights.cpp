#include <catch2/catch_amalgamated.hpp>

#include "abt/weights.hpp"

using namespace abt;
using Catch::Approx;

TEST_CASE("power weights") {
    GridSpec g = make_grid(4.0, 256);
    WeightField w0 = power_weight(0.0, g);
    for (double v : w0.w) REQUIRE(v == 1.0);

    WeightField w1 = power_weight(1.0, g);
    // value at the sample closest to |z| = 0.5 along the diagonal
    int c = g.size / 2;
    for (int i = c; i < g.size; ++i) {
        cplx z = g.point(i, i);
        if (std::abs(std::abs(z) - 0.5) < g.spacing()) {
            REQUIRE(w1.at(i, i) == Approx(std::abs(z)).epsilon(1e-14));
            break;
        }
    }

    WeightField steep = power_weight(-1.9, g);
    for (double v : steep.w) REQUIRE(std::isfinite(v));
    CHECK_THROWS_AS(power_weight(2.0, g), std::invalid_argument);
}

TEST_CASE("a2 estimate") {
    GridSpec g = make_grid(4.0, 256);
    SquareFamily fam = make_square_family(g, 5);
    CHECK(a2_estimate(WeightField(g), fam) == Approx(1.0).epsilon(1e-12));

    for (double alpha : {1.0, -1.0, 1.5, -1.5, 1.9, -1.9}) {
        WeightField w = power_weight(alpha, g);
        double window = a2_estimate(w, fam) * (2.0 - std::abs(alpha));
        REQUIRE(window >= 0.2);
        REQUIRE(window <= 5.0);
    }

    WeightField w = power_weight(1.5, g);
    WeightField winv(g);
    for (size_t k = 0; k < w.w.size(); ++k) winv.w[k] = 1.0 / w.w[k];
    CHECK(std::abs(a2_estimate(w, fam) - a2_estimate(winv, fam)) < 1e-10);

    SquareFamily bigger = fam;
    bigger.squares.push_back({0.3, -0.2, 0.5, 0.1});
    CHECK(a2_estimate(w, bigger) >= a2_estimate(w, fam));

    SquareFamily outside;
    outside.squares.push_back({g.extent, 0.0, 1.0, 0.0});
    CHECK_THROWS_AS(a2_estimate(w, outside), std::invalid_argument);
    CHECK_THROWS_AS(make_square_family(g, 1, 2, 16), std::invalid_argument);
}

TEST_CASE("sector norm against the closed form") {
    GridSpec g = make_grid(4.0, 512);
    for (double alpha : {0.5, 1.0, 1.5}) {
        double measured = sector_weighted_norm_sq(g, alpha);
        REQUIRE(measured == Approx(kPi / (2.0 * (2.0 - alpha))).epsilon(0.02));
    }
    // alpha = 0 reduces to the sector area pi/4
    CHECK(sector_weighted_norm_sq(g, 0.0) == Approx(kPi / 4.0).epsilon(0.01));
}

TEST_CASE("sharpness experiment") {
    GridSpec g = make_grid(4.0, 256);
    SharpnessReport r1 = sharpness_experiment(1.0, g);
    CHECK(r1.f_norm_sq == Approx(kPi / 2.0).epsilon(0.02));
    CHECK(r1.tf_on_x_sq >= 0.5 * r1.lower_bound);

    SharpnessReport r15 = sharpness_experiment(1.5, g);
    SharpnessReport r19 = sharpness_experiment(1.9, g);
    CHECK(r19.ratio > r15.ratio);
    CHECK(r15.ratio > r1.ratio);

    CHECK_THROWS_AS(sharpness_experiment(2.5, g), std::invalid_argument);
    CHECK_THROWS_AS(sharpness_experiment(1.0, make_grid(4.0, 128)),
                    std::invalid_argument);
}

TEST_CASE("affine norm identity") {
    GridSpec g = make_grid(8.0, 256);
    SampledField bump = sample(g, [](cplx z) { return std::exp(-2.0 * std::norm(z)); });
    WeightField w = weight_from_function(g, [&](cplx z) {
        return 1.0 + 0.5 * std::cos(2.0 * kPi * z.real() / g.extent) +
               0.25 * std::sin(2.0 * kPi * z.imag() / g.extent);
    });
    CHECK(affine_norm_identity(bump, AffineMap{}, w) < 1e-14);
    CHECK(affine_norm_identity(bump, AffineMap{1, 0, 0, 0}, w) < 1e-10);
    CHECK(affine_norm_identity(bump, AffineMap{3, 5, -2, 0}, w) < 1e-10);
    CHECK(affine_norm_identity(bump, AffineMap{0, 0, 0, 1}, w) < 1e-3);
}
