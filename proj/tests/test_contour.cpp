#include <catch2/catch_amalgamated.hpp>

#include "confcalc/contour.hpp"

using namespace confcalc;

namespace {
double dist(cplx a, cplx b) { return std::abs(a - b); }
}  // namespace

TEST_CASE("contour integral uses the oint dz/z = 1 normalization") {
    CircleContour unit(0.0, 1.0);
    CHECK(dist(contour_integral([](cplx z) { return 1.0 / z; }, unit), 1.0) < 1e-14);
    CHECK(dist(contour_integral([](cplx) { return cplx(1.0); }, unit), 0.0) < 1e-14);
    CHECK(dist(contour_integral([](cplx) { return cplx(1.0); },
                                CircleContour(cplx(2.0, -1.0), 0.7)),
               0.0) < 1e-14);
}

TEST_CASE("contour integral counts enclosed residues only") {
    auto f = [](cplx z) { return 1.0 / (z - 0.3); };
    CHECK(dist(contour_integral(f, CircleContour(0.0, 1.0)), 1.0) < 1e-13);
    CHECK(dist(contour_integral(f, CircleContour(0.0, 0.2)), 0.0) < 1e-13);
}

TEST_CASE("orientation flips the sign") {
    CircleContour cw(0.0, 1.0, -1);
    CHECK(dist(contour_integral([](cplx z) { return 1.0 / z; }, cw), -1.0) < 1e-14);
}

TEST_CASE("trapezoid rule is spectrally converged by M = 64") {
    auto f = [](cplx z) { return std::exp(z) / (z - 0.4); };
    cplx at64 = contour_integral(f, CircleContour(0.0, 1.0, +1, 64));
    cplx at128 = contour_integral(f, CircleContour(0.0, 1.0, +1, 128));
    cplx at256 = contour_integral(f, CircleContour(0.0, 1.0, +1, 256));
    CHECK(dist(at64, at128) < 1e-12);
    CHECK(dist(at128, at256) < 1e-14);
}

TEST_CASE("contour node on a singularity raises") {
    CHECK_THROWS_AS(contour_integral([](cplx z) { return 1.0 / (z - 1.0); },
                                     CircleContour(0.0, 1.0)),
                    contour_singularity_error);
}

TEST_CASE("contour validation") {
    CHECK_THROWS_AS(CircleContour(0.0, -1.0), config_error);
    CHECK_THROWS_AS(CircleContour(0.0, 1.0, +1, 7), config_error);
}

TEST_CASE("laurent coefficients of polynomials and rational functions") {
    CircleContour unit(0.0, 1.0);
    auto sq = laurent_coeffs([](cplx z) { return z * z; }, unit, 0, 3);
    CHECK(dist(sq[0], 0.0) < 1e-14);
    CHECK(dist(sq[1], 0.0) < 1e-14);
    CHECK(dist(sq[2], 1.0) < 1e-14);
    CHECK(dist(sq[3], 0.0) < 1e-14);

    auto geom = laurent_coeffs([](cplx z) { return 1.0 / (1.0 - z); },
                               CircleContour(0.0, 0.5), 0, 2);
    for (int n = 0; n < 3; ++n) CHECK(dist(geom[n], 1.0) < 1e-13);

    auto mixed = laurent_coeffs([](cplx z) { return 1.0 / z + 2.0 * z; }, unit, -1, 1);
    CHECK(dist(mixed[0], 1.0) < 1e-14);
    CHECK(dist(mixed[1], 0.0) < 1e-14);
    CHECK(dist(mixed[2], 2.0) < 1e-14);
}

TEST_CASE("disk-analytic maps have no negative laurent tail") {
    auto coeffs = laurent_coeffs([](cplx z) { return std::exp(z) / (2.0 - z); },
                                 CircleContour(0.0, 0.8), -8, -1);
    for (const cplx& c : coeffs) CHECK(std::abs(c) < 1e-10);
}

TEST_CASE("cauchy taylor extraction reproduces derivatives") {
    auto f = [](cplx z) { return std::exp(0.7 * z) * (1.0 + z); };
    // f'(z) = e^{0.7z}(0.7(1+z) + 1)
    cplx w(0.3, -0.2);
    cplx expected = std::exp(0.7 * w) * (0.7 * (1.0 + w) + 1.0);
    CHECK(dist(cauchy_derivative(f, w), expected) < 1e-11);

    auto coeffs = cauchy_taylor_coeffs(f, w, 2, 0.05);
    CHECK(dist(coeffs[0], f(w)) < 1e-14);
    CHECK(dist(coeffs[1], expected) < 1e-12);
}
