#include <catch_amalgamated.hpp>

#include <cmath>

#include "kraichnan/bessel.hpp"

using namespace kraichnan;

namespace {
constexpr double pi = 3.14159265358979323846;
}

TEST_CASE("series anchors at z = 0") {
    CHECK(bessel_j(0.0, 0.0).value == 1.0);
    CHECK(bessel_j(1.0, 0.0).value == 0.0);
}

TEST_CASE("half-integer orders reduce to trig closed forms") {
    // J_{-1/2}(z) = sqrt(2/pi z) cos z, J_{1/2}(z) = sqrt(2/pi z) sin z
    CHECK(std::abs(bessel_j(-0.5, pi / 2.0).value) < 1e-12);
    for (double z : {0.3, 1.0, 2.5, 7.0, 19.0}) {
        const double ref_m = std::sqrt(2.0 / (pi * z)) * std::cos(z);
        const double ref_p = std::sqrt(2.0 / (pi * z)) * std::sin(z);
        CHECK(bessel_j(-0.5, z).value == Catch::Approx(ref_m).margin(1e-12));
        CHECK(bessel_j(0.5, z).value == Catch::Approx(ref_p).margin(1e-12));
    }
}

TEST_CASE("integer-order literature anchors") {
    CHECK(bessel_j(0.0, 1.0).value == Catch::Approx(0.7651976865579666).epsilon(1e-13));
    CHECK(bessel_j(1.0, 1.0).value == Catch::Approx(0.4400505857449335).epsilon(1e-13));
    CHECK(bessel_j(0.0, 20.0).value == Catch::Approx(0.1670246643405831).margin(1e-11));
}

TEST_CASE("truncation estimate honors the advertised bound") {
    for (double nu : {-0.5, 0.0, 1.5, 5.0})
        for (double z : {0.1, 2.0, 11.0, 20.0}) {
            const BesselEval e = bessel_j(nu, z);
            CHECK(e.truncation_error < 1e-12 * std::max(1.0, std::abs(e.value)));
        }
}

TEST_CASE("domain guards") {
    CHECK_THROWS_AS(bessel_j(-1.0, 1.0), domain_error);
    CHECK_THROWS_AS(bessel_j(0.0, 20.5), domain_error);
    CHECK_THROWS_AS(bessel_j(0.0, -0.1), domain_error);
}

TEST_CASE("smallest zeros: closed forms and J0 anchor") {
    CHECK(smallest_zero(-0.5) == Catch::Approx(pi / 2.0).margin(1e-9));
    CHECK(smallest_zero(0.5) == Catch::Approx(pi).margin(1e-9));
    CHECK(smallest_zero(0.0) == Catch::Approx(2.404825557695773).margin(1e-6));
    CHECK(smallest_zero(1.0) == Catch::Approx(3.831705970207512).margin(1e-6));
}

TEST_CASE("J_nu vanishes at its located zero") {
    for (double nu : {-0.5, 0.0, 0.5, 1.0, 2.0, 5.0}) {
        const double j = smallest_zero(nu);
        CHECK(std::abs(detail::bessel_series(nu, j).value) < 1e-10);
    }
}

TEST_CASE("smallest zero increases with the order") {
    double prev = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double nu = -0.95 + 0.22 * i; // grid over (-1, 10]
        const double j = smallest_zero(nu);
        CHECK(j > prev);
        prev = j;
    }
}

TEST_CASE("zero_asymptotic formula and consistency with the located zero") {
    CHECK(zero_asymptotic(8.0) == Catch::Approx(8.0 + 1.85575 * 2.0));
    CHECK(zero_asymptotic(1.0) == Catch::Approx(2.85575));
    double prev = 1e300;
    for (double nu : {4.0, 8.0, 16.0}) {
        const double diff = std::abs(zero_asymptotic(nu) - smallest_zero(nu));
        CHECK(diff < prev);
        prev = diff;
    }
}

TEST_CASE("ratio continued fraction") {
    // large order: leading term z/(2 nu)
    CHECK(bessel_ratio(50.0, 1.0) == Catch::Approx(0.01).epsilon(0.05));
    // against two independent series evaluations
    const double direct = bessel_j(1.0, 1.0).value / bessel_j(0.0, 1.0).value;
    CHECK(bessel_ratio(1.0, 1.0) == Catch::Approx(direct).margin(1e-10));
    // defining identity at (nu, z) = (2, 1)
    const double lhs = bessel_ratio(2.0, 1.0);
    const double w = 1.0 / (2.0 * 2.0);
    const double rhs = w / (1.0 - w * bessel_ratio(3.0, 1.0));
    CHECK(std::abs(lhs - rhs) < 1e-10);
}

TEST_CASE("ratio pole detection") {
    // J_0 vanishes at its first zero, so nu = 1 hits the pole
    CHECK_THROWS_AS(bessel_ratio(1.0, 2.404825557695773), pole_error);
}

TEST_CASE("semicircle mgf values") {
    CHECK(semicircle_mgf(0.0) == 1.0);
    // partial sums 1 + 1/2 + 1/12 + 1/144 + 1/2880 + ...
    double ref = 0.0, term = 1.0;
    for (int n = 0; n < 30; ++n) {
        ref += term;
        term /= (n + 1.0) * (n + 2.0);
    }
    CHECK(semicircle_mgf(1.0) == Catch::Approx(ref).margin(1e-10));
    CHECK(semicircle_mgf(1.0) == Catch::Approx(1.5906368).margin(1e-7));
    // growth rate 2 with a theta^{-3/2} prefactor: at theta = 10 the exact
    // rate ln(mgf)/theta is 1.526 (the prefactor costs 1.5 ln(theta)/theta),
    // so match the asymptotic form there and check the bare rate far out
    const double theta = 10.0;
    const double asym = std::exp(2.0 * theta) * std::pow(theta, -1.5) /
                        (2.0 * std::sqrt(pi));
    CHECK(semicircle_mgf(theta) == Catch::Approx(asym).epsilon(0.05));
    const double rate100 = std::log(semicircle_mgf(100.0)) / 100.0;
    CHECK(rate100 > 1.9);
    CHECK(rate100 < 2.0);
}

TEST_CASE("mgf is even, at least 1, and log-convex") {
    for (double th = 0.0; th <= 5.0; th += 0.5) {
        CHECK(semicircle_mgf(th) >= 1.0);
        CHECK(semicircle_mgf(-th) == semicircle_mgf(th));
    }
    for (double th = 0.25; th <= 4.5; th += 0.25) {
        const double d2 = std::log(semicircle_mgf(th + 0.25)) -
                          2.0 * std::log(semicircle_mgf(th)) +
                          std::log(semicircle_mgf(th - 0.25));
        CHECK(d2 > -1e-12);
    }
}

TEST_CASE("lanczos gamma spot checks") {
    CHECK(detail::gamma_fn(0.5) == Catch::Approx(std::sqrt(pi)).epsilon(1e-13));
    CHECK(detail::gamma_fn(1.0) == Catch::Approx(1.0).epsilon(1e-13));
    CHECK(detail::gamma_fn(5.0) == Catch::Approx(24.0).epsilon(1e-13));
    CHECK(detail::gamma_fn(10.5) == Catch::Approx(1133278.3889487855673345).epsilon(1e-12));
}
