#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "ewi/specfun.hpp"

using ewi::bessel_j;
using ewi::cplx;
using ewi::hankel1;
using ewi::helmholtz_kernel_derivs;
using ewi::spherical_j;

namespace {

// Independent oracle: plain power series for J0, good to ~1e-15 for x <= 4
// (no cancellation there). Used to locate the first zero by bisection.
double j0_series_oracle(double x) {
    const long double q = (long double)x * x / 4.0L;
    long double sum = 1.0L, t = 1.0L;
    for (int k = 1; k <= 40; ++k) {
        t *= q / ((long double)k * k);
        sum += (k % 2 == 0) ? t : -t;
    }
    return (double)sum;
}

double bisect_j0_zero(double lo, double hi) {
    double flo = j0_series_oracle(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = j0_series_oracle(mid);
        if ((flo < 0) == (fm < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("bessel_j small-argument values") {
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(1, 0.0) == 0.0);
    CHECK(bessel_j(2, 0.0) == 0.0);

    const double z1 = bisect_j0_zero(2.0, 3.0);
    CHECK(z1 == doctest::Approx(2.404825557695773).epsilon(1e-14));
    CHECK(std::abs(bessel_j(0, z1)) <= 1e-12);
    CHECK(std::abs(bessel_j(0, 2.404825557695773)) <= 1e-12);
}

TEST_CASE("bessel_j reference values across both branches") {
    // frozen from a 30-digit independent evaluation
    struct Ref { int n; double x, v; };
    const Ref refs[] = {
        {0, 1.0, 0.7651976865579666},
        {1, 1.0, 0.4400505857449335},
        {0, 5.0, -0.17759677131433830},
        {1, 5.0, -0.32757913759146522},
        {2, 5.0, 0.046565116277752216},
        {0, 16.0, -0.17489907398362918},
        {1, 16.0, 0.090397175661304186},
        {0, 17.0, -0.16985425215118355},
        {1, 17.0, -0.097668492757780650},
        {0, 40.0, 0.0073668905842372896},
        {1, 40.0, 0.12603831803758500},
        {0, 100.0, 0.019985850304223122},
        {1, 100.0, -0.077145352014112158},
        {0, 500.0, -0.034100556880731998},
        {1, 500.0, 0.010472613470372293},
    };
    for (const auto& r : refs)
        CHECK(bessel_j(r.n, r.x) == doctest::Approx(r.v).epsilon(1e-12));
}

TEST_CASE("bessel_j rejects bad input") {
    CHECK_THROWS_AS(bessel_j(0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(bessel_j(0, std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(bessel_j(3, 1.0), std::invalid_argument);
}

TEST_CASE("series/asymptotic switchover agrees to 1e-12") {
    using namespace ewi::specfun_detail;
    const double x = kBesselSwitchX;
    const JY01 a = jy01_series(x);
    const JY01 b = jy01_asymptotic(x);
    CHECK(std::abs(a.j0 - b.j0) <= 1e-12);
    CHECK(std::abs(a.j1 - b.j1) <= 1e-12);
    CHECK(std::abs(a.y0 - b.y0) <= 1e-12);
    CHECK(std::abs(a.y1 - b.y1) <= 1e-12);
}

TEST_CASE("spherical_j values and branch continuity") {
    CHECK(spherical_j(0, 0.0) == 1.0);
    CHECK(spherical_j(2, 0.0) == 0.0);
    // oracle: closed form (3/t^2 - 1) sin t / t - 3 cos t / t^2 at t = 1 in
    // extended precision -> 0.06203505201137386
    CHECK(spherical_j(2, 1.0) == doctest::Approx(0.0620350520113739).epsilon(1e-12));
    CHECK(spherical_j(0, 2.5) == doctest::Approx(std::sin(2.5) / 2.5).epsilon(1e-15));

    using namespace ewi::specfun_detail;
    const double t = kSphericalSwitchX;
    CHECK(std::abs(spherical_j0_series(t) - spherical_j0_closed(t)) <= 1e-12);
    CHECK(std::abs(spherical_j2_series(t) - spherical_j2_closed(t)) <= 1e-12);

    CHECK_THROWS_AS(spherical_j(1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(spherical_j(0, -0.5), std::invalid_argument);
}

TEST_CASE("hankel1 reference values") {
    const cplx h0 = hankel1(0, 1.0);
    CHECK(h0.real() == doctest::Approx(0.7651976865579666).epsilon(1e-10));
    CHECK(h0.imag() == doctest::Approx(0.08825696421567696).epsilon(1e-9));
    const cplx h1 = hankel1(1, 1.0);
    CHECK(h1.real() == doctest::Approx(0.4400505857449335).epsilon(1e-10));
    CHECK(h1.imag() == doctest::Approx(-0.7812128213002887).epsilon(1e-10));

    CHECK_THROWS_AS(hankel1(0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(hankel1(0, -2.0), std::invalid_argument);
    CHECK_THROWS_AS(hankel1(5, 1.0), std::invalid_argument);
}

TEST_CASE("hankel1 recurrence consistency") {
    for (double x : {1.0, 5.0, 40.0}) {
        const cplx lhs = hankel1(2, x);
        const cplx rhs = (2.0 / x) * hankel1(1, x) - hankel1(0, x);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
    }
    // residual across orders 1..3 over a wide argument range
    for (double x = 0.5; x <= 100.0; x *= 1.37) {
        for (int n = 1; n <= 3; ++n) {
            const cplx hp = hankel1(n + 1, x);
            const cplx res = hp - ((2.0 * n / x) * hankel1(n, x) - hankel1(n - 1, x));
            CHECK(std::abs(res) <= 1e-12 * std::abs(hp));
        }
    }
}

TEST_CASE("helmholtz kernel spot values") {
    const auto s3 = helmholtz_kernel_derivs(1.0, 1.0, 3, 0);
    // e^{i}/(4 pi), frozen from a 30-digit evaluation of the closed form
    CHECK(s3[0].real() == doctest::Approx(0.0429958913714318).epsilon(1e-8));
    CHECK(s3[0].imag() == doctest::Approx(0.0669621333502909).epsilon(1e-8));

    const auto s2 = helmholtz_kernel_derivs(2.0, 3.0, 2, 0);
    const cplx expect = cplx(0.0, 0.25) * hankel1(0, 6.0);
    CHECK(std::abs(s2[0] - expect) <= 1e-15);

    CHECK_THROWS_AS(helmholtz_kernel_derivs(1.0, 0.0, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(helmholtz_kernel_derivs(1.0, -1.0, 3, 0), std::invalid_argument);
    CHECK_THROWS_AS(helmholtz_kernel_derivs(1.0, 1.0, 4, 0), std::invalid_argument);
    CHECK_THROWS_AS(helmholtz_kernel_derivs(1.0, 1.0, 3, 5), std::invalid_argument);
}

TEST_CASE("helmholtz kernel derivative stack vs finite differences") {
    // spot check demanded at (k=3, r=2) for both dims
    for (int dim : {2, 3}) {
        const double k = 3.0, r = 2.0, h = 1e-5;
        const auto s = helmholtz_kernel_derivs(k, r, dim, 1);
        const auto sp = helmholtz_kernel_derivs(k, r + h, dim, 0);
        const auto sm = helmholtz_kernel_derivs(k, r - h, dim, 0);
        const cplx fd = (sp[0] - sm[0]) / (2.0 * h);
        CHECK(std::abs(fd - s[1]) <= 1e-6 * std::abs(s[1]));
    }

    // full stack property over a log grid of (k, r); truncation-balanced step
    for (int dim : {2, 3}) {
        for (double k = 0.5; k <= 50.0; k *= 3.1623) {
            for (double r = 0.1; r <= 20.0; r *= 3.7606) {
                const double h = std::min(1e-5 * r, 2e-3 / k);
                const auto s = helmholtz_kernel_derivs(k, r, dim, 4);
                const auto sp = helmholtz_kernel_derivs(k, r + h, dim, 3);
                const auto sm = helmholtz_kernel_derivs(k, r - h, dim, 3);
                for (int q = 0; q <= 3; ++q) {
                    const cplx fd = (sp[q] - sm[q]) / (2.0 * h);
                    CHECK(std::abs(fd - s[q + 1]) <= 1e-5 * std::abs(s[q + 1]));
                }
            }
        }
    }
}

TEST_CASE("radial Helmholtz identity") {
    // Phi'' + ((dim-1)/r) Phi' + k^2 Phi = 0 away from r = 0
    for (int dim : {2, 3}) {
        for (double k : {0.7, 3.0, 12.0}) {
            for (double r : {0.3, 1.7, 8.0}) {
                const auto s = helmholtz_kernel_derivs(k, r, dim, 2);
                const cplx res = s[2] + ((dim - 1) / r) * s[1] + k * k * s[0];
                CHECK(std::abs(res) <= 1e-9 * std::abs(k * k * s[0]));
            }
        }
    }
}
