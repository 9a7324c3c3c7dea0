#include "ewi/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ewi {

namespace specfun_detail {

namespace {

using ldbl = long double;
using lcplx = std::complex<ldbl>;

constexpr ldbl kPi = 3.141592653589793238462643383279502884L;
constexpr ldbl kEulerGamma = 0.577215664901532860606512090082402431L;

} // namespace

// Power series about 0, evaluated in 80-bit extended precision so the
// alternating-sum cancellation stays below ~1e-13 up to the switchover.
JY01 jy01_series(double x) {
    const ldbl xl = x;
    const ldbl q = xl * xl / 4.0L;

    // J0 = sum (-q)^k / (k!)^2,  J1 = (x/2) sum (-q)^k / (k! (k+1)!)
    ldbl j0 = 1.0L, j1 = 1.0L;
    // Y log-series companions:
    // Y0 = (2/pi)[(ln(x/2)+g) J0 + sum_{k>=1} (-1)^{k+1} H_k q^k/(k!)^2]
    // Y1 = (2/pi)[(ln(x/2)+g) J1 - 1/x - (x/4) sum_{k>=0} (-1)^k (H_k+H_{k+1}) q^k/(k!(k+1)!)]
    ldbl s0 = 0.0L;      // sum for Y0
    ldbl s1 = 1.0L;      // sum for Y1, k=0 term: (H_0+H_1) = 1
    ldbl t0 = 1.0L;      // q^k/(k!)^2
    ldbl t1 = 1.0L;      // q^k/(k!(k+1)!)
    ldbl hk = 0.0L;      // H_k
    for (int k = 1; k <= 60; ++k) {
        const ldbl kk = static_cast<ldbl>(k);
        t0 *= q / (kk * kk);
        t1 *= q / (kk * (kk + 1.0L));
        hk += 1.0L / kk;
        const ldbl sgn = (k % 2 == 0) ? 1.0L : -1.0L;
        j0 += sgn * t0;
        j1 += sgn * t1;
        s0 += -sgn * hk * t0;
        s1 += sgn * (hk + hk + 1.0L / (kk + 1.0L)) * t1;
        if (t0 < 1e-22L * std::max(std::abs(j0), (ldbl)1.0L) && k > 4) break;
    }
    j1 *= xl / 2.0L;

    JY01 out{};
    out.j0 = static_cast<double>(j0);
    out.j1 = static_cast<double>(j1);
    if (x == 0.0) {
        out.y0 = -std::numeric_limits<double>::infinity();
        out.y1 = -std::numeric_limits<double>::infinity();
        return out;
    }
    const ldbl lg = std::log(xl / 2.0L) + kEulerGamma;
    out.y0 = static_cast<double>((2.0L / kPi) * (lg * j0 + s0));
    out.y1 = static_cast<double>((2.0L / kPi) * (lg * j1 - 1.0L / xl - (xl / 4.0L) * s1));
    return out;
}

// Hankel asymptotic sum: H_nu^(1)(x) ~ sqrt(2/(pi x)) e^{i(x - nu pi/2 - pi/4)}
// sum_k i^k a_k(nu) x^{-k},  a_k = a_{k-1} (4 nu^2 - (2k-1)^2)/(8k).
static lcplx hankel_asym(int nu, double x) {
    const ldbl xl = x;
    const ldbl mu = 4.0L * nu * nu;
    lcplx sum(1.0L, 0.0L);
    ldbl ak = 1.0L;
    lcplx ipow(0.0L, 1.0L);
    ldbl prev = 1.0L;
    for (int k = 1; k <= 2 * static_cast<int>(x); ++k) {
        const ldbl tk = 2.0L * k - 1.0L;
        ak *= (mu - tk * tk) / (8.0L * k);
        const ldbl mag = std::abs(ak) / std::pow(xl, (ldbl)k);
        if (mag > prev) break; // divergent tail of the asymptotic series
        sum += ipow * (ak / std::pow(xl, (ldbl)k));
        ipow *= lcplx(0.0L, 1.0L);
        if (mag < 1e-21L) break;
        prev = mag;
    }
    const ldbl chi = xl - nu * kPi / 2.0L - kPi / 4.0L;
    const lcplx phase(std::cos(chi), std::sin(chi));
    return std::sqrt(2.0L / (kPi * xl)) * phase * sum;
}

JY01 jy01_asymptotic(double x) {
    const lcplx h0 = hankel_asym(0, x);
    const lcplx h1 = hankel_asym(1, x);
    return JY01{static_cast<double>(h0.real()), static_cast<double>(h1.real()),
                static_cast<double>(h0.imag()), static_cast<double>(h1.imag())};
}

double j2_series(double x) {
    const ldbl xl = x;
    const ldbl q = xl * xl / 4.0L;
    ldbl sum = 1.0L;
    ldbl t = 1.0L; // q^k/(k!(k+2)!)
    for (int k = 1; k <= 60; ++k) {
        const ldbl kk = static_cast<ldbl>(k);
        t *= q / (kk * (kk + 2.0L));
        sum += ((k % 2 == 0) ? 1.0L : -1.0L) * t;
        if (t < 1e-22L && k > 4) break;
    }
    return static_cast<double>((q / 2.0L) * sum);
}

double spherical_j0_closed(double x) {
    const ldbl t = x;
    return static_cast<double>(std::sin(t) / t);
}

double spherical_j0_series(double x) {
    const double t2 = x * x;
    return 1.0 - t2 / 6.0 + t2 * t2 / 120.0 - t2 * t2 * t2 / 5040.0;
}

double spherical_j2_closed(double x) {
    // extended precision: the two terms cancel to O(x^2) near 0
    const ldbl t = x;
    return static_cast<double>((3.0L / (t * t) - 1.0L) * std::sin(t) / t -
                               3.0L * std::cos(t) / (t * t));
}

double spherical_j2_series(double x) {
    const double t2 = x * x;
    return t2 / 15.0 - t2 * t2 / 210.0 + t2 * t2 * t2 / 7560.0;
}

} // namespace specfun_detail

namespace {

using specfun_detail::JY01;

void require_finite_nonneg(double x, const char* fn) {
    if (!std::isfinite(x) || x < 0.0)
        throw std::invalid_argument(std::string(fn) + ": argument must be finite and >= 0");
}

JY01 jy01(double x) {
    return (x < specfun_detail::kBesselSwitchX) ? specfun_detail::jy01_series(x)
                                                : specfun_detail::jy01_asymptotic(x);
}

} // namespace

double bessel_j(int order, double x) {
    require_finite_nonneg(x, "bessel_j");
    if (order < 0 || order > 2) throw std::invalid_argument("bessel_j: order must be 0, 1 or 2");
    if (x < specfun_detail::kBesselSwitchX) {
        const JY01 v = specfun_detail::jy01_series(x);
        if (order == 0) return v.j0;
        if (order == 1) return v.j1;
        return specfun_detail::j2_series(x);
    }
    const JY01 v = specfun_detail::jy01_asymptotic(x);
    if (order == 0) return v.j0;
    if (order == 1) return v.j1;
    return (2.0 / x) * v.j1 - v.j0;
}

double spherical_j(int order, double x) {
    require_finite_nonneg(x, "spherical_j");
    if (order != 0 && order != 2)
        throw std::invalid_argument("spherical_j: order must be 0 or 2");
    const bool small = x < specfun_detail::kSphericalSwitchX;
    if (order == 0)
        return small ? specfun_detail::spherical_j0_series(x)
                     : specfun_detail::spherical_j0_closed(x);
    return small ? specfun_detail::spherical_j2_series(x)
                 : specfun_detail::spherical_j2_closed(x);
}

cplx hankel1(int order, double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw std::invalid_argument("hankel1: argument must be finite and > 0");
    if (order < 0 || order > 4) throw std::invalid_argument("hankel1: order must be in 0..4");
    const JY01 v = jy01(x);
    cplx hm(v.j0, v.y0);
    if (order == 0) return hm;
    cplx h(v.j1, v.y1);
    for (int n = 1; n < order; ++n) {
        const cplx hn = (2.0 * n / x) * h - hm;
        hm = h;
        h = hn;
    }
    return h;
}

RadialDerivStack helmholtz_kernel_derivs(double k, double r, int dim, int max_order) {
    if (!(r > 0.0) || !std::isfinite(r))
        throw std::invalid_argument("helmholtz_kernel_derivs: r must be finite and > 0");
    if (!(k > 0.0) || !std::isfinite(k))
        throw std::invalid_argument("helmholtz_kernel_derivs: k must be finite and > 0");
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("helmholtz_kernel_derivs: dim must be 2 or 3");
    if (max_order < 0 || max_order > 4)
        throw std::invalid_argument("helmholtz_kernel_derivs: max_order must be in 0..4");

    RadialDerivStack st;
    st.k = k;
    st.r = r;
    st.dim = dim;
    st.max_order = max_order;

    if (dim == 2) {
        // d^q/dr^q (i/4) H0(kr) = (i/4) k^q f_q(x), x = kr, from
        // H0' = -H1, H1' = H0 - H1/x:
        //   f0 = H0
        //   f1 = -H1
        //   f2 = -H0 + H1/x
        //   f3 =  H0/x + H1 (1 - 2/x^2)
        //   f4 =  H0 (1 - 3/x^2) + H1 (-2/x + 6/x^3)
        const double x = k * r;
        const JY01 v = jy01(x);
        const cplx h0(v.j0, v.y0), h1(v.j1, v.y1);
        const double ix = 1.0 / x;
        const cplx f[5] = {
            h0,
            -h1,
            -h0 + ix * h1,
            ix * h0 + (1.0 - 2.0 * ix * ix) * h1,
            (1.0 - 3.0 * ix * ix) * h0 + (-2.0 * ix + 6.0 * ix * ix * ix) * h1,
        };
        const cplx i4(0.0, 0.25);
        double kq = 1.0;
        for (int q = 0; q <= max_order; ++q) {
            st.values[static_cast<std::size_t>(q)] = i4 * kq * f[q];
            kq *= k;
        }
        return st;
    }

    // 3D: Leibniz on e^{ikr} * r^{-1}:
    // d^q/dr^q = sum_j C(q,j) (ik)^{q-j} e^{ikr} (-1)^j j! r^{-(j+1)}
    const cplx ik(0.0, k);
    const cplx e = std::exp(cplx(0.0, k * r)) / (4.0 * M_PI);
    for (int q = 0; q <= max_order; ++q) {
        cplx sum = 0.0;
        double binom = 1.0;
        double fact = 1.0;   // j!
        double sign = 1.0;   // (-1)^j
        double rpow = 1.0 / r;
        cplx ikpow = std::pow(ik, q);
        for (int j = 0; j <= q; ++j) {
            sum += binom * ikpow * sign * fact * rpow;
            binom *= static_cast<double>(q - j) / static_cast<double>(j + 1);
            fact *= static_cast<double>(j + 1);
            sign = -sign;
            rpow /= r;
            ikpow /= ik;
        }
        st.values[static_cast<std::size_t>(q)] = e * sum;
    }
    return st;
}

} // namespace ewi
