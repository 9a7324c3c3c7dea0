#ifndef EWI_SPECFUN_HPP
#define EWI_SPECFUN_HPP

#include <array>
#include <complex>

#include "ewi/linalg.hpp"

// Cylindrical/spherical Bessel and Hankel functions plus radial derivative
// stacks of the Helmholtz fundamental solution. Everything here is a pure
// function; no caches, no global state.

namespace ewi {

// d^q/dr^q Phi_k(r) for q = 0..max_order, where Phi_k is the Helmholtz
// fundamental solution of the stated dimension:
//   2D: (i/4) H0^(1)(k r),   3D: e^{ikr}/(4 pi r)
struct RadialDerivStack {
    double k = 0.0;
    double r = 0.0;
    int dim = 0;
    int max_order = 0;
    std::array<cplx, 5> values{};

    cplx operator[](int q) const { return values[static_cast<std::size_t>(q)]; }
};

// J_order(x) for order in {0,1,2}, x >= 0.
double bessel_j(int order, double x);

// Spherical Bessel j0/j2; closed forms with a series branch near 0 to avoid
// the t^{-2} cancellation in j2.
double spherical_j(int order, double x);

// H_order^(1)(x) = J_order(x) + i Y_order(x) for order in 0..4, x > 0.
// Orders above 1 use the upward recurrence H_{n+1} = (2n/x) H_n - H_{n-1}.
cplx hankel1(int order, double x);

RadialDerivStack helmholtz_kernel_derivs(double k, double r, int dim, int max_order);

namespace specfun_detail {

// branch switchovers (series below, asymptotic/closed form above)
inline constexpr double kBesselSwitchX = 17.0;
inline constexpr double kSphericalSwitchX = 1e-2;

struct JY01 {
    double j0, j1, y0, y1;
};

JY01 jy01_series(double x);
JY01 jy01_asymptotic(double x);
double j2_series(double x);

double spherical_j0_series(double x);
double spherical_j0_closed(double x);
double spherical_j2_series(double x);
double spherical_j2_closed(double x);

} // namespace specfun_detail

} // namespace ewi

#endif // EWI_SPECFUN_HPP
