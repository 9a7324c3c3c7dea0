#ifndef EWI_ELASTIC_HPP
#define EWI_ELASTIC_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ewi/linalg.hpp"
#include "ewi/specfun.hpp"

// Isotropic homogeneous elastic medium: moment-tensor point sources, the
// Navier Green tensor with its source-side gradient, the radiated
// displacement field and boundary tractions.
//
// Gradient convention everywhere: grad_u[i][j] = du_i / dx_j.

namespace ewi {

enum class WaveType { P, S };

inline char wave_type_char(WaveType a) { return a == WaveType::P ? 'p' : 's'; }

struct LameParameters {
    double lambda = 0.0;
    double mu = 0.0;
};

// standing assumption: mu > 0 and dim*lambda + 2*mu > 0
inline void validate_medium(const LameParameters& m, int dim) {
    if (!(m.mu > 0.0)) throw std::invalid_argument("medium: mu must be > 0");
    if (!(dim * m.lambda + 2.0 * m.mu > 0.0))
        throw std::invalid_argument("medium: dim*lambda + 2*mu must be > 0");
}

struct WaveSpeeds {
    double c_p = 0.0;
    double c_s = 0.0;
};

inline WaveSpeeds wave_speeds(const LameParameters& m) {
    return WaveSpeeds{std::sqrt(m.lambda + 2.0 * m.mu), std::sqrt(m.mu)};
}

inline double wave_speed(const LameParameters& m, WaveType a) {
    return a == WaveType::P ? std::sqrt(m.lambda + 2.0 * m.mu) : std::sqrt(m.mu);
}

struct Wavenumbers {
    double k_p = 0.0;
    double k_s = 0.0;
};

inline Wavenumbers wavenumbers(const LameParameters& m, double omega) {
    if (!(omega > 0.0)) throw std::invalid_argument("wavenumbers: frequency must be > 0");
    const WaveSpeeds c = wave_speeds(m);
    return Wavenumbers{omega / c.c_p, omega / c.c_s};
}

template <std::size_t D>
struct MomentTensorSource {
    Vec<D> location{};
    Mat<D> tensor{};
};

template <std::size_t D>
struct SourceConfiguration {
    std::vector<MomentTensorSource<D>> sources;
};

template <std::size_t D>
inline double min_pairwise_distance(const SourceConfiguration<D>& cfg) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < cfg.sources.size(); ++a)
        for (std::size_t b = a + 1; b < cfg.sources.size(); ++b)
            best = std::min(best, norm<D>(cfg.sources[a].location - cfg.sources[b].location));
    return best;
}

// Enforced at configuration load; tests that need degenerate configurations
// construct the structs directly.
template <std::size_t D>
inline void validate_sources(const SourceConfiguration<D>& cfg) {
    if (cfg.sources.empty()) throw std::invalid_argument("sources: need at least one source");
    for (std::size_t j = 0; j < cfg.sources.size(); ++j) {
        if (frob<D>(cfg.sources[j].tensor) == 0.0)
            throw std::invalid_argument("sources[" + std::to_string(j) +
                                        "]: moment tensor must be nonzero");
    }
    if (!(min_pairwise_distance(cfg) > 0.0))
        throw std::invalid_argument("sources: locations must be pairwise distinct");
}

namespace elastic_detail {

inline constexpr double kSourceGuard = 1e-8;

// radial-derivative scalar combinations for tensor derivatives of Phi(|d|)
struct RadialCombos {
    cplx phi, d1, d2;   // Phi, Phi', Phi''
    cplx a3, b3;        // third derivative:  a3 e e e + b3 (delta e)-sym
    cplx a4, b4, c4;    // fourth derivative: a4 eeee + b4 (delta ee)-sym + c4 (delta delta)-sym
};

inline RadialCombos radial_combos(const RadialDerivStack& s, int order) {
    RadialCombos c{};
    const double r = s.r;
    c.phi = s[0];
    c.d1 = s[1];
    c.d2 = s[2];
    if (order >= 3) {
        c.a3 = s[3] - 3.0 * s[2] / r + 3.0 * s[1] / (r * r);
        c.b3 = s[2] / r - s[1] / (r * r);
    }
    if (order >= 4) {
        c.a4 = s[4] - 6.0 * s[3] / r + 15.0 * s[2] / (r * r) - 15.0 * s[1] / (r * r * r);
        c.b4 = s[3] / r - 3.0 * s[2] / (r * r) + 3.0 * s[1] / (r * r * r);
        c.c4 = s[2] / (r * r) - s[1] / (r * r * r);
    }
    return c;
}

// Hessian of Phi(|d|): d2 e_i e_j + (d1/r)(delta_ij - e_i e_j)
template <std::size_t D>
inline CMat<D> hessian(const RadialCombos& c, const Vec<D>& e, double r) {
    CMat<D> h;
    const cplx t = c.d1 / r;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j)
            h[i][j] = c.d2 * e[i] * e[j] + t * ((i == j ? 1.0 : 0.0) - e[i] * e[j]);
    return h;
}

} // namespace elastic_detail

// G(x,y) = (k_s^2/w^2) Phi_{k_s} I + (1/w^2) grad_x grad_x^T (Phi_{k_s} - Phi_{k_p})
template <std::size_t D>
inline CMat<D> green_tensor(const LameParameters& med, double omega, const Vec<D>& x,
                            const Vec<D>& y) {
    using namespace elastic_detail;
    const Vec<D> d = x - y;
    const double r = norm<D>(d);
    if (r < kSourceGuard)
        throw std::invalid_argument("green_tensor: evaluation point coincides with source point");
    const Vec<D> e = (1.0 / r) * d;
    const Wavenumbers k = wavenumbers(med, omega);
    const auto cs = radial_combos(helmholtz_kernel_derivs(k.k_s, r, D, 2), 2);
    const auto cp = radial_combos(helmholtz_kernel_derivs(k.k_p, r, D, 2), 2);
    const double w2 = omega * omega;
    const CMat<D> hs = hessian<D>(cs, e, r);
    const CMat<D> hp = hessian<D>(cp, e, r);
    CMat<D> g;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) {
            g[i][j] = (hs[i][j] - hp[i][j]) / w2;
            if (i == j) g[i][j] += (k.k_s * k.k_s / w2) * cs.phi;
        }
    return g;
}

// entry [i][k][l] = d/dy_l G_ik(x, y)
template <std::size_t D>
inline CTen3<D> green_tensor_source_grad(const LameParameters& med, double omega,
                                         const Vec<D>& x, const Vec<D>& y) {
    using namespace elastic_detail;
    const Vec<D> d = x - y;
    const double r = norm<D>(d);
    if (r < kSourceGuard)
        throw std::invalid_argument(
            "green_tensor_source_grad: evaluation point coincides with source point");
    const Vec<D> e = (1.0 / r) * d;
    const Wavenumbers k = wavenumbers(med, omega);
    const auto cs = radial_combos(helmholtz_kernel_derivs(k.k_s, r, D, 3), 3);
    const auto cp = radial_combos(helmholtz_kernel_derivs(k.k_p, r, D, 3), 3);
    const double w2 = omega * omega;
    const cplx ks2w2 = k.k_s * k.k_s / w2;

    CTen3<D> out;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t kk = 0; kk < D; ++kk)
            for (std::size_t l = 0; l < D; ++l) {
                // third difference-variable derivative of Phi_s - Phi_p
                const double dik = (i == kk) ? 1.0 : 0.0;
                const double dil = (i == l) ? 1.0 : 0.0;
                const double dkl = (kk == l) ? 1.0 : 0.0;
                const double sym = dik * e[l] + dil * e[kk] + dkl * e[i];
                const cplx t3 = (cs.a3 - cp.a3) * e[i] * e[kk] * e[l] + (cs.b3 - cp.b3) * sym;
                // d/dy = -d/d(difference)
                out[i][kk][l] = -(ks2w2 * cs.d1 * e[l] * dik + t3 / w2);
            }
    return out;
}

template <std::size_t D>
struct FieldValue {
    CVec<D> u{};
    CMat<D> grad{}; // only valid when requested
};

// u_i(x) = - sum_j sum_{k,l} M^{(j)}_{kl} d/dy_l G_ik(x, s_j); optional x-gradient
template <std::size_t D>
inline FieldValue<D> radiated_field(const SourceConfiguration<D>& cfg, const LameParameters& med,
                                    double omega, const Vec<D>& x, bool with_gradient) {
    using namespace elastic_detail;
    const Wavenumbers k = wavenumbers(med, omega);
    const double w2 = omega * omega;
    const double ks2w2 = k.k_s * k.k_s / w2;
    const int order = with_gradient ? 4 : 3;

    FieldValue<D> out;
    for (const auto& src : cfg.sources) {
        const Vec<D> d = x - src.location;
        const double r = norm<D>(d);
        if (r < kSourceGuard)
            throw std::invalid_argument("radiated_field: evaluation at a source location");
        const Vec<D> e = (1.0 / r) * d;
        const auto cs = radial_combos(helmholtz_kernel_derivs(k.k_s, r, D, order), order);
        const auto cp = radial_combos(helmholtz_kernel_derivs(k.k_p, r, D, order), order);
        const Mat<D>& M = src.tensor;

        Vec<D> Me{}, MTe{};
        double trM = 0.0, eMe = 0.0;
        for (std::size_t i = 0; i < D; ++i) {
            trM += M[i][i];
            for (std::size_t j = 0; j < D; ++j) {
                Me[i] += M[i][j] * e[j];
                MTe[i] += M[j][i] * e[j];
                eMe += e[i] * M[i][j] * e[j];
            }
        }

        // u_i += M_kl D1_ikl with D1 = ks2w2 Phi_s' e_l delta_ik + (T^s - T^p)/w^2
        const cplx a3 = (cs.a3 - cp.a3) / w2;
        const cplx b3 = (cs.b3 - cp.b3) / w2;
        for (std::size_t i = 0; i < D; ++i)
            out.u[i] += ks2w2 * cs.d1 * Me[i] + a3 * eMe * e[i] +
                        b3 * (Me[i] + MTe[i] + trM * e[i]);

        if (with_gradient) {
            const CMat<D> hs = hessian<D>(cs, e, r);
            const cplx a4 = (cs.a4 - cp.a4) / w2;
            const cplx b4 = (cs.b4 - cp.b4) / w2;
            const cplx c4 = (cs.c4 - cp.c4) / w2;
            for (std::size_t i = 0; i < D; ++i)
                for (std::size_t m = 0; m < D; ++m) {
                    cplx g = 0.0;
                    for (std::size_t l = 0; l < D; ++l) g += M[i][l] * hs[l][m]; // (M H^s)_im
                    g *= ks2w2;
                    const double dim_ = (i == m) ? 1.0 : 0.0;
                    g += a4 * eMe * e[i] * e[m];
                    g += b4 * ((Me[i] + MTe[i]) * e[m] + e[i] * (Me[m] + MTe[m]) +
                               eMe * dim_ + trM * e[i] * e[m]);
                    g += c4 * (M[i][m] + M[m][i] + trM * dim_);
                    out.grad[i][m] += g;
                }
        }
    }
    return out;
}

// Surface traction T_nu u evaluated from the displacement gradient:
//   2D: 2 mu (nu.grad) u + lambda nu div u - mu nu^perp div^perp u
//   3D: 2 mu (nu.grad) u + lambda nu div u - mu nu x curl u
// u_value is accepted for interface symmetry; only grad_u enters.
template <std::size_t D>
inline CVec<D> traction(const LameParameters& med, const Vec<D>& normal, const CVec<D>& u_value,
                        const CMat<D>& grad_u) {
    (void)u_value;
    if (std::abs(norm<D>(normal) - 1.0) > 1e-12)
        throw std::invalid_argument("traction: normal must be a unit vector");
    cplx div = 0.0;
    for (std::size_t i = 0; i < D; ++i) div += grad_u[i][i];

    CVec<D> t{};
    for (std::size_t i = 0; i < D; ++i) {
        cplx ng = 0.0;
        for (std::size_t j = 0; j < D; ++j) ng += grad_u[i][j] * normal[j];
        t[i] = 2.0 * med.mu * ng + med.lambda * normal[i] * div;
    }
    if constexpr (D == 2) {
        const cplx divperp = grad_u[1][0] - grad_u[0][1];
        t[0] -= med.mu * (-normal[1]) * divperp;
        t[1] -= med.mu * (normal[0]) * divperp;
    } else {
        const cplx c0 = grad_u[2][1] - grad_u[1][2];
        const cplx c1 = grad_u[0][2] - grad_u[2][0];
        const cplx c2 = grad_u[1][0] - grad_u[0][1];
        t[0] -= med.mu * (normal[1] * c2 - normal[2] * c1);
        t[1] -= med.mu * (normal[2] * c0 - normal[0] * c2);
        t[2] -= med.mu * (normal[0] * c1 - normal[1] * c0);
    }
    return t;
}

} // namespace ewi

#endif // EWI_ELASTIC_HPP
