#ifndef EWI_IMAGING_HPP
#define EWI_IMAGING_HPP

#include <functional>
#include <string>
#include <vector>

#include "ewi/specfun.hpp"
#include "ewi/synth.hpp"

// Inversion core: plane-wave test functions V_alpha, the reduced boundary
// functional R, unit-sphere direction quadrature, the closed-form direction
// kernels, and the multi-frequency indicator.

namespace ewi {

template <std::size_t D>
struct DirectionQuadrature {
    std::vector<Vec<D>> directions; // unit vectors on S^{d-1}
    std::vector<double> weights;    // sum to |S^{d-1}|

    std::size_t size() const { return directions.size(); }
};

// Resolution rule sized for the highest frequency and the sampling-domain
// circumradius rho: the integrand e^{i w xhat.z} paired with data of angular
// band ~ w rho needs polar order ~ w rho; spectral rules converge past that.
template <std::size_t D>
inline int default_direction_resolution(double omega_max, double rho) {
    if constexpr (D == 2)
        return 2 * static_cast<int>(std::ceil(omega_max * rho)) + 16;
    else
        return static_cast<int>(std::ceil(omega_max * rho)) + 8;
}

namespace imaging_detail {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = -p1 / dp;
            t += dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

} // namespace imaging_detail

// 2D: equispaced angles with weights 2 pi / n (trapezoid rule).
// 3D: Gauss-Legendre in the polar cosine (order = resolution) times
//     equispaced azimuth (2 * resolution), normalized to sum to 4 pi.
template <std::size_t D>
DirectionQuadrature<D> direction_quadrature(int resolution) {
    static_assert(D == 2 || D == 3);
    if (resolution < 4) throw std::invalid_argument("direction_quadrature: resolution must be >= 4");
    DirectionQuadrature<D> q;
    if constexpr (D == 2) {
        const int n = resolution;
        q.directions.reserve(n);
        q.weights.assign(n, 2.0 * M_PI / n);
        for (int i = 0; i < n; ++i) {
            const double th = 2.0 * M_PI * i / n;
            q.directions.push_back(Vec<2>{std::cos(th), std::sin(th)});
        }
    } else {
        std::vector<double> gx, gw;
        imaging_detail::gauss_legendre(resolution, gx, gw);
        const int m = 2 * resolution;
        q.directions.reserve(static_cast<std::size_t>(resolution) * m);
        q.weights.reserve(static_cast<std::size_t>(resolution) * m);
        double wsum = 0.0;
        for (int i = 0; i < resolution; ++i) {
            const double c = gx[i];
            const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
            for (int j = 0; j < m; ++j) {
                const double ph = 2.0 * M_PI * j / m;
                q.directions.push_back(Vec<3>{s * std::cos(ph), s * std::sin(ph), c});
                q.weights.push_back(gw[i] * 2.0 * M_PI / m);
                wsum += q.weights.back();
            }
        }
        const double scale = 4.0 * M_PI / wsum;
        for (double& w : q.weights) w *= scale;
    }
    return q;
}

namespace imaging_detail {

template <std::size_t D>
inline void require_unit(const Vec<D>& v, const char* what) {
    if (std::abs(norm<D>(v) - 1.0) > 1e-12)
        throw std::invalid_argument(std::string(what) + ": must be a unit vector");
}

// projector P_alpha applied to a vector: P_p v = xhat (xhat.v), P_s v = v - P_p v
template <std::size_t D>
inline Vec<D> project(const Vec<D>& xhat, WaveType alpha, const Vec<D>& v) {
    const double xv = dot(xhat, v);
    Vec<D> out;
    for (std::size_t i = 0; i < D; ++i)
        out[i] = (alpha == WaveType::P) ? xhat[i] * xv : v[i] - xhat[i] * xv;
    return out;
}

} // namespace imaging_detail

// V_p = xhat xhat^T e^{-i W xhat.y / c_p},  V_s = (I - xhat xhat^T) e^{-i W xhat.y / c_s},
// W the scaled frequency c_alpha * omega (so the phase is e^{-i omega xhat.y}).
template <std::size_t D>
CMat<D> test_function(const Vec<D>& direction, const Vec<D>& y, WaveType alpha,
                      const LameParameters& medium, double scaled_frequency) {
    imaging_detail::require_unit<D>(direction, "test_function direction");
    const double c = wave_speed(medium, alpha);
    const cplx ph = std::exp(cplx(0.0, -scaled_frequency * dot(direction, y) / c));
    CMat<D> v;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) {
            const double p = (alpha == WaveType::P)
                                 ? direction[i] * direction[j]
                                 : ((i == j) ? 1.0 : 0.0) - direction[i] * direction[j];
            v[i][j] = p * ph;
        }
    return v;
}

// Column k is T_nu applied to y -> V_alpha(xhat, y) e_k; each column is a
// plane wave q e^{i g.y} with gradient i q g^T, so the traction is analytic.
template <std::size_t D>
CMat<D> test_function_traction(const Vec<D>& direction, const Vec<D>& y, const Vec<D>& normal,
                               WaveType alpha, const LameParameters& medium,
                               double scaled_frequency) {
    imaging_detail::require_unit<D>(direction, "test_function_traction direction");
    imaging_detail::require_unit<D>(normal, "test_function_traction normal");
    const double c = wave_speed(medium, alpha);
    const double kappa = scaled_frequency / c; // |g|, g = -kappa * xhat
    const cplx ph = std::exp(cplx(0.0, -scaled_frequency * dot(direction, y) / c));
    Vec<D> g{};
    for (std::size_t i = 0; i < D; ++i) g[i] = -kappa * direction[i];

    CMat<D> out;
    for (std::size_t k = 0; k < D; ++k) {
        Vec<D> ek{};
        ek[k] = 1.0;
        const Vec<D> q = imaging_detail::project<D>(direction, alpha, ek);
        CMat<D> grad;
        for (std::size_t i = 0; i < D; ++i)
            for (std::size_t j = 0; j < D; ++j) grad[i][j] = cplx(0.0, 1.0) * q[i] * g[j] * ph;
        const CVec<D> t = traction<D>(medium, normal, CVec<D>{}, grad);
        for (std::size_t i = 0; i < D; ++i) out[i][k] = t[i];
    }
    return out;
}

// R(xhat, w, alpha) = int_Gamma { [T_nu V]^T u - V^T T_nu u } ds over the
// dataset's nodes, with V at the record's scaled frequency.
template <std::size_t D>
CVec<D> reduced_functional(const CauchyDataset<D>& ds, const Vec<D>& direction, int omega_index,
                           WaveType alpha) {
    const CauchyRecord<D>* rec = ds.find(omega_index, alpha);
    if (!rec)
        throw std::invalid_argument("reduced_functional: no record for (omega_index=" +
                                    std::to_string(omega_index) + ", alpha=" +
                                    std::string(1, wave_type_char(alpha)) + ")");
    const double omega = ds.ladder.values[static_cast<std::size_t>(omega_index)];
    const double scaled = wave_speed(ds.medium, alpha) * omega;
    CVec<D> r{};
    for (std::size_t i = 0; i < ds.geometry.node_count(); ++i) {
        const CMat<D> v =
            test_function<D>(direction, ds.geometry.nodes[i], alpha, ds.medium, scaled);
        const CMat<D> tv = test_function_traction<D>(direction, ds.geometry.nodes[i],
                                                     ds.geometry.normals[i], alpha, ds.medium,
                                                     scaled);
        const CVec<D> a = matTvec<D>(tv, rec->u[i]);
        const CVec<D> b = matTvec<D>(v, rec->t[i]);
        const double w = ds.geometry.weights[i];
        for (std::size_t c = 0; c < D; ++c) r[c] += w * (a[c] - b[c]);
    }
    return r;
}

// closed form of R_p + R_s: sum_j i w M^{(j)} xhat e^{-i w xhat.s_j}
template <std::size_t D>
CVec<D> reduced_functional_exact(const SourceConfiguration<D>& cfg, const Vec<D>& direction,
                                 double omega) {
    CVec<D> r{};
    for (const auto& src : cfg.sources) {
        const cplx f =
            cplx(0.0, omega) * std::exp(cplx(0.0, -omega * dot(direction, src.location)));
        const Vec<D> mx = matvec<D>(src.tensor, direction);
        for (std::size_t c = 0; c < D; ++c) r[c] += f * mx[c];
    }
    return r;
}

// int_{S^{d-1}} xhat xhat^T e^{i w xhat.z} ds(xhat), closed form:
//   2D: pi ( (J0+J2) I - 2 J2 zhat zhat^T )
//   3D: (4 pi/3) ( j0 I + j2 (I - 3 zhat zhat^T) )
// limit pi I resp. (4 pi / 3) I as z -> 0.
template <std::size_t D>
Mat<D> lemma1_kernel(double omega, const Vec<D>& z) {
    const double r = norm<D>(z);
    Mat<D> out{};
    if constexpr (D == 2) {
        if (r * omega == 0.0 || r < 1e-12) {
            for (std::size_t i = 0; i < D; ++i) out[i][i] = M_PI;
            return out;
        }
        const double t = omega * r;
        const double j0 = bessel_j(0, t), j2 = bessel_j(2, t);
        const Vec<2> zh = (1.0 / r) * z;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                out[i][j] = M_PI * (((i == j) ? (j0 + j2) : 0.0) - 2.0 * j2 * zh[i] * zh[j]);
        return out;
    } else {
        const double c = 4.0 * M_PI / 3.0;
        if (r * omega == 0.0 || r < 1e-12) {
            for (std::size_t i = 0; i < D; ++i) out[i][i] = c;
            return out;
        }
        const double t = omega * r;
        const double j0 = spherical_j(0, t), j2 = spherical_j(2, t);
        const Vec<3> zh = (1.0 / r) * z;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                out[i][j] = c * (((i == j) ? (j0 + j2) : 0.0) - 3.0 * j2 * zh[i] * zh[j]);
        return out;
    }
}

template <std::size_t D>
struct IndicatorValue {
    CMat<D> matrix{};
    double score = 0.0; // squared Frobenius norm of matrix
};

// Precomputed R_p + R_s per (direction, selected frequency). The sampling
// point enters only through the phase e^{i w xhat.z}, so one table serves the
// whole grid.
template <std::size_t D>
struct RTable {
    DirectionQuadrature<D> quad;
    std::vector<int> omega_indices; // 0-based ladder rungs used
    std::vector<double> omegas;     // ladder values at those rungs
    std::vector<CVec<D>> rsum;      // [q * omegas.size() + f]

    std::size_t freq_count() const { return omegas.size(); }
};

// Fused evaluation of the R integrand. With g = -w xhat shared by both wave
// types, [T_nu V_a]^T u - V_a^T t reduces to dot products:
//   ph * ( i [ lam (P_a g)(nu.u) + mu (g.nu)(P_a u) + mu (P_a nu)(g.u) ] - P_a t )
template <std::size_t D>
RTable<D> build_r_table(const CauchyDataset<D>& ds, const DirectionQuadrature<D>& quad,
                        const std::vector<int>& omega_indices) {
    if (omega_indices.empty())
        throw std::invalid_argument("build_r_table: omega_indices must be nonempty");
    RTable<D> tab;
    tab.quad = quad;
    tab.omega_indices = omega_indices;
    const std::size_t nf = omega_indices.size();
    for (int idx : omega_indices) {
        if (idx < 0 || idx >= ds.ladder.count)
            throw std::invalid_argument("build_r_table: omega index out of range: " +
                                        std::to_string(idx));
        tab.omegas.push_back(ds.ladder.values[static_cast<std::size_t>(idx)]);
    }
    struct RecPair {
        const CauchyRecord<D>* p;
        const CauchyRecord<D>* s;
    };
    std::vector<RecPair> recs;
    for (int idx : omega_indices) {
        RecPair rp{ds.find(idx, WaveType::P), ds.find(idx, WaveType::S)};
        if (!rp.p || !rp.s)
            throw std::invalid_argument("build_r_table: missing record for omega_index=" +
                                        std::to_string(idx));
        recs.push_back(rp);
    }
    const double lam = ds.medium.lambda, mu = ds.medium.mu;
    const std::size_t nq = quad.size();
    const std::size_t nn = ds.geometry.node_count();
    tab.rsum.assign(nq * nf, CVec<D>{});
    parallel_for(nq, [&](std::size_t qb, std::size_t qe) {
        for (std::size_t q = qb; q < qe; ++q) {
            const Vec<D> xhat = quad.directions[q];
            for (std::size_t f = 0; f < nf; ++f) {
                const double omega = tab.omegas[f];
                CVec<D> acc{};
                for (std::size_t i = 0; i < nn; ++i) {
                    const Vec<D>& y = ds.geometry.nodes[i];
                    const Vec<D>& nu = ds.geometry.normals[i];
                    const double w = ds.geometry.weights[i];
                    const cplx ph =
                        w * std::exp(cplx(0.0, -omega * dot(xhat, y)));
                    Vec<D> g;
                    for (std::size_t c = 0; c < D; ++c) g[c] = -omega * xhat[c];
                    const double gnu = dot(g, nu);
                    for (WaveType alpha : {WaveType::P, WaveType::S}) {
                        const CauchyRecord<D>& rec =
                            alpha == WaveType::P ? *recs[f].p : *recs[f].s;
                        const CVec<D>& u = rec.u[i];
                        const CVec<D>& t = rec.t[i];
                        const Vec<D> pg = imaging_detail::project<D>(xhat, alpha, g);
                        const Vec<D> pnu = imaging_detail::project<D>(xhat, alpha, nu);
                        cplx nuu = 0.0, gu = 0.0, xu = 0.0;
                        for (std::size_t c = 0; c < D; ++c) {
                            nuu += nu[c] * u[c];
                            gu += g[c] * u[c];
                            xu += xhat[c] * u[c];
                        }
                        cplx xt = 0.0;
                        for (std::size_t c = 0; c < D; ++c) xt += xhat[c] * t[c];
                        for (std::size_t c = 0; c < D; ++c) {
                            // P_a u and P_a t componentwise
                            const cplx pu = (alpha == WaveType::P) ? xhat[c] * xu
                                                                   : u[c] - xhat[c] * xu;
                            const cplx pt = (alpha == WaveType::P) ? xhat[c] * xt
                                                                   : t[c] - xhat[c] * xt;
                            const cplx bracket =
                                lam * pg[c] * nuu + mu * gnu * pu + mu * pnu[c] * gu;
                            acc[c] += ph * (cplx(0.0, 1.0) * bracket - pt);
                        }
                    }
                }
                tab.rsum[q * nf + f] = acc;
            }
        }
    });
    return tab;
}

// Same table from the closed-form R (exact-data path).
template <std::size_t D>
RTable<D> build_r_table_exact(const SourceConfiguration<D>& cfg,
                              const FrequencyLadder& ladder, const DirectionQuadrature<D>& quad,
                              const std::vector<int>& omega_indices) {
    if (omega_indices.empty())
        throw std::invalid_argument("build_r_table_exact: omega_indices must be nonempty");
    RTable<D> tab;
    tab.quad = quad;
    tab.omega_indices = omega_indices;
    const std::size_t nf = omega_indices.size();
    for (int idx : omega_indices) {
        if (idx < 0 || idx >= ladder.count)
            throw std::invalid_argument("build_r_table_exact: omega index out of range");
        tab.omegas.push_back(ladder.values[static_cast<std::size_t>(idx)]);
    }
    const std::size_t nq = quad.size();
    tab.rsum.assign(nq * nf, CVec<D>{});
    parallel_for(nq, [&](std::size_t qb, std::size_t qe) {
        for (std::size_t q = qb; q < qe; ++q)
            for (std::size_t f = 0; f < nf; ++f)
                tab.rsum[q * nf + f] =
                    reduced_functional_exact<D>(cfg, quad.directions[q], tab.omegas[f]);
    });
    return tab;
}

namespace imaging_detail {

template <std::size_t D>
inline double indicator_constant(std::size_t nf) {
    const double cd = (D == 2) ? (1.0 / M_PI) : (3.0 / (4.0 * M_PI)); // d / (2^{d-1} pi)
    return cd / static_cast<double>(nf);
}

// Accumulates sum_f (1/w_f) sum_q w_q (R ⊗ xhat) e^{i w_f xhat.z} for a run of
// nx points z = z0 + ix*h*e_axis0 and finalizes each into an IndicatorValue.
// Shared by the pointwise indicator (nx = 1) and grid evaluation, so both
// produce bitwise-identical values at identical points.
template <std::size_t D>
inline void indicator_run(const RTable<D>& tab, const Vec<D>& z0, double h, std::size_t nx,
                          IndicatorValue<D>* out) {
    const std::size_t nf = tab.freq_count();
    const std::size_t nq = tab.quad.size();
    std::vector<CMat<D>> acc(nx);
    for (std::size_t q = 0; q < nq; ++q) {
        const Vec<D>& xhat = tab.quad.directions[q];
        const double wq = tab.quad.weights[q];
        const double dot0 = dot(xhat, z0);
        for (std::size_t f = 0; f < nf; ++f) {
            const double omega = tab.omegas[f];
            const double coef = wq / omega;
            CVec<D> v = tab.rsum[q * nf + f];
            for (std::size_t c = 0; c < D; ++c) v[c] *= coef;
            cplx phase = std::polar(1.0, omega * dot0);
            const cplx step = std::polar(1.0, omega * xhat[0] * h);
            for (std::size_t ix = 0; ix < nx; ++ix) {
                CMat<D>& a = acc[ix];
                for (std::size_t l = 0; l < D; ++l) {
                    const cplx t = v[l] * phase;
                    for (std::size_t hh = 0; hh < D; ++hh) a[l][hh] += t * xhat[hh];
                }
                phase *= step;
            }
        }
    }
    const cplx scale = cplx(0.0, -1.0) * indicator_constant<D>(nf); // 1/i = -i
    for (std::size_t ix = 0; ix < nx; ++ix) {
        IndicatorValue<D>& iv = out[ix];
        for (std::size_t l = 0; l < D; ++l)
            for (std::size_t hh = 0; hh < D; ++hh) iv.matrix[l][hh] = scale * acc[ix][l][hh];
        iv.score = frob_sq(iv.matrix);
    }
}

} // namespace imaging_detail

template <std::size_t D>
IndicatorValue<D> indicator_from_table(const RTable<D>& tab, const Vec<D>& z) {
    IndicatorValue<D> iv;
    imaging_detail::indicator_run<D>(tab, z, 0.0, 1, &iv);
    return iv;
}

// Convenience pointwise form; builds the R table for the given indices first.
// Grid evaluation reuses one table across all sampling points instead.
template <std::size_t D>
IndicatorValue<D> indicator(const CauchyDataset<D>& ds, const DirectionQuadrature<D>& quad,
                            const Vec<D>& z, const std::vector<int>& omega_indices) {
    return indicator_from_table<D>(build_r_table<D>(ds, quad, omega_indices), z);
}

// Exact-data indicator via the closed-form direction kernels: for exact R the
// indicator reduces to (1/|W|) sum_f sum_j M_j K(w_f, z - s_j) / k_d with
// k_d = pi (2D), 4 pi/3 (3D). Real by construction.
template <std::size_t D>
Mat<D> indicator_exact(const SourceConfiguration<D>& cfg, const std::vector<double>& omegas,
                       const Vec<D>& z) {
    const double kd = (D == 2) ? M_PI : (4.0 * M_PI / 3.0);
    Mat<D> acc{};
    for (double omega : omegas)
        for (const auto& src : cfg.sources) {
            const Mat<D> k = lemma1_kernel<D>(omega, z - src.location);
            acc = acc + matmul<D>(src.tensor, k);
        }
    return (1.0 / (kd * static_cast<double>(omegas.size()))) * acc;
}

} // namespace ewi

#endif // EWI_IMAGING_HPP
