#ifndef EWI_LINALG_HPP
#define EWI_LINALG_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

// Small fixed-dimension vector/matrix helpers (d = 2 or 3 throughout).
// Matrices are row-major: M[i][j] is row i, column j.

namespace ewi {

using cplx = std::complex<double>;

template <std::size_t D> using Vec = std::array<double, D>;
template <std::size_t D> using CVec = std::array<cplx, D>;
template <std::size_t D> using Mat = std::array<std::array<double, D>, D>;
template <std::size_t D> using CMat = std::array<std::array<cplx, D>, D>;
// rank-3 tensor, index order [i][k][l]
template <std::size_t D> using CTen3 = std::array<CMat<D>, D>;

template <std::size_t D>
constexpr Vec<D> vzero() { return Vec<D>{}; }

template <std::size_t D>
constexpr CVec<D> cvzero() { return CVec<D>{}; }

template <std::size_t D>
constexpr Mat<D> mzero() { return Mat<D>{}; }

template <std::size_t D>
constexpr CMat<D> cmzero() { return CMat<D>{}; }

template <std::size_t D>
constexpr Mat<D> identity() {
    Mat<D> m{};
    for (std::size_t i = 0; i < D; ++i) m[i][i] = 1.0;
    return m;
}

template <std::size_t D>
inline double dot(const Vec<D>& a, const Vec<D>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < D; ++i) s += a[i] * b[i];
    return s;
}

template <std::size_t D>
inline double norm(const Vec<D>& a) { return std::sqrt(dot(a, a)); }

template <std::size_t D>
inline Vec<D> operator+(const Vec<D>& a, const Vec<D>& b) {
    Vec<D> r;
    for (std::size_t i = 0; i < D; ++i) r[i] = a[i] + b[i];
    return r;
}

template <std::size_t D>
inline Vec<D> operator-(const Vec<D>& a, const Vec<D>& b) {
    Vec<D> r;
    for (std::size_t i = 0; i < D; ++i) r[i] = a[i] - b[i];
    return r;
}

template <std::size_t D>
inline Vec<D> operator*(double c, const Vec<D>& a) {
    Vec<D> r;
    for (std::size_t i = 0; i < D; ++i) r[i] = c * a[i];
    return r;
}

template <std::size_t D>
inline Vec<D> normalized(const Vec<D>& a) { return (1.0 / norm(a)) * a; }

template <std::size_t D>
inline CVec<D> operator+(const CVec<D>& a, const CVec<D>& b) {
    CVec<D> r;
    for (std::size_t i = 0; i < D; ++i) r[i] = a[i] + b[i];
    return r;
}

template <std::size_t D>
inline CVec<D> operator-(const CVec<D>& a, const CVec<D>& b) {
    CVec<D> r;
    for (std::size_t i = 0; i < D; ++i) r[i] = a[i] - b[i];
    return r;
}

template <std::size_t D>
inline CVec<D> operator*(const cplx& c, const CVec<D>& a) {
    CVec<D> r;
    for (std::size_t i = 0; i < D; ++i) r[i] = c * a[i];
    return r;
}

template <std::size_t D>
inline double norm(const CVec<D>& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < D; ++i) s += std::norm(a[i]);
    return std::sqrt(s);
}

template <std::size_t D>
inline CMat<D> operator+(const CMat<D>& a, const CMat<D>& b) {
    CMat<D> r;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
}

template <std::size_t D>
inline CMat<D> operator-(const CMat<D>& a, const CMat<D>& b) {
    CMat<D> r;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) r[i][j] = a[i][j] - b[i][j];
    return r;
}

template <std::size_t D>
inline CMat<D> operator*(const cplx& c, const CMat<D>& a) {
    CMat<D> r;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) r[i][j] = c * a[i][j];
    return r;
}

template <std::size_t D>
inline Mat<D> operator+(const Mat<D>& a, const Mat<D>& b) {
    Mat<D> r;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
}

template <std::size_t D>
inline Mat<D> operator-(const Mat<D>& a, const Mat<D>& b) {
    Mat<D> r;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) r[i][j] = a[i][j] - b[i][j];
    return r;
}

template <std::size_t D>
inline Mat<D> operator*(double c, const Mat<D>& a) {
    Mat<D> r;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) r[i][j] = c * a[i][j];
    return r;
}

template <std::size_t D>
inline Vec<D> matvec(const Mat<D>& m, const Vec<D>& v) {
    Vec<D> r{};
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) r[i] += m[i][j] * v[j];
    return r;
}

template <std::size_t D>
inline CVec<D> matvec(const CMat<D>& m, const CVec<D>& v) {
    CVec<D> r{};
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) r[i] += m[i][j] * v[j];
    return r;
}

// (transpose of m) * v, avoids materializing the transpose
template <std::size_t D>
inline CVec<D> matTvec(const CMat<D>& m, const CVec<D>& v) {
    CVec<D> r{};
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) r[i] += m[j][i] * v[j];
    return r;
}

template <std::size_t D>
inline Mat<D> outer(const Vec<D>& a, const Vec<D>& b) {
    Mat<D> r;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) r[i][j] = a[i] * b[j];
    return r;
}

template <std::size_t D>
inline CMat<D> outer(const CVec<D>& a, const Vec<D>& b) {
    CMat<D> r;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) r[i][j] = a[i] * b[j];
    return r;
}

template <std::size_t D>
inline Mat<D> matmul(const Mat<D>& a, const Mat<D>& b) {
    Mat<D> r{};
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t k = 0; k < D; ++k)
            for (std::size_t j = 0; j < D; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

template <std::size_t D>
inline CMat<D> transpose(const CMat<D>& a) {
    CMat<D> r;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) r[i][j] = a[j][i];
    return r;
}

template <std::size_t D>
inline double frob_sq(const CMat<D>& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) s += std::norm(a[i][j]);
    return s;
}

template <std::size_t D>
inline double frob(const CMat<D>& a) { return std::sqrt(frob_sq(a)); }

template <std::size_t D>
inline double frob(const Mat<D>& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) s += a[i][j] * a[i][j];
    return std::sqrt(s);
}

template <std::size_t D>
inline Mat<D> real_part(const CMat<D>& a) {
    Mat<D> r;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) r[i][j] = a[i][j].real();
    return r;
}

template <std::size_t D>
inline double imag_frob(const CMat<D>& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) s += a[i][j].imag() * a[i][j].imag();
    return std::sqrt(s);
}

template <std::size_t D>
inline CMat<D> to_complex(const Mat<D>& a) {
    CMat<D> r;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) r[i][j] = a[i][j];
    return r;
}

template <std::size_t D>
inline double max_abs_entry(const CMat<D>& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) m = std::max(m, std::abs(a[i][j]));
    return m;
}

} // namespace ewi

#endif // EWI_LINALG_HPP
