#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "tstein/matrix.hpp"

namespace tstein {

struct QRFactors {
    ComplexMatrix q; ///< unitary, m x m
    ComplexMatrix r; ///< upper triangular, m x n
};

/// q is unitary, l is lower triangular aligned to the bottom-right corner:
/// l(i, j) == 0 whenever j - i > n - m.
struct QLFactors {
    ComplexMatrix q;
    ComplexMatrix l;
};

namespace detail {

struct Reflector {
    std::vector<Complex> v; // unit vector, H = I - 2 v v^H
    Complex alpha;          // H x = alpha e_pivot
    bool trivial = true;    // x already a multiple of e_pivot
};

// Reflector sending x to alpha * e_pivot.
inline Reflector make_reflector(const std::vector<Complex>& x, std::size_t pivot) {
    Reflector h;
    h.alpha = x[pivot];
    double tail = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (i != pivot) tail = std::max(tail, std::abs(x[i]));
    if (tail == 0.0) return h;

    double scale = std::max(tail, std::abs(x[pivot]));
    double norm2 = 0.0;
    for (const auto& xi : x) norm2 += std::norm(xi / scale);
    const double norm = scale * std::sqrt(norm2);
    const double ap = std::abs(x[pivot]);
    const Complex phase = ap == 0.0 ? Complex{1.0} : x[pivot] / ap;

    h.alpha = -phase * norm;
    h.v = x;
    h.v[pivot] -= h.alpha;
    double vn = 0.0;
    for (const auto& vi : h.v) vn += std::norm(vi / scale);
    vn = scale * std::sqrt(vn);
    for (auto& vi : h.v) vi /= vn;
    h.trivial = false;
    return h;
}

// rows [r0, r0 + len) of a, columns [c0, c1): a <- (I - 2vv^H) a
inline void reflect_rows(ComplexMatrix& a, const std::vector<Complex>& v, std::size_t r0, std::size_t c0,
                         std::size_t c1) {
    for (std::size_t j = c0; j < c1; ++j) {
        Complex w{};
        for (std::size_t l = 0; l < v.size(); ++l) w += std::conj(v[l]) * a(r0 + l, j);
        w *= 2.0;
        for (std::size_t l = 0; l < v.size(); ++l) a(r0 + l, j) -= v[l] * w;
    }
}

// columns [c0, c0 + len) of a, rows [r0, r1): a <- a (I - 2vv^H)
inline void reflect_cols(ComplexMatrix& a, const std::vector<Complex>& v, std::size_t c0, std::size_t r0,
                         std::size_t r1) {
    for (std::size_t i = r0; i < r1; ++i) {
        Complex w{};
        for (std::size_t l = 0; l < v.size(); ++l) w += a(i, c0 + l) * v[l];
        w *= 2.0;
        for (std::size_t l = 0; l < v.size(); ++l) a(i, c0 + l) -= w * std::conj(v[l]);
    }
}

} // namespace detail

/// Householder QR with the full m x m unitary factor. Rank deficiency is
/// fine; r simply gets small or zero diagonal entries.
inline QRFactors qr_decompose(const ComplexMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    QRFactors f{ComplexMatrix::identity(m), a};
    const std::size_t steps = m == 0 ? 0 : std::min(m - 1, n);
    for (std::size_t k = 0; k < steps; ++k) {
        std::vector<Complex> x(m - k);
        for (std::size_t i = k; i < m; ++i) x[i - k] = f.r(i, k);
        auto h = detail::make_reflector(x, 0);
        if (h.trivial) continue;
        detail::reflect_rows(f.r, h.v, k, k, n);
        detail::reflect_cols(f.q, h.v, k, 0, m);
        f.r(k, k) = h.alpha;
    }
    f.r = upper_part(std::move(f.r));
    return f;
}

/// Householder QL: a = q * l, eliminating from the last column backwards.
inline QLFactors ql_decompose(const ComplexMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    QLFactors f{ComplexMatrix::identity(m), a};
    const std::size_t steps = std::min(m, n);
    for (std::size_t k = 0; k < steps; ++k) {
        const std::size_t col = n - 1 - k;
        const std::size_t piv = m - 1 - k;
        std::vector<Complex> x(piv + 1);
        for (std::size_t i = 0; i <= piv; ++i) x[i] = f.l(i, col);
        auto h = detail::make_reflector(x, piv);
        if (!h.trivial) {
            detail::reflect_rows(f.l, h.v, 0, 0, col + 1);
            detail::reflect_cols(f.q, h.v, 0, 0, m);
            f.l(piv, col) = h.alpha;
        }
        for (std::size_t i = 0; i < piv; ++i) f.l(i, col) = Complex{};
    }
    return f;
}

/**
 * Extends k orthonormal columns to an m x m unitary matrix whose leading
 * k columns reproduce the input.
 */
inline ComplexMatrix complete_basis(const ComplexMatrix& orthonormal) {
    auto f = qr_decompose(orthonormal);
    // r(i, i) is a unit-modulus phase when the input is orthonormal
    for (std::size_t j = 0; j < orthonormal.cols(); ++j) {
        const Complex d = f.r(j, j);
        const double ad = std::abs(d);
        const Complex phase = ad == 0.0 ? Complex{1.0} : d / ad;
        for (auto& v : f.q.column(j)) v *= phase;
    }
    return f.q;
}

} // namespace tstein
