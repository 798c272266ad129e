#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "tstein/householder.hpp"
#include "tstein/matrix.hpp"

namespace tstein {

/// a = u * t * u^H with u unitary and t upper triangular.
struct SchurFactors {
    ComplexMatrix u;
    ComplexMatrix t;
};

struct SchurOptions {
    /// Total QR sweep budget is this times the matrix order.
    std::size_t sweeps_per_eigenvalue = 30;
};

namespace detail {

struct Givens {
    double c;
    Complex s;
};

// [c s; -conj(s) c] * [x; y] = [r; 0]
inline Givens make_givens(Complex x, Complex y) {
    const double ax = std::abs(x), ay = std::abs(y);
    if (ay == 0.0) return {1.0, Complex{}};
    if (ax == 0.0) return {0.0, std::conj(y) / ay};
    const double r = std::hypot(ax, ay);
    const Complex phase = x / ax;
    return {ax / r, phase * std::conj(y) / r};
}

inline void rotate_rows(ComplexMatrix& h, const Givens& g, std::size_t k, std::size_t c0, std::size_t c1) {
    for (std::size_t j = c0; j < c1; ++j) {
        const Complex h1 = h(k, j), h2 = h(k + 1, j);
        h(k, j) = g.c * h1 + g.s * h2;
        h(k + 1, j) = -std::conj(g.s) * h1 + g.c * h2;
    }
}

// right-multiplication by the adjoint rotation
inline void rotate_cols(ComplexMatrix& h, const Givens& g, std::size_t k, std::size_t r0, std::size_t r1) {
    for (std::size_t i = r0; i < r1; ++i) {
        const Complex h1 = h(i, k), h2 = h(i, k + 1);
        h(i, k) = g.c * h1 + std::conj(g.s) * h2;
        h(i, k + 1) = -g.s * h1 + g.c * h2;
    }
}

// Eigenvalue of [[a, b], [c, d]] closest to d.
inline Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
    const Complex p = 0.5 * (a - d);
    const Complex bc = b * c;
    const Complex disc = std::sqrt(p * p + bc);
    const Complex den1 = p + disc, den2 = p - disc;
    const Complex den = std::abs(den1) >= std::abs(den2) ? den1 : den2;
    if (den == Complex{}) return d;
    return d - bc / den;
}

} // namespace detail

/**
 * Complex Schur form by Householder reduction to Hessenberg form followed
 * by single-shift QR sweeps with Wilkinson shifts and an exceptional shift
 * every tenth sweep without deflation.
 *
 * Throws ConvergenceError when the sweep budget is exhausted.
 */
inline SchurFactors schur_decompose(const ComplexMatrix& a, const SchurOptions& opts = {}) {
    if (!a.is_square()) throw ShapeError("schur_decompose: matrix must be square");
    const std::size_t n = a.rows();
    ComplexMatrix h = a;
    ComplexMatrix u = ComplexMatrix::identity(n);

    for (std::size_t k = 0; k + 2 < n; ++k) {
        std::vector<Complex> x(n - k - 1);
        for (std::size_t i = k + 1; i < n; ++i) x[i - k - 1] = h(i, k);
        auto r = detail::make_reflector(x, 0);
        if (r.trivial) continue;
        detail::reflect_rows(h, r.v, k + 1, k, n);
        detail::reflect_cols(h, r.v, k + 1, 0, n);
        detail::reflect_cols(u, r.v, k + 1, 0, n);
        h(k + 1, k) = r.alpha;
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = Complex{};
    }

    const double eps = std::numeric_limits<double>::epsilon();
    double anorm = 0.0;
    for (const auto& v : h.data()) anorm = std::max(anorm, std::abs(v));
    const std::size_t budget = opts.sweeps_per_eigenvalue * std::max<std::size_t>(n, 1);
    std::size_t total = 0, since_deflation = 0;

    std::size_t hi = n == 0 ? 0 : n - 1;
    while (hi > 0) {
        std::size_t lo = hi;
        for (; lo > 0; --lo) {
            double s = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            if (s == 0.0) s = anorm;
            if (std::abs(h(lo, lo - 1)) <= eps * s) {
                h(lo, lo - 1) = Complex{};
                break;
            }
        }
        if (lo == hi) {
            --hi;
            since_deflation = 0;
            continue;
        }
        if (total >= budget) throw ConvergenceError("schur_decompose: QR sweeps did not converge", total);

        Complex mu;
        if (since_deflation % 10 == 9) {
            const Complex sub = h(hi, hi - 1);
            mu = h(hi, hi) + 0.75 * (std::abs(sub.real()) + std::abs(sub.imag()));
        } else {
            mu = detail::wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
        }

        for (std::size_t k = lo; k < hi; ++k) {
            Complex x, y;
            if (k == lo) {
                x = h(k, k) - mu;
                y = h(k + 1, k);
            } else {
                x = h(k, k - 1);
                y = h(k + 1, k - 1);
            }
            const auto g = detail::make_givens(x, y);
            detail::rotate_rows(h, g, k, k == lo ? lo : k - 1, n);
            detail::rotate_cols(h, g, k, 0, std::min(k + 3, hi + 1));
            detail::rotate_cols(u, g, k, 0, n);
            if (k > lo) h(k + 1, k - 1) = Complex{};
        }
        ++total;
        ++since_deflation;
    }
    return {std::move(u), upper_part(std::move(h))};
}

/// Eigenvalues in Schur-diagonal order.
inline std::vector<Complex> eigenvalues(const ComplexMatrix& a) {
    return diagonal_of(schur_decompose(a).t);
}

inline double spectral_radius(const ComplexMatrix& a) {
    double rho = 0.0;
    for (const auto& l : eigenvalues(a)) rho = std::max(rho, std::abs(l));
    return rho;
}

} // namespace tstein
