#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tstein/matrix.hpp"

namespace tstein {

/// Pivots below this fraction of the infinity norm count as zero.
inline constexpr double kRankThreshold = 1e-12;

/**
 * Solves m * x = rhs by LU with partial pivoting.
 *
 * Throws SingularMatrixError carrying the offending pivot magnitude when a
 * pivot drops below rel_tol * ||m||_inf.
 */
inline ComplexMatrix dense_solve(const ComplexMatrix& m, const ComplexMatrix& rhs, double rel_tol = kRankThreshold) {
    if (!m.is_square()) throw ShapeError("dense_solve: matrix must be square");
    if (rhs.rows() != m.rows()) throw ShapeError("dense_solve: right-hand side has wrong row count");
    const std::size_t n = m.rows();
    ComplexMatrix lu = m;
    ComplexMatrix x = rhs;
    const double threshold = rel_tol * inf_norm(m);

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best <= threshold || best == 0.0)
            throw SingularMatrixError("dense_solve: matrix is numerically singular (pivot " + std::to_string(k) + ")",
                                      k, best);
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
            for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(piv, j));
        }
        const Complex d = lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex f = lu(i, k) / d;
            lu(i, k) = f;
            if (f == Complex{}) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
            for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) -= f * x(k, j);
        }
    }
    for (std::size_t j = 0; j < x.cols(); ++j) {
        for (std::size_t ii = n; ii-- > 0;) {
            Complex s = x(ii, j);
            for (std::size_t l = ii + 1; l < n; ++l) s -= lu(ii, l) * x(l, j);
            x(ii, j) = s / lu(ii, ii);
        }
    }
    return x;
}

inline ComplexMatrix inverse(const ComplexMatrix& m, double rel_tol = kRankThreshold) {
    return dense_solve(m, ComplexMatrix::identity(m.rows()), rel_tol);
}

} // namespace tstein
