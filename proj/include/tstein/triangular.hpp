#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "tstein/lu.hpp"
#include "tstein/matrix.hpp"

namespace tstein {

/// Inverse of a nonsingular square upper-triangular matrix by back substitution.
inline ComplexMatrix upper_triangular_inverse(const ComplexMatrix& t) {
    const std::size_t n = t.rows();
    ComplexMatrix inv(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        inv(j, j) = 1.0 / t(j, j);
        for (std::size_t ii = j; ii-- > 0;) {
            Complex s{};
            for (std::size_t l = ii + 1; l <= j; ++l) s += t(ii, l) * inv(l, j);
            inv(ii, j) = -s / t(ii, ii);
        }
    }
    return inv;
}

/**
 * Generalized inverse of a full-rank upper-triangular matrix, itself upper
 * triangular.
 *
 * Tall t = [T; 0] (m >= n) gives [T^{-1} 0], the Moore-Penrose inverse, with
 * g * t = I_n. Wide t = [T *] (m < n) gives [T^{-1}; 0], a right inverse with
 * t * g = I_m that satisfies the first three Penrose conditions; the fourth
 * holds only when the trailing block is zero.
 */
inline ComplexMatrix tri_pinv(const ComplexMatrix& t, double rel_tol = kRankThreshold) {
    const std::size_t m = t.rows(), n = t.cols();
    const double scale = max_abs(t);
    if (lower_magnitude(t) > rel_tol * scale) throw InvalidInput("tri_pinv: input is not upper triangular");
    const std::size_t k = std::min(m, n);
    for (std::size_t i = 0; i < k; ++i) {
        const double d = std::abs(t(i, i));
        if (d <= rel_tol * scale || d == 0.0)
            throw SingularMatrixError("tri_pinv: rank deficient at diagonal " + std::to_string(i), i, d);
    }
    const ComplexMatrix lead_inv = upper_triangular_inverse(upper_part(t.block(0, 0, k, k)));
    ComplexMatrix g(n, m);
    g.set_block(0, 0, lead_inv);
    return g;
}

} // namespace tstein
