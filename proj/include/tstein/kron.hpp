#pragma once

#include <cstddef>

#include "tstein/matrix.hpp"

namespace tstein {

/// Kronecker product: block (i, j) of the result is a(i, j) * b.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t p = b.rows(), q = b.cols();
    ComplexMatrix out(a.rows() * p, a.cols() * q);
    for (std::size_t ja = 0; ja < a.cols(); ++ja)
        for (std::size_t ia = 0; ia < a.rows(); ++ia) {
            const Complex s = a(ia, ja);
            if (s == Complex{}) continue;
            for (std::size_t jb = 0; jb < q; ++jb)
                for (std::size_t ib = 0; ib < p; ++ib) out(ia * p + ib, ja * q + jb) = s * b(ib, jb);
        }
    return out;
}

/**
 * Commutation matrix K_{m,n} of size mn x mn with K * vec(X) = vec(X^T)
 * for every m x n matrix X.
 *
 * With 0-based indices, X(i, j) sits at i + j*m in vec(X) and at j + i*n in
 * vec(X^T), so K has a one at (j + i*n, i + j*m) and zeros elsewhere.
 */
inline ComplexMatrix commutation_matrix(std::size_t m, std::size_t n) {
    ComplexMatrix k(m * n, m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) k(j + i * n, i + j * m) = 1.0;
    return k;
}

} // namespace tstein
