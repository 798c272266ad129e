#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "tstein/householder.hpp"
#include "tstein/lu.hpp"
#include "tstein/matrix.hpp"

namespace tstein {

/// a = u * diag(singular_values) * v^H, with full square unitary u and v.
struct SvdFactors {
    ComplexMatrix u;                    ///< m x m
    std::vector<double> singular_values; ///< min(m, n) values, descending
    ComplexMatrix v;                    ///< n x n

    /// Number of singular values above rel_tol * sigma_max.
    std::size_t rank(double rel_tol = kRankThreshold) const {
        if (singular_values.empty() || singular_values.front() == 0.0) return 0;
        const double cut = rel_tol * singular_values.front();
        return static_cast<std::size_t>(std::count_if(singular_values.begin(), singular_values.end(),
                                                      [cut](double s) { return s > cut; }));
    }
};

namespace detail {

// One-sided Jacobi on a tall (or square) matrix.
inline SvdFactors jacobi_svd_tall(const ComplexMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    const double eps = std::numeric_limits<double>::epsilon();
    ComplexMatrix w = a;
    ComplexMatrix v = ComplexMatrix::identity(n);

    constexpr int kMaxSweeps = 80;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0;
                Complex gamma{};
                auto wp = w.column(p);
                auto wq = w.column(q);
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += std::norm(wp[i]);
                    beta += std::norm(wq[i]);
                    gamma += std::conj(wp[i]) * wq[i];
                }
                const double g = std::abs(gamma);
                if (g == 0.0 || g <= eps * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const Complex phase = std::conj(gamma) / g; // e^{-i phi}
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                auto apply = [&](std::span<Complex> xp, std::span<Complex> xq) {
                    for (std::size_t i = 0; i < xp.size(); ++i) {
                        const Complex a1 = xp[i];
                        const Complex a2 = phase * xq[i];
                        xp[i] = c * a1 - s * a2;
                        xq[i] = s * a1 + c * a2;
                    }
                };
                apply(wp, wq);
                apply(v.column(p), v.column(q));
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) sigma[j] = frobenius_norm(w.block(0, j, m, 1));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    SvdFactors f;
    f.singular_values.resize(n);
    f.v = ComplexMatrix(n, n);
    const double smax = n == 0 ? 0.0 : sigma[order[0]];
    std::size_t kept = 0;
    ComplexMatrix ucols(m, n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = order[k];
        f.singular_values[k] = sigma[j];
        for (std::size_t i = 0; i < n; ++i) f.v(i, k) = v(i, j);
        if (sigma[j] > 0.0 && sigma[j] > smax * eps * static_cast<double>(m)) {
            for (std::size_t i = 0; i < m; ++i) ucols(i, k) = w(i, j) / sigma[j];
            ++kept;
        }
    }
    // Columns for negligible singular values are rebuilt as an orthonormal completion.
    f.u = complete_basis(ucols.block(0, 0, m, kept));
    return f;
}

} // namespace detail

/// Singular value decomposition by one-sided Jacobi rotations.
inline SvdFactors svd_decompose(const ComplexMatrix& a) {
    if (a.rows() >= a.cols()) return detail::jacobi_svd_tall(a);
    auto f = detail::jacobi_svd_tall(adjoint(a));
    std::swap(f.u, f.v);
    return f;
}

} // namespace tstein
