#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

#include "tstein/householder.hpp"
#include "tstein/lu.hpp"
#include "tstein/matrix.hpp"
#include "tstein/schur.hpp"
#include "tstein/svd.hpp"
#include "tstein/triangular.hpp"

namespace tstein {

/// Which construction produced the innermost square factors.
enum class PqzRoute {
    qr,        ///< Schur of the product, then QR of B^T P^H
    ql,        ///< Schur of the product, then QL of (P A)^H
    perturbed, ///< QR route after lifting B off its null singular directions
};

/// What to do when neither factor of the square core is invertible.
enum class RankStrategy {
    deflate, ///< peel off a common zero eigenvalue exactly and recurse
    perturb, ///< perturb B along its null singular directions (any B deficiency)
};

struct PqzOptions {
    RankStrategy rank_strategy = RankStrategy::deflate;
    double rank_tol = kRankThreshold;
    /// Perturbation size is this times max(1, ||B||_F).
    double perturbation_scale = 1e-8;
};

/**
 * Simultaneous triangularization of (A, B^T):
 * u_a = p * a * q (m x n) and u_b = q^H * b^T * p^H (n x m) are both upper
 * triangular, with p (m x m) and q (n x n) unitary.
 */
struct TriangularPair {
    ComplexMatrix p;
    ComplexMatrix q;
    ComplexMatrix u_a;
    ComplexMatrix u_b;
    PqzRoute route = PqzRoute::qr;
    /// Exact zero-eigenvalue deflations performed before the final route.
    std::size_t deflations = 0;
    /// ||B_used - B||_F; zero unless the perturbed route ran.
    double perturbation = 0.0;
};

namespace detail {

struct CorePair {
    ComplexMatrix p, q, uf, ug;
    PqzRoute route = PqzRoute::qr;
    std::size_t deflations = 0;
    double perturbation = 0.0;
};

inline ComplexMatrix embed_identity(const ComplexMatrix& top_left, std::size_t n) {
    ComplexMatrix out = ComplexMatrix::identity(n);
    out.set_block(n - top_left.rows(), n - top_left.cols(), top_left);
    return out;
}

inline ComplexMatrix direct_sum(const ComplexMatrix& a, std::size_t extra) {
    ComplexMatrix out = ComplexMatrix::identity(a.rows() + extra);
    out.set_block(0, 0, a);
    return out;
}

inline CorePair qr_route(const ComplexMatrix& f, const ComplexMatrix& g) {
    auto s = schur_decompose(f * g);
    CorePair c;
    c.p = adjoint(s.u);
    auto qr = qr_decompose(g * s.u);
    c.q = std::move(qr.q);
    c.ug = std::move(qr.r);
    c.uf = upper_part(s.t * tri_pinv(c.ug));
    c.route = PqzRoute::qr;
    return c;
}

inline CorePair ql_route(const ComplexMatrix& f, const ComplexMatrix& g) {
    auto s = schur_decompose(f * g);
    CorePair c;
    c.p = adjoint(s.u);
    auto ql = ql_decompose(adjoint(c.p * f));
    c.q = std::move(ql.q);
    c.uf = upper_part(adjoint(ql.l));
    c.ug = upper_part(tri_pinv(c.uf) * s.t);
    c.route = PqzRoute::ql;
    return c;
}

// Square core: p f q and q^H g p^H upper triangular.
inline CorePair core_pair(const ComplexMatrix& f, const ComplexMatrix& g, bool prefer_qr, const PqzOptions& opts,
                          double perturbation_size) {
    const std::size_t k = f.rows();
    if (k == 0) return {};
    const auto sg = svd_decompose(g);
    const std::size_t g_rank = sg.rank(opts.rank_tol);

    if (opts.rank_strategy == RankStrategy::perturb && g_rank < k) {
        ComplexMatrix lifted = g;
        for (std::size_t i = g_rank; i < k; ++i)
            for (std::size_t col = 0; col < k; ++col)
                for (std::size_t row = 0; row < k; ++row)
                    lifted(row, col) += perturbation_size * sg.u(row, i) * std::conj(sg.v(col, i));
        auto c = qr_route(f, lifted);
        c.route = PqzRoute::perturbed;
        c.perturbation = frobenius_norm(lifted - g);
        return c;
    }

    const auto sf = svd_decompose(f);
    const bool g_full = g_rank == k;
    const bool f_full = sf.rank(opts.rank_tol) == k;
    if (g_full && (prefer_qr || !f_full)) return qr_route(f, g);
    if (f_full) return ql_route(f, g);

    // Both singular: g w = 0 and f v = 0 give a shared zero eigenvalue that
    // can be split off as the leading diagonal position.
    ComplexMatrix w = sg.v.block(0, k - 1, k, 1);
    ComplexMatrix v = sf.v.block(0, k - 1, k, 1);
    const ComplexMatrix ph = complete_basis(w);
    const ComplexMatrix qd = complete_basis(v);
    const ComplexMatrix w2 = ph.block(0, 1, k, k - 1);
    const ComplexMatrix q2 = qd.block(0, 1, k, k - 1);
    auto sub = core_pair(adjoint(w2) * f * q2, adjoint(q2) * g * w2, prefer_qr, opts, perturbation_size);

    CorePair c;
    c.p = embed_identity(sub.p, k) * adjoint(ph);
    c.q = qd * embed_identity(sub.q, k);
    const ComplexMatrix pfq = c.p * f * c.q;
    const ComplexMatrix qgp = adjoint(c.q) * g * adjoint(c.p);
    c.uf = ComplexMatrix(k, k);
    c.ug = ComplexMatrix(k, k);
    for (std::size_t j = 0; j < k; ++j) {
        c.uf(0, j) = pfq(0, j);
        c.ug(0, j) = qgp(0, j);
    }
    c.uf(0, 0) = Complex{};
    c.ug(0, 0) = Complex{};
    c.uf.set_block(1, 1, sub.uf);
    c.ug.set_block(1, 1, sub.ug);
    c.route = sub.route;
    c.deflations = sub.deflations + 1;
    c.perturbation = sub.perturbation;
    return c;
}

} // namespace detail

/**
 * Computes unitary P, Q with P A Q and Q^H B^T P^H upper triangular.
 *
 * The Schur form of A B^T fixes P; Q then comes from a QR factorization of
 * B^T P^H (the default for m >= n) or a QL factorization of (P A)^H (m < n),
 * and the remaining triangle follows from the generalized inverse of the
 * triangular factor. Rectangular inputs are first reduced to a square core:
 * a QR factorization of A (m > n) or of B^T (m < n) moves the trivial part of
 * the product into trailing rows or columns. If the preferred factor of the
 * core is singular the other route is used; if both are singular a common
 * zero eigenvalue is deflated exactly (or, with RankStrategy::perturb, B is
 * perturbed by perturbation_scale * max(1, ||B||_F) along its null singular
 * directions and the size of that change is reported).
 */
inline TriangularPair pqz_decompose(const ComplexMatrix& a, const ComplexMatrix& b, const PqzOptions& opts = {}) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("pqz_decompose: A and B must have the same shape");
    const std::size_t m = a.rows(), n = a.cols();
    const double perturbation_size = opts.perturbation_scale * std::max(1.0, frobenius_norm(b));
    const ComplexMatrix bt = transpose(b);

    TriangularPair out;
    detail::CorePair c;
    if (m == n) {
        c = detail::core_pair(a, bt, true, opts, perturbation_size);
        out.p = std::move(c.p);
        out.q = std::move(c.q);
        out.u_a = std::move(c.uf);
        out.u_b = std::move(c.ug);
    } else if (m > n) {
        auto z = qr_decompose(a);
        const ComplexMatrix btz = bt * z.q;
        c = detail::core_pair(z.r.block(0, 0, n, n), btz.block(0, 0, n, n), true, opts, perturbation_size);
        out.p = detail::direct_sum(c.p, m - n) * adjoint(z.q);
        out.q = c.q;
        out.u_a = ComplexMatrix(m, n);
        out.u_a.set_block(0, 0, c.uf);
        out.u_b = ComplexMatrix(n, m);
        out.u_b.set_block(0, 0, c.ug);
        out.u_b.set_block(0, n, adjoint(c.q) * btz.block(0, n, n, m - n));
    } else {
        auto y = qr_decompose(bt);
        const ComplexMatrix ay = a * y.q;
        c = detail::core_pair(ay.block(0, 0, m, m), y.r.block(0, 0, m, m), false, opts, perturbation_size);
        out.p = c.p;
        out.q = y.q * detail::direct_sum(c.q, n - m);
        out.u_a = ComplexMatrix(m, n);
        out.u_a.set_block(0, 0, c.uf);
        out.u_a.set_block(0, m, c.p * ay.block(0, m, m, n - m));
        out.u_b = ComplexMatrix(n, m);
        out.u_b.set_block(0, 0, c.ug);
    }
    out.route = c.route;
    out.deflations = c.deflations;
    out.perturbation = c.perturbation;
    return out;
}

/**
 * Matrix of X -> A X^T B acting on column-major vec(X); equals
 * kron(B^T, A) * K_{m,n}. Entry (p + q*m, i + j*m) is A(p, j) * B(i, q).
 */
inline ComplexMatrix t_stein_operator(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("t_stein_operator: A and B must have the same shape");
    const std::size_t m = a.rows(), n = a.cols();
    ComplexMatrix op(m * n, m * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t q = 0; q < n; ++q)
                for (std::size_t p = 0; p < m; ++p) op(p + q * m, i + j * m) = a(p, j) * b(i, q);
    return op;
}

} // namespace tstein
