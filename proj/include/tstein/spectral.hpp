#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "tstein/matrix.hpp"
#include "tstein/schur.hpp"

namespace tstein {

/// Default tolerance for reciprocal-pair and -1 detection.
inline constexpr double kSpectralTol = 1e-10;

/// Eigenvalues of X -> A X^T B, counted with multiplicity (m*n of them).
struct OperatorSpectrum {
    std::vector<Complex> values;
};

/**
 * Unique-solvability diagnosis of X = A X^T B + C from sigma(A^T B).
 *
 * The equation is uniquely solvable exactly when no two eigenvalues (the
 * same index twice included) multiply to 1 unless both are -1, and -1 occurs
 * at most once.
 */
struct SolvabilityReport {
    std::vector<Complex> eigenvalues; ///< sigma(A^T B), n entries
    /// 0-based index pairs (i <= j) with lambda_i * lambda_j ~ 1, lambda_i not ~ -1.
    std::vector<std::pair<std::size_t, std::size_t>> reciprocal_violations;
    std::size_t minus_one_multiplicity = 0;
    bool unique_solvable = true;
    double tolerance_used = kSpectralTol;
};

namespace detail {

inline bool near_reciprocal(Complex x, Complex y, double tol) {
    return std::abs(x * y - 1.0) <= tol * std::max(1.0, std::abs(x) * std::abs(y));
}

inline bool near_minus_one(Complex x, double tol) { return std::abs(x + 1.0) <= tol * std::max(1.0, std::abs(x)); }

} // namespace detail

/**
 * Closed-form spectrum of the T-Stein operator.
 *
 * With lambda_1..lambda_s the eigenvalues of the smaller of A^T B and A B^T
 * (s = min(m, n)), the operator has eigenvalues lambda_i and the pairs
 * +-sqrt(lambda_i lambda_j) for i < j, plus m*n - s^2 zeros.
 */
inline OperatorSpectrum operator_spectrum(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("operator_spectrum: A and B must have the same shape");
    const std::size_t m = a.rows(), n = a.cols();
    const auto lambda = n <= m ? eigenvalues(transpose(a) * b) : eigenvalues(a * transpose(b));
    OperatorSpectrum spec;
    spec.values.reserve(m * n);
    for (const auto& l : lambda) spec.values.push_back(l);
    for (std::size_t i = 0; i < lambda.size(); ++i)
        for (std::size_t j = i + 1; j < lambda.size(); ++j) {
            const Complex r = std::sqrt(lambda[i] * lambda[j]);
            spec.values.push_back(r);
            spec.values.push_back(-r);
        }
    spec.values.resize(m * n, Complex{});
    return spec;
}

inline SolvabilityReport solvability_report(const ComplexMatrix& a, const ComplexMatrix& b,
                                            double tol = kSpectralTol) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("solvability_report: A and B must have the same shape");
    SolvabilityReport r;
    r.tolerance_used = tol;
    r.eigenvalues = eigenvalues(transpose(a) * b);
    const auto& ev = r.eigenvalues;
    for (std::size_t i = 0; i < ev.size(); ++i) {
        if (detail::near_minus_one(ev[i], tol)) {
            ++r.minus_one_multiplicity;
            continue;
        }
        for (std::size_t j = i; j < ev.size(); ++j)
            if (detail::near_reciprocal(ev[i], ev[j], tol)) r.reciprocal_violations.emplace_back(i, j);
    }
    r.unique_solvable = r.reciprocal_violations.empty() && r.minus_one_multiplicity <= 1;
    return r;
}

/// Uniqueness test for the embedded Stein equation X = (A B^T) X (A^T B) + C + A C^T B.
inline bool stein_embedding_unique(const ComplexMatrix& a, const ComplexMatrix& b, double tol = kSpectralTol) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("stein_embedding_unique: A and B must have the same shape");
    const auto mu = eigenvalues(a * transpose(b));
    const auto nu = eigenvalues(transpose(a) * b);
    for (const auto& x : mu)
        for (const auto& y : nu)
            if (detail::near_reciprocal(x, y, tol)) return false;
    return true;
}

} // namespace tstein
