#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tstein/lu.hpp"
#include "tstein/matrix.hpp"
#include "tstein/solvers.hpp"
#include "tstein/svd.hpp"

namespace tstein {

/// A scalar pair (a, b) for the combination a*A + b*B^T.
struct ScalarChoice {
    Complex a;
    Complex b;
    double smin = 0.0; ///< smallest singular value of a*A + b*B^T at these scalars
};

/**
 * A X + X^T B = C rewritten as X = a_prime X^T b_prime + c_prime through
 * M = a*A + b*B^T:
 *   a_prime = -M^{-1},  b_prime = a*B + b*A^T,  c_prime = M^{-1} (a*C + b*C^T).
 */
struct SylvesterConversion {
    Complex a;
    Complex b;
    ComplexMatrix a_prime;
    ComplexMatrix b_prime;
    ComplexMatrix c_prime;
    double smin = 0.0;
};

class SingularPencil : public Error {
public:
    SingularPencil(const std::string& what, double best_smin) : Error(what), best_smin_(best_smin) {}

    double best_smin() const noexcept { return best_smin_; }

private:
    double best_smin_;
};

/// Pairs whose transpose-mixing factor falls below this are skipped.
inline constexpr double kMinTransposeMixing = 0.1;

namespace detail {

inline void require_square_triple(const ComplexMatrix& a, const ComplexMatrix& b, const char* where) {
    if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols() || a.empty())
        throw ShapeError(std::string(where) + ": T-Sylvester operands must be square and equally sized");
}

/*
 * The converted equation is a*D + b*D^T = 0 in terms of the defect
 * D = A X + X^T B - C. Its symmetric part is scaled by a + b and the
 * antisymmetric part by a - b, so a pair with a = +-b loses information
 * (only a = -b matters for 1 x 1 problems).
 */
inline double transpose_mixing(Complex a, Complex b, std::size_t n) {
    const double norm = std::hypot(std::abs(a), std::abs(b));
    double f = std::abs(a + b);
    if (n > 1) f = std::min(f, std::abs(a - b));
    return f / norm;
}

inline double smallest_singular_value(const ComplexMatrix& m) {
    const auto s = svd_decompose(m).singular_values;
    return s.empty() ? 0.0 : s.back();
}

} // namespace detail

/**
 * Candidate scalar pairs in scan order: (1,0), (0,1), (1,1), (1,-1), then
 * (1, e^{i theta_k}) for 16 equispaced angles, then 32 random unit pairs
 * drawn from a fixed seed.
 */
inline std::vector<std::pair<Complex, Complex>> scalar_candidates() {
    std::vector<std::pair<Complex, Complex>> c = {{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {1.0, -1.0}};
    for (int k = 0; k < 16; ++k) c.emplace_back(1.0, std::polar(1.0, 2.0 * std::numbers::pi * k / 16.0));
    std::mt19937_64 rng(0x5eed5eedULL);
    std::normal_distribution<double> g;
    for (int k = 0; k < 32; ++k) {
        Complex a{g(rng), g(rng)}, b{g(rng), g(rng)};
        const double norm = std::hypot(std::abs(a), std::abs(b));
        c.emplace_back(a / norm, b / norm);
    }
    return c;
}

/**
 * Every usable candidate, best first. Candidates are ranked by the smallest
 * singular value of a*A + b*B^T normalised by |(a, b)|; ties keep scan order.
 */
inline std::vector<ScalarChoice> accepted_scalars(const ComplexMatrix& a_mat, const ComplexMatrix& b_mat) {
    detail::require_square_triple(a_mat, b_mat, "accepted_scalars");
    const std::size_t n = a_mat.rows();
    const ComplexMatrix bt = transpose(b_mat);
    const double cut = kRankThreshold * std::max(frobenius_norm(a_mat), frobenius_norm(b_mat));

    std::vector<std::pair<double, ScalarChoice>> scored;
    for (const auto& [a, b] : scalar_candidates()) {
        if (detail::transpose_mixing(a, b, n) < kMinTransposeMixing) continue;
        const double smin = detail::smallest_singular_value(a * a_mat + b * bt);
        const double normalised = smin / std::hypot(std::abs(a), std::abs(b));
        if (!(normalised > cut) || normalised == 0.0) continue;
        scored.push_back({normalised, {a, b, smin}});
    }
    // Best candidate by scan order with a relative tie band, so rounding noise
    // cannot promote a later candidate over an equal earlier one.
    std::size_t best = 0;
    for (std::size_t i = 1; i < scored.size(); ++i)
        if (scored[i].first > scored[best].first * (1.0 + 1e-12)) best = i;
    if (!scored.empty()) std::rotate(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(best),
                                     scored.begin() + static_cast<std::ptrdiff_t>(best) + 1);
    if (scored.size() > 2)
        std::stable_sort(scored.begin() + 1, scored.end(),
                         [](const auto& x, const auto& y) { return x.first > y.first; });
    std::vector<ScalarChoice> out;
    out.reserve(scored.size());
    for (auto& s : scored) out.push_back(s.second);
    return out;
}

/// Best regularizing pair; throws SingularPencil when no candidate is usable.
inline ScalarChoice choose_scalars(const ComplexMatrix& a_mat, const ComplexMatrix& b_mat) {
    auto all = accepted_scalars(a_mat, b_mat);
    if (all.empty()) {
        const ComplexMatrix bt = transpose(b_mat);
        double best = 0.0;
        for (const auto& [a, b] : scalar_candidates())
            best = std::max(best, detail::smallest_singular_value(a * a_mat + b * bt) /
                                      std::hypot(std::abs(a), std::abs(b)));
        throw SingularPencil("choose_scalars: pencil apparently singular (best normalised smin " +
                                 std::to_string(best) + ")",
                             best);
    }
    return all.front();
}

inline SylvesterConversion to_t_stein(const ComplexMatrix& a_mat, const ComplexMatrix& b_mat,
                                      const ComplexMatrix& c_mat, Complex a, Complex b) {
    detail::require_square_triple(a_mat, b_mat, "to_t_stein");
    if (c_mat.rows() != a_mat.rows() || c_mat.cols() != a_mat.cols())
        throw ShapeError("to_t_stein: C has the wrong shape");
    const std::size_t n = a_mat.rows();
    const ComplexMatrix m = a * a_mat + b * transpose(b_mat);

    SylvesterConversion conv;
    conv.a = a;
    conv.b = b;
    conv.smin = detail::smallest_singular_value(m);
    ComplexMatrix rhs(n, 2 * n);
    rhs.set_block(0, 0, ComplexMatrix::identity(n));
    rhs.set_block(0, n, a * c_mat + b * transpose(c_mat));
    ComplexMatrix sol;
    try {
        sol = dense_solve(m, rhs);
    } catch (const SingularMatrixError&) {
        throw SingularPencil("to_t_stein: a*A + b*B^T is singular at the given scalars", conv.smin);
    }
    conv.a_prime = -sol.block(0, 0, n, n);
    conv.b_prime = a * b_mat + b * transpose(a_mat);
    conv.c_prime = sol.block(0, n, n, n);
    return conv;
}

struct SylvesterOptions {
    SolveOptions solve;
    /// Overrides the scalar scan when set.
    std::optional<std::pair<Complex, Complex>> scalars;
};

struct SylvesterSolution {
    /// x, method and iterations of the T-Stein solve; residual is ||A X + X^T B - C||_F.
    SolveResult result;
    SylvesterConversion conversion;
    double stein_residual = 0.0; ///< residual of the converted T-Stein form
};

inline double sylvester_residual(const ComplexMatrix& a_mat, const ComplexMatrix& b_mat, const ComplexMatrix& c_mat,
                                 const ComplexMatrix& x) {
    return frobenius_norm(a_mat * x + transpose(x) * b_mat - c_mat);
}

/// Solves A X + X^T B = C by conversion to T-Stein form.
inline SylvesterSolution solve_t_sylvester(const ComplexMatrix& a_mat, const ComplexMatrix& b_mat,
                                           const ComplexMatrix& c_mat, const SylvesterOptions& opts = {}) {
    detail::require_square_triple(a_mat, b_mat, "solve_t_sylvester");
    Complex a, b;
    if (opts.scalars) {
        std::tie(a, b) = *opts.scalars;
    } else {
        const auto choice = choose_scalars(a_mat, b_mat);
        a = choice.a;
        b = choice.b;
    }
    SylvesterSolution out;
    out.conversion = to_t_stein(a_mat, b_mat, c_mat, a, b);
    const auto& cv = out.conversion;
    out.result = solve(cv.a_prime, cv.b_prime, cv.c_prime, opts.solve);
    out.stein_residual = out.result.residual;
    out.result.residual = sylvester_residual(a_mat, b_mat, c_mat, out.result.x);
    return out;
}

} // namespace tstein
