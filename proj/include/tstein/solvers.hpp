#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>

#include "tstein/decomposition.hpp"
#include "tstein/lu.hpp"
#include "tstein/matrix.hpp"
#include "tstein/schur.hpp"
#include "tstein/spectral.hpp"

namespace tstein {

enum class SolveMethod { direct, smith };

inline const char* to_string(SolveMethod m) { return m == SolveMethod::direct ? "direct" : "smith"; }

/// r-Smith iteration settings; r = 2 is the accelerated (squared) Smith method.
struct SmithConfig {
    int r = 2;
    double tol = 1e-12;
    std::size_t max_iter = 200;

    void validate() const {
        if (r < 2) throw InvalidInput("SmithConfig: r must be at least 2");
        if (!(tol > 0.0)) throw InvalidInput("SmithConfig: tol must be positive");
        if (max_iter < 1) throw InvalidInput("SmithConfig: max_iter must be at least 1");
    }
};

struct SolveResult {
    ComplexMatrix x;
    SolveMethod method = SolveMethod::direct;
    std::size_t iterations = 0;
    double residual = 0.0; ///< ||X - A X^T B - C||_F, recomputed from x
    bool converged = false;
    std::size_t multiplications = 0; ///< matrix products spent by the Smith iteration
};

/// Raised when I - kron(B^T, A) K is numerically singular.
class NotUniquelySolvable : public Error {
public:
    NotUniquelySolvable(const std::string& what, SolvabilityReport report, double pivot)
        : Error(what), report_(std::move(report)), pivot_(pivot) {}

    const SolvabilityReport& report() const noexcept { return report_; }
    double pivot() const noexcept { return pivot_; }

private:
    SolvabilityReport report_;
    double pivot_;
};

/// Raised when the Smith iteration stalls at a non-solution, blows up, or runs out of iterations.
class SmithNonConvergence : public Error {
public:
    SmithNonConvergence(const std::string& what, SolveResult best) : Error(what), best_(std::move(best)) {}

    const SolveResult& best() const noexcept { return best_; }

private:
    SolveResult best_;
};

/// Direct solves build an (mn)^2 dense system; larger problems are refused.
inline constexpr std::size_t kDirectSizeLimit = 4096;

class ProblemTooLarge : public Error {
public:
    using Error::Error;
};

namespace detail {

inline void require_triple(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c, const char* where) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != c.rows() || a.cols() != c.cols())
        throw ShapeError(std::string(where) + ": A, B and C must share one shape");
    if (a.empty()) throw ShapeError(std::string(where) + ": empty operands");
}

} // namespace detail

inline double residual(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                       const ComplexMatrix& x) {
    detail::require_triple(a, b, c, "residual");
    if (x.rows() != a.rows() || x.cols() != a.cols()) throw ShapeError("residual: X has the wrong shape");
    return frobenius_norm(x - a * transpose(x) * b - c);
}

/**
 * Solves (I - kron(B^T, A) K) vec(X) = vec(C) by dense LU.
 *
 * Works whenever the equation is uniquely solvable, including a simple
 * eigenvalue -1 of A^T B. pivot_tol is relative to the system's infinity norm.
 */
inline SolveResult solve_direct(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                                double pivot_tol = kRankThreshold) {
    detail::require_triple(a, b, c, "solve_direct");
    const std::size_t m = a.rows(), n = a.cols();
    if (m * n > kDirectSizeLimit)
        throw ProblemTooLarge("solve_direct: m*n = " + std::to_string(m * n) + " exceeds " +
                              std::to_string(kDirectSizeLimit) + "; use smith_solve");
    ComplexMatrix system = t_stein_operator(a, b);
    system *= -1.0;
    for (std::size_t i = 0; i < m * n; ++i) system(i, i) += 1.0;

    SolveResult res;
    res.method = SolveMethod::direct;
    try {
        res.x = unvec(dense_solve(system, vec(c), pivot_tol), m, n);
    } catch (const SingularMatrixError& e) {
        throw NotUniquelySolvable("solve_direct: the T-Stein equation is not uniquely solvable",
                                  solvability_report(a, b), e.magnitude());
    }
    res.residual = residual(a, b, c, res.x);
    res.converged = true;
    return res;
}

/**
 * r-Smith iteration on the embedded Stein form:
 *
 *   X_0 = A C^T B + C,  A_0 = A B^T,  B_0 = A^T B,
 *   X_{k+1} = sum_{i<r} A_k^i X_k B_k^i,  A_{k+1} = A_k^r,  B_{k+1} = B_k^r.
 *
 * Stops once ||X_{k+1} - X_k||_F <= tol * max(1, ||X_{k+1}||_F); the final
 * residual must then be below sqrt(tol) times the problem scale, otherwise
 * the iteration stalled at a non-solution (rho(A^T B) >= 1). Divergence is
 * flagged when the iterate exceeds 1e8 times its initial scale or when
 * ||A_k|| ||B_k|| (once >= 1) grows three steps in a row.
 */
inline SolveResult smith_solve(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                               const SmithConfig& config = {}) {
    detail::require_triple(a, b, c, "smith_solve");
    config.validate();

    ComplexMatrix ak = a * transpose(b);
    ComplexMatrix bk = transpose(a) * b;
    SolveResult res;
    res.method = SolveMethod::smith;
    res.x = a * transpose(c) * b + c;
    res.multiplications = 4;

    const double scale0 = std::max({1.0, frobenius_norm(res.x), frobenius_norm(c)});
    double prev_growth = frobenius_norm(ak) * frobenius_norm(bk);
    int growth_streak = 0;
    bool stalled = false;
    std::string failure;

    for (std::size_t k = 1; k <= config.max_iter; ++k) {
        ComplexMatrix next = res.x;
        ComplexMatrix ap = ak, bp = bk;
        for (int i = 1; i < config.r; ++i) {
            next += ap * res.x * bp;
            res.multiplications += 2;
            if (i + 1 < config.r) {
                ap = ap * ak;
                bp = bp * bk;
                res.multiplications += 2;
            }
        }
        ak = ap * ak;
        bk = bp * bk;
        res.multiplications += 2;

        const double step = frobenius_norm(next - res.x);
        res.x = std::move(next);
        res.iterations = k;

        const double xnorm = frobenius_norm(res.x);
        if (!all_finite(res.x) || xnorm > 1e8 * scale0) {
            failure = "smith_solve: iterates diverged";
            break;
        }
        const double growth = frobenius_norm(ak) * frobenius_norm(bk);
        growth_streak = (growth > prev_growth && growth >= 1.0) ? growth_streak + 1 : 0;
        prev_growth = growth;
        if (growth_streak >= 3) {
            failure = "smith_solve: ||A_k|| ||B_k|| keeps growing; rho(A^T B) >= 1";
            break;
        }
        if (step <= config.tol * std::max(1.0, xnorm)) {
            stalled = true;
            break;
        }
    }

    if (all_finite(res.x)) res.residual = residual(a, b, c, res.x);
    else res.residual = std::numeric_limits<double>::infinity();

    if (failure.empty() && !stalled) failure = "smith_solve: max_iter exhausted";
    if (failure.empty()) {
        const double scale =
            frobenius_norm(c) + frobenius_norm(a) * frobenius_norm(b) * frobenius_norm(res.x) + 1.0;
        if (res.residual > std::sqrt(config.tol) * scale)
            failure = "smith_solve: iteration stalled at a non-solution; rho(A^T B) >= 1";
    }
    if (!failure.empty()) {
        res.converged = false;
        throw SmithNonConvergence(failure, std::move(res));
    }
    res.converged = true;
    return res;
}

/// Ordinary Stein triple (F, G, H) meaning X = F X G + H.
struct SteinTriple {
    ComplexMatrix a;
    ComplexMatrix b;
    ComplexMatrix c;
};

/// Every solution of X = A X^T B + C also solves X = (A B^T) X (A^T B) + C + A C^T B.
inline SteinTriple stein_embed(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c) {
    detail::require_triple(a, b, c, "stein_embed");
    return {a * transpose(b), transpose(a) * b, c + a * transpose(c) * b};
}

inline double stein_residual(const SteinTriple& s, const ComplexMatrix& x) {
    return frobenius_norm(x - s.a * x * s.b - s.c);
}

enum class MethodChoice { direct, smith, automatic };

struct SolveOptions {
    MethodChoice method = MethodChoice::automatic;
    SmithConfig smith;
    double pivot_tol = kRankThreshold;
    /// automatic picks Smith below this spectral radius of A^T B.
    double auto_threshold = 0.95;
};

/**
 * Method dispatch shared by the CLI and the T-Sylvester bridge. The
 * automatic choice runs Smith when rho(A^T B) < auto_threshold (or the
 * system is too large for a direct solve) and falls back to the direct
 * solver if Smith fails and the size allows it.
 */
inline SolveResult solve(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                         const SolveOptions& opts = {}) {
    switch (opts.method) {
    case MethodChoice::direct:
        return solve_direct(a, b, c, opts.pivot_tol);
    case MethodChoice::smith:
        return smith_solve(a, b, c, opts.smith);
    case MethodChoice::automatic:
        break;
    }
    detail::require_triple(a, b, c, "solve");
    const bool fits = a.rows() * a.cols() <= kDirectSizeLimit;
    if (!fits || spectral_radius(transpose(a) * b) < opts.auto_threshold) {
        try {
            return smith_solve(a, b, c, opts.smith);
        } catch (const SmithNonConvergence&) {
            if (!fits) throw;
        }
    }
    return solve_direct(a, b, c, opts.pivot_tol);
}

} // namespace tstein
