#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "tstein/tstein.hpp"

using namespace tstein;
using oracle::to_eigen;

namespace {

ComplexMatrix rand_mat(std::size_t m, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return oracle::random_matrix(m, n, rng);
}

struct PairErrors {
    double unitary_p, unitary_q, lower_a, lower_b, recon_a, recon_b;
};

PairErrors check(const ComplexMatrix& a, const ComplexMatrix& b, const TriangularPair& f) {
    const double sa = std::max(1.0, frobenius_norm(a)), sb = std::max(1.0, frobenius_norm(b));
    return {oracle::unitarity_error(f.p),
            oracle::unitarity_error(f.q),
            lower_magnitude(f.u_a) / sa,
            lower_magnitude(f.u_b) / sb,
            frobenius_norm(f.p * a * f.q - f.u_a) / sa,
            frobenius_norm(adjoint(f.q) * transpose(b) * adjoint(f.p) - f.u_b) / sb};
}

void expect_invariants(const ComplexMatrix& a, const ComplexMatrix& b, const TriangularPair& f, double tol) {
    const auto e = check(a, b, f);
    EXPECT_LE(e.unitary_p, tol);
    EXPECT_LE(e.unitary_q, tol);
    EXPECT_LE(e.lower_a, tol);
    EXPECT_LE(e.lower_b, tol);
    EXPECT_LE(e.recon_a, tol);
    EXPECT_LE(e.recon_b, tol);
}

/// (Q (x) P^H)(U_B (x) U_A) K (Q^H (x) P) against (B^T (x) A) K.
double factored_similarity_error(const ComplexMatrix& a, const ComplexMatrix& b, const TriangularPair& f) {
    const std::size_t m = a.rows(), n = a.cols();
    const auto k = commutation_matrix(m, n);
    const auto lhs = kron(transpose(b), a) * k;
    const auto rhs = kron(f.q, adjoint(f.p)) * kron(f.u_b, f.u_a) * k * kron(adjoint(f.q), f.p);
    return frobenius_norm(lhs - rhs) / std::max(1.0, frobenius_norm(lhs));
}

ComplexMatrix rank_deficient(std::size_t m, std::size_t n, std::size_t rank, std::uint64_t seed) {
    return rand_mat(m, rank, seed) * rand_mat(rank, n, seed + 1);
}

} // namespace

TEST(Pqz, IdentityPairGivesUnitDiagonals) {
    auto f = pqz_decompose(ComplexMatrix::identity(2), ComplexMatrix::identity(2));
    expect_invariants(ComplexMatrix::identity(2), ComplexMatrix::identity(2), f, 1e-14);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_NEAR(std::abs(f.u_a(i, i)), 1.0, 1e-14);
        EXPECT_NEAR(std::abs(f.u_b(i, i)), 1.0, 1e-14);
    }
    EXPECT_LT(std::abs(f.u_a(0, 1)), 1e-14);
}

TEST(Pqz, ScalarProductIsTheEigenvalue) {
    ComplexMatrix a{{2}}, b{{3}};
    auto f = pqz_decompose(a, b);
    EXPECT_NEAR(std::abs((f.u_a * f.u_b)(0, 0) - 6.0), 0.0, 1e-14);
}

TEST(Pqz, SquareRandomInvariantsAndDiagonalProducts) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto a = rand_mat(4, 4, 200 + seed), b = rand_mat(4, 4, 300 + seed);
        auto f = pqz_decompose(a, b);
        expect_invariants(a, b, f, 1e-10);
        EXPECT_EQ(f.route, PqzRoute::qr);
        std::vector<Complex> prod;
        for (std::size_t i = 0; i < 4; ++i) prod.push_back(f.u_a(i, i) * f.u_b(i, i));
        EXPECT_TRUE(oracle::multiset_match(prod, oracle::eigenvalues(to_eigen(transpose(a) * b)), 1e-8));
        EXPECT_LE(factored_similarity_error(a, b, f), 1e-10);
    }
}

TEST(Pqz, RectangularShapes) {
    for (std::size_t m = 1; m <= 5; ++m)
        for (std::size_t n = 1; n <= 5; ++n) {
            auto a = rand_mat(m, n, 17 * m + n), b = rand_mat(m, n, 31 * m + n);
            auto f = pqz_decompose(a, b);
            expect_invariants(a, b, f, 1e-10);
            EXPECT_LE(factored_similarity_error(a, b, f), 1e-10) << m << "x" << n;
            // U_A U_B is upper triangular and carries sigma(A B^T)
            auto prod = f.u_a * f.u_b;
            EXPECT_LE(lower_magnitude(prod), 1e-10 * std::max(1.0, frobenius_norm(prod)));
            EXPECT_TRUE(oracle::multiset_match(diagonal_of(prod), oracle::eigenvalues(to_eigen(a * transpose(b))), 1e-8))
                << m << "x" << n;
        }
}

TEST(Pqz, WideShapesUseTheQlRoute) {
    auto a = rand_mat(2, 4, 1), b = rand_mat(2, 4, 2);
    EXPECT_EQ(pqz_decompose(a, b).route, PqzRoute::ql);
}

TEST(Pqz, RankDeficientBDeflatesExactly) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const std::size_t m = 3 + seed % 3, n = 2 + seed % 4;
        const std::size_t r = std::max<std::size_t>(1, std::min(m, n) - 1);
        auto a = rand_mat(m, n, 400 + seed);
        auto b = rank_deficient(m, n, r, 500 + seed);
        auto f = pqz_decompose(a, b);
        expect_invariants(a, b, f, 1e-10);
        EXPECT_EQ(f.perturbation, 0.0);
        EXPECT_LE(factored_similarity_error(a, b, f), 1e-10);
    }
}

TEST(Pqz, BothFactorsSingularNeedsDeflation) {
    // A and B share a null direction, so neither core factor is invertible
    ComplexMatrix a = rank_deficient(3, 3, 2, 600);
    ComplexMatrix b = rank_deficient(3, 3, 1, 610);
    auto f = pqz_decompose(a, b);
    expect_invariants(a, b, f, 1e-10);
    EXPECT_GE(f.deflations, 1u);
    EXPECT_LE(factored_similarity_error(a, b, f), 1e-10);
}

TEST(Pqz, ZeroMatrices) {
    ComplexMatrix a(3, 2), b(3, 2);
    auto f = pqz_decompose(a, b);
    expect_invariants(a, b, f, 1e-14);
    auto g = pqz_decompose(rand_mat(3, 3, 5), ComplexMatrix(3, 3));
    expect_invariants(rand_mat(3, 3, 5), ComplexMatrix(3, 3), g, 1e-10);
}

TEST(Pqz, PerturbStrategyReportsItsBackwardError) {
    PqzOptions opts;
    opts.rank_strategy = RankStrategy::perturb;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto a = rand_mat(4, 4, 700 + seed);
        auto b = rank_deficient(4, 4, 2, 800 + seed);
        auto f = pqz_decompose(a, b, opts);
        EXPECT_EQ(f.route, PqzRoute::perturbed);
        const double eps = opts.perturbation_scale * std::max(1.0, frobenius_norm(b));
        // two null directions, each lifted by eps; measured as a difference of O(||B||) matrices
        EXPECT_NEAR(f.perturbation, eps * std::sqrt(2.0), 1e-14 * std::max(1.0, frobenius_norm(b)));
        const auto e = check(a, b, f);
        EXPECT_LE(e.unitary_p, 1e-12);
        EXPECT_LE(e.unitary_q, 1e-12);
        EXPECT_LE(e.lower_a, 1e-12);
        EXPECT_LE(e.lower_b, 1e-12);
        // B is reproduced up to the perturbation; A through the inverse of the
        // lifted factor, whose condition number is about ||B|| / eps
        EXPECT_LE(e.recon_b * std::max(1.0, frobenius_norm(b)), f.perturbation * (1.0 + 1e-6) + 1e-12);
        EXPECT_LE(e.recon_a, 1e-5);
    }
}

TEST(Pqz, ShapeMismatchThrows) { EXPECT_THROW(pqz_decompose(ComplexMatrix(2, 3), ComplexMatrix(3, 2)), ShapeError); }

TEST(TSteinOperator, Basics) {
    EXPECT_EQ(t_stein_operator(ComplexMatrix{{1}}, ComplexMatrix{{1}}), (ComplexMatrix{{1}}));
    EXPECT_EQ(max_abs(t_stein_operator(ComplexMatrix(2, 3), rand_mat(2, 3, 1))), 0.0);
}

TEST(TSteinOperator, ActsAsTransposeSandwich) {
    auto a = rand_mat(2, 3, 10), b = rand_mat(2, 3, 11), x = rand_mat(2, 3, 12);
    auto op = t_stein_operator(a, b);
    EXPECT_LE(frobenius_norm(op * vec(x) - vec(a * transpose(x) * b)), 1e-13 * frobenius_norm(a * transpose(x) * b));
    EXPECT_LT(oracle::rel_diff(op, kron(transpose(b), a) * commutation_matrix(2, 3)), 1e-15);
    EXPECT_LT(oracle::rel_diff(op, oracle::from_eigen(oracle::brute_operator(a, b))), 1e-15);
}
