#include <gtest/gtest.h>

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

/// X for A X + X^T B = C from the explicit n^2 x n^2 system, full-pivot LU.
ComplexMatrix reference_sylvester(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c) {
    const auto n = static_cast<Eigen::Index>(a.rows());
    oracle::EMatrix sys(n * n, n * n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) {
            oracle::EMatrix e = oracle::EMatrix::Zero(n, n);
            e(i, j) = 1.0;
            const oracle::EMatrix img = to_eigen(a) * e + e.transpose() * to_eigen(b);
            sys.col(i + j * n) = Eigen::Map<const Eigen::VectorXcd>(img.data(), n * n);
        }
    const oracle::EMatrix x = sys.fullPivLu().solve(oracle::naive_vec(c));
    return ComplexMatrix::from_column_major(a.rows(), a.cols(), std::vector<Complex>(x.data(), x.data() + x.size()));
}

const ComplexMatrix kNilpotent{{0, 1}, {0, 0}};

} // namespace

TEST(ChooseScalars, IdentityAndZero) {
    auto s = choose_scalars(ComplexMatrix::identity(3), ComplexMatrix(3, 3));
    EXPECT_EQ(s.a, Complex(1));
    EXPECT_EQ(s.b, Complex(0));
    EXPECT_NEAR(s.smin, 1.0, 1e-14);

    auto t = choose_scalars(ComplexMatrix(3, 3), ComplexMatrix::identity(3));
    EXPECT_EQ(t.a, Complex(0));
    EXPECT_EQ(t.b, Complex(1));
    EXPECT_NEAR(t.smin, 1.0, 1e-14);
}

TEST(ChooseScalars, NilpotentWithItsTransposeIsSingularForEveryCandidate) {
    // A = N and B^T = N: a A + b B^T = (a + b) N has determinant 0 for all scalars
    for (const auto& [a, b] : scalar_candidates()) {
        const auto m = to_eigen(a * kNilpotent + b * kNilpotent);
        EXPECT_EQ(std::abs(m.determinant()), 0.0);
    }
    EXPECT_TRUE(accepted_scalars(kNilpotent, transpose(kNilpotent)).empty());
    EXPECT_THROW(choose_scalars(kNilpotent, transpose(kNilpotent)), SingularPencil);
}

TEST(ChooseScalars, NilpotentPairMixedWithItsTranspose) {
    // A = B = N: a N + b N^T has determinant -a b, regular once both scalars are nonzero
    auto all = accepted_scalars(kNilpotent, kNilpotent);
    for (const auto& [a, b] : scalar_candidates()) {
        const double det = std::abs(to_eigen(a * kNilpotent + b * transpose(kNilpotent)).determinant());
        EXPECT_NEAR(det, std::abs(a * b), 1e-15);
    }
    ASSERT_FALSE(all.empty());
    for (const auto& s : all) {
        EXPECT_NE(s.a, Complex(0));
        EXPECT_NE(s.b, Complex(0));
    }
    const auto best = choose_scalars(kNilpotent, kNilpotent);
    EXPECT_EQ(best.a, all.front().a);
    EXPECT_EQ(best.b, all.front().b);
    EXPECT_NEAR(best.smin, oracle::smallest_singular_value(to_eigen(best.a * kNilpotent + best.b * transpose(kNilpotent))),
                1e-14);
}

TEST(ChooseScalars, RankingIsByNormalisedSmallestSingularValue) {
    auto a = rand_mat(4, 4, 1), b = rand_mat(4, 4, 2);
    auto all = accepted_scalars(a, b);
    ASSERT_GE(all.size(), 2u);
    auto score = [&](const ScalarChoice& s) { return s.smin / std::hypot(std::abs(s.a), std::abs(s.b)); };
    for (std::size_t i = 1; i < all.size(); ++i) EXPECT_GE(score(all[0]) * (1 + 1e-12), score(all[i]));
}

TEST(ChooseScalars, RejectsNonSquare) { EXPECT_THROW(choose_scalars(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), ShapeError); }

TEST(ToTStein, ScalarExamples) {
    auto c1 = to_t_stein(ComplexMatrix{{1}}, ComplexMatrix{{0}}, ComplexMatrix{{Complex(3, 1)}}, 1.0, 0.0);
    EXPECT_EQ(c1.a_prime, (ComplexMatrix{{-1}}));
    EXPECT_EQ(c1.b_prime, (ComplexMatrix{{0}}));
    EXPECT_EQ(c1.c_prime, (ComplexMatrix{{Complex(3, 1)}}));

    auto c2 = to_t_stein(ComplexMatrix{{1}}, ComplexMatrix{{1}}, ComplexMatrix{{2}}, 1.0, 0.0);
    EXPECT_EQ(c2.a_prime, (ComplexMatrix{{-1}}));
    EXPECT_EQ(c2.b_prime, (ComplexMatrix{{1}}));
    EXPECT_EQ(c2.c_prime, (ComplexMatrix{{2}}));
    EXPECT_NEAR(solve_direct(c2.a_prime, c2.b_prime, c2.c_prime).x(0, 0).real(), 1.0, 1e-15);
}

TEST(ToTStein, DefectsAreRelatedThroughThePremultiplier) {
    auto a = rand_mat(3, 3, 10), b = rand_mat(3, 3, 11), c = rand_mat(3, 3, 12), x = rand_mat(3, 3, 13);
    const Complex sa(0.6, 0.2), sb(-0.3, 0.7);
    auto cv = to_t_stein(a, b, c, sa, sb);
    const auto m = sa * a + sb * transpose(b);
    const auto d = a * x + transpose(x) * b - c;
    const auto e = x - cv.a_prime * transpose(x) * cv.b_prime - cv.c_prime;
    // M E = a D + b D^T
    EXPECT_LE(frobenius_norm(m * e - (sa * d + sb * transpose(d))), 1e-10 * frobenius_norm(d));
    EXPECT_LT(oracle::rel_diff(m * cv.a_prime, -ComplexMatrix::identity(3)), 1e-12);
    EXPECT_NEAR(cv.smin, oracle::smallest_singular_value(to_eigen(m)), 1e-12);
}

TEST(ToTStein, SingularCombinationThrows) {
    EXPECT_THROW(to_t_stein(ComplexMatrix::identity(2), ComplexMatrix::identity(2), ComplexMatrix(2, 2), 1.0, -1.0),
                 SingularPencil);
}

TEST(SolveTSylvester, IdentityAndZero) {
    auto c = rand_mat(3, 3, 20);
    auto s = solve_t_sylvester(ComplexMatrix::identity(3), ComplexMatrix(3, 3), c);
    EXPECT_LT(oracle::rel_diff(s.result.x, c), 1e-15);
}

TEST(SolveTSylvester, ScalarTwoXEqualsTwo) {
    auto s = solve_t_sylvester(ComplexMatrix{{1}}, ComplexMatrix{{1}}, ComplexMatrix{{2}});
    EXPECT_NEAR(std::abs(s.result.x(0, 0) - 1.0), 0.0, 1e-14);
}

TEST(SolveTSylvester, SeededInstancesMatchReference) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const std::size_t n = 1 + seed % 6;
        auto a = rand_mat(n, n, 30 + seed), b = rand_mat(n, n, 60 + seed), c = rand_mat(n, n, 90 + seed);
        auto s = solve_t_sylvester(a, b, c);
        EXPECT_LE(s.result.residual, 1e-9 * (frobenius_norm(c) + 1.0));
        EXPECT_NEAR(s.result.residual, sylvester_residual(a, b, c, s.result.x), 1e-14);
        EXPECT_LT(oracle::rel_diff(s.result.x, reference_sylvester(a, b, c)), 1e-8);
    }
}

TEST(SolveTSylvester, OriginalDefectBoundedByConvertedDefect) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto a = rand_mat(4, 4, 130 + seed), b = rand_mat(4, 4, 160 + seed), c = rand_mat(4, 4, 190 + seed);
        auto s = solve_t_sylvester(a, b, c);
        const auto& cv = s.conversion;
        const auto m = cv.a * a + cv.b * transpose(b);
        // a D + b D^T = M E and the map D -> a D + b D^T is bounded below by min |a +- b|
        const double mix = std::min(std::abs(cv.a + cv.b), std::abs(cv.a - cv.b));
        const double bound = oracle::singular_values(to_eigen(m)).front() * s.stein_residual / mix;
        EXPECT_LE(s.result.residual, bound * (1.0 + 1e-6) + 1e-13);
    }
}

TEST(SolveTSylvester, DifferentScalarsGiveTheSameSolution) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto a = rand_mat(4, 4, 230 + seed), b = rand_mat(4, 4, 260 + seed), c = rand_mat(4, 4, 290 + seed);
        auto all = accepted_scalars(a, b);
        ASSERT_GE(all.size(), 2u);
        SylvesterOptions o1, o2;
        o1.scalars = std::pair{all[0].a, all[0].b};
        o2.scalars = std::pair{all[1].a, all[1].b};
        auto x1 = solve_t_sylvester(a, b, c, o1).result.x;
        auto x2 = solve_t_sylvester(a, b, c, o2).result.x;
        EXPECT_LT(oracle::rel_diff(x1, x2), 1e-8);
    }
}

TEST(SolveTSylvester, NonUniqueEquationIsReported) {
    // X - X^T = C: every symmetric X is in the kernel
    EXPECT_THROW(solve_t_sylvester(ComplexMatrix::identity(2), -ComplexMatrix::identity(2), ComplexMatrix(2, 2)),
                 NotUniquelySolvable);
}

TEST(SolveTSylvester, RejectsRectangular) {
    EXPECT_THROW(solve_t_sylvester(ComplexMatrix(2, 3), ComplexMatrix(2, 3), ComplexMatrix(2, 3)), ShapeError);
}
