#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "sparsh/smoother.hpp"

using namespace sparsh;

TEST(SmootherKind, FactoriesAndOmegaRange) {
    EXPECT_EQ(SmootherKind::weighted_jacobi().family,
              SmootherKind::Family::weighted_jacobi);
    EXPECT_DOUBLE_EQ(SmootherKind::weighted_jacobi().omega, 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(SmootherKind::weighted_jacobi(1.0).omega, 1.0);
    EXPECT_THROW(SmootherKind::weighted_jacobi(0.0), std::invalid_argument);
    EXPECT_THROW(SmootherKind::weighted_jacobi(1.5), std::invalid_argument);
    EXPECT_THROW(SmootherKind::weighted_jacobi(-0.5), std::invalid_argument);
}

TEST(Smoother, ZeroSweepsLeaveInputUntouched) {
    const CsrMatrix A = oracles::example_6x6();
    std::mt19937 rng(47);
    const DenseVector x0 = oracles::random_vector(6, rng);
    const DenseVector f = oracles::random_vector(6, rng);
    for (const SmootherKind &kind :
         {SmootherKind::weighted_jacobi(), SmootherKind::gauss_seidel_forward(),
          SmootherKind::gauss_seidel_backward(),
          SmootherKind::gauss_seidel_symmetric()})
        EXPECT_EQ(smooth(kind, A, x0, f, 0), x0);
}

TEST(Smoother, JacobiSolvesDiagonalSystemInOneSweep) {
    const CsrMatrix D = oracles::from_dense({{2, 0, 0}, {0, 4, 0}, {0, 0, 8}});
    const DenseVector x =
        smooth(SmootherKind::weighted_jacobi(1.0), D, zeros(3), {2.0, 2.0, 2.0}, 1);
    EXPECT_DOUBLE_EQ(x[0], 1.0);
    EXPECT_DOUBLE_EQ(x[1], 0.5);
    EXPECT_DOUBLE_EQ(x[2], 0.25);
}

TEST(Smoother, JacobiUpdateFormulaOnTwoByTwo) {
    // x <- x + omega * D^{-1} (f - A x), computed by hand for
    // A = [[2, 1], [1, 3]], x0 = (1, -1), f = (3, 2), omega = 1/2:
    // r = f - A x0 = (2, 4); x1 = x0 + (1/2) * (2/2, 4/3).
    const CsrMatrix A = oracles::from_dense({{2, 1}, {1, 3}});
    const DenseVector x =
        smooth(SmootherKind::weighted_jacobi(0.5), A, {1.0, -1.0}, {3.0, 2.0}, 1);
    EXPECT_DOUBLE_EQ(x[0], 1.5);
    EXPECT_DOUBLE_EQ(x[1], -1.0 + 2.0 / 3.0);
}

TEST(Smoother, ForwardGsIsForwardSubstitutionOnLowerTriangular) {
    const CsrMatrix L = oracles::from_dense(
        {{2, 0, 0}, {1, 4, 0}, {-1, 2, 5}});
    const DenseVector f{4.0, 6.0, 2.0};
    const DenseVector x =
        smooth(SmootherKind::gauss_seidel_forward(), L, zeros(3), f, 1);
    const DenseVector r = residual(L, x, f);
    for (double e : r) EXPECT_NEAR(e, 0.0, 1e-14);
    EXPECT_DOUBLE_EQ(x[0], 2.0);
    EXPECT_DOUBLE_EQ(x[1], 1.0);
}

TEST(Smoother, BackwardGsIsBackSubstitutionOnUpperTriangular) {
    const CsrMatrix U = oracles::from_dense(
        {{2, 1, -1}, {0, 4, 2}, {0, 0, 5}});
    const DenseVector f{4.0, 6.0, 10.0};
    const DenseVector x =
        smooth(SmootherKind::gauss_seidel_backward(), U, zeros(3), f, 1);
    const DenseVector r = residual(U, x, f);
    for (double e : r) EXPECT_NEAR(e, 0.0, 1e-14);
    EXPECT_DOUBLE_EQ(x[2], 2.0);
}

TEST(Smoother, ForwardGsOrderOnTwoByTwo) {
    // Row 0 first: x0 = (f0 - a01 * x1_old) / a00 = (3 - (-1)) / 2 = 2,
    // then x1 = (f1 - a10 * x0_new) / a11 = (2 - 2) / 3 = 0.
    const CsrMatrix A = oracles::from_dense({{2, 1}, {1, 3}});
    const DenseVector x =
        smooth(SmootherKind::gauss_seidel_forward(), A, {5.0, -1.0}, {3.0, 2.0}, 1);
    EXPECT_DOUBLE_EQ(x[0], 2.0);
    EXPECT_DOUBLE_EQ(x[1], 0.0);
}

TEST(Smoother, SymmetricSweepEqualsForwardThenBackward) {
    const CsrMatrix A = poisson2d(5, 5);
    std::mt19937 rng(53);
    const DenseVector x0 = oracles::random_vector(25, rng);
    const DenseVector f = oracles::random_vector(25, rng);
    const DenseVector sym =
        smooth(SmootherKind::gauss_seidel_symmetric(), A, x0, f, 1);
    DenseVector manual =
        smooth(SmootherKind::gauss_seidel_forward(), A, x0, f, 1);
    manual = smooth(SmootherKind::gauss_seidel_backward(), A, manual, f, 1);
    EXPECT_EQ(sym, manual);
}

TEST(Smoother, RepeatedSweepsComposes) {
    const CsrMatrix A = poisson2d(6, 6);
    std::mt19937 rng(59);
    const DenseVector x0 = oracles::random_vector(36, rng);
    const DenseVector f = oracles::random_vector(36, rng);
    for (const SmootherKind &kind :
         {SmootherKind::weighted_jacobi(), SmootherKind::gauss_seidel_symmetric()}) {
        DenseVector step = x0;
        for (int s = 0; s < 3; ++s) step = smooth(kind, A, step, f, 1);
        EXPECT_EQ(smooth(kind, A, x0, f, 3), step);
    }
}

// With integer data the residual of the exact solution evaluates to
// exactly zero, so every smoother must return x bit for bit.
TEST(Smoother, ExactSolutionIsFixedPoint) {
    const CsrMatrix A = poisson2d(4, 4); // integer entries 4 and -1
    DenseVector x(16);
    for (std::size_t i = 0; i < 16; ++i)
        x[i] = static_cast<double>(static_cast<int>(i % 5) - 2);
    const DenseVector f = spmv(A, x);
    for (const SmootherKind &kind :
         {SmootherKind::weighted_jacobi(), SmootherKind::gauss_seidel_forward(),
          SmootherKind::gauss_seidel_backward(),
          SmootherKind::gauss_seidel_symmetric()})
        EXPECT_EQ(smooth(kind, A, x, f, 4), x);
}

TEST(Smoother, JacobiResidualNonIncreasingOnPoisson) {
    const CsrMatrix A = poisson2d(12, 12);
    const SmootherKind jac = SmootherKind::weighted_jacobi(2.0 / 3.0);
    for (unsigned seed = 0; seed < 12; ++seed) {
        std::mt19937 rng(seed);
        DenseVector x = oracles::random_vector(144, rng);
        const DenseVector f = oracles::random_vector(144, rng);
        double prev = norm2(residual(A, x, f));
        for (int sweep = 0; sweep < 8; ++sweep) {
            smooth_in_place(jac, A, x, f, 1);
            const double cur = norm2(residual(A, x, f));
            EXPECT_LE(cur, prev * (1.0 + 1e-12)) << "seed " << seed;
            prev = cur;
        }
    }
}

TEST(Smoother, GaussSeidelReducesErrorOnPoisson) {
    const CsrMatrix A = poisson2d(16, 16);
    std::mt19937 rng(61);
    DenseVector x = oracles::random_vector(256, rng);
    const DenseVector f = zeros(256);
    const double before = norm2(x);
    smooth_in_place(SmootherKind::gauss_seidel_symmetric(), A, x, f, 10);
    EXPECT_LT(norm2(x), 0.5 * before);
}

// One symmetric-GS application from a zero guess is a symmetric operator
// for symmetric A.
TEST(Smoother, SymmetricGsOperatorIsSymmetric) {
    std::mt19937 rng(67);
    const CsrMatrix A = oracles::random_spd(20, rng, 0.3);
    for (int rep = 0; rep < 5; ++rep) {
        const DenseVector u = oracles::random_vector(20, rng);
        const DenseVector v = oracles::random_vector(20, rng);
        const DenseVector Mu =
            smooth(SmootherKind::gauss_seidel_symmetric(), A, zeros(20), u, 1);
        const DenseVector Mv =
            smooth(SmootherKind::gauss_seidel_symmetric(), A, zeros(20), v, 1);
        const double a = dot(Mu, v);
        const double b = dot(u, Mv);
        EXPECT_NEAR(a, b, 1e-10 * std::max(1.0, std::abs(a)));
    }
}

TEST(Smoother, ZeroDiagonalIsReportedWithRow) {
    const CsrMatrix A = CsrMatrix::from_triplets(
        2, 2, {{0, 0, 1.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 0.0}});
    DenseVector x = zeros(2);
    try {
        smooth_in_place(SmootherKind::gauss_seidel_forward(), A, x, {1.0, 1.0}, 1);
        FAIL() << "expected invalid_argument";
    } catch (const std::invalid_argument &e) {
        EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos);
    }
    // structurally missing diagonal entry reports the same way
    const CsrMatrix B =
        CsrMatrix::from_triplets(2, 2, {{0, 0, 1.0}, {1, 0, 1.0}});
    EXPECT_THROW(smooth_in_place(SmootherKind::weighted_jacobi(), B, x,
                                 {1.0, 1.0}, 1),
                 std::invalid_argument);
}

TEST(Smoother, RejectsBadArguments) {
    const CsrMatrix A = oracles::example_6x6();
    DenseVector x = zeros(6);
    const DenseVector f = rhs_ones(6);
    EXPECT_THROW(smooth_in_place(SmootherKind::gauss_seidel_symmetric(), A, x,
                                 rhs_ones(5), 1),
                 std::invalid_argument);
    DenseVector short_x = zeros(5);
    EXPECT_THROW(smooth_in_place(SmootherKind::gauss_seidel_symmetric(), A,
                                 short_x, f, 1),
                 std::invalid_argument);
    EXPECT_THROW(smooth_in_place(SmootherKind::gauss_seidel_symmetric(), A, x,
                                 f, -1),
                 std::invalid_argument);
    const CsrMatrix R = CsrMatrix::from_triplets(2, 3, {{0, 0, 1.0}});
    DenseVector x2 = zeros(2);
    EXPECT_THROW(smooth_in_place(SmootherKind::gauss_seidel_symmetric(), R, x2,
                                 {1.0, 1.0}, 1),
                 std::invalid_argument);
}
