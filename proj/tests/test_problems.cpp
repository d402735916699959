#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "oracles.hpp"
#include "sparsh/problems.hpp"

using namespace sparsh;

// On a square grid with nx == ny the scaled 5-point stencil reduces to
// the classic (4, -1, -1, -1, -1) pattern.
TEST(Problems, Poisson3x3ExactStencil) {
    const CsrMatrix A = poisson2d(3, 3);
    ASSERT_EQ(A.nrows(), 9);
    ASSERT_EQ(A.nnz(), 33);
    for (index_t i = 0; i < 9; ++i) EXPECT_DOUBLE_EQ(A.coeff(i, i), 4.0);
    // center node 4 couples to 1, 3, 5, 7
    EXPECT_DOUBLE_EQ(A.coeff(4, 1), -1.0);
    EXPECT_DOUBLE_EQ(A.coeff(4, 3), -1.0);
    EXPECT_DOUBLE_EQ(A.coeff(4, 5), -1.0);
    EXPECT_DOUBLE_EQ(A.coeff(4, 7), -1.0);
    // corner node 0 couples east and north only
    EXPECT_DOUBLE_EQ(A.coeff(0, 1), -1.0);
    EXPECT_DOUBLE_EQ(A.coeff(0, 3), -1.0);
    EXPECT_DOUBLE_EQ(A.coeff(0, 2), 0.0);
    // no wrap-around between row ends: nodes 2 and 3 are not neighbors
    EXPECT_DOUBLE_EQ(A.coeff(2, 3), 0.0);
    EXPECT_DOUBLE_EQ(A.coeff(3, 2), 0.0);
}

TEST(Problems, PoissonRectangularStencilValues) {
    // nx=2, ny=3: hx = 1/3, hy = 1/4; east/west = -hy/hx = -3/4,
    // north/south = -hx/hy = -4/3, diagonal = 2*(3/4) + 2*(4/3).
    const CsrMatrix A = poisson2d(2, 3);
    const double ew = -0.75, ns = -4.0 / 3.0;
    EXPECT_NEAR(A.coeff(0, 0), 2 * 0.75 + 2 * (4.0 / 3.0), 1e-15);
    EXPECT_NEAR(A.coeff(0, 1), ew, 1e-15);
    EXPECT_NEAR(A.coeff(0, 2), ns, 1e-15);
    EXPECT_NEAR(A.coeff(3, 1), ns, 1e-15);
    EXPECT_NEAR(A.coeff(3, 2), ew, 1e-15);
}

TEST(Problems, PoissonIsSymmetric) {
    const CsrMatrix A = poisson2d(8, 5);
    EXPECT_EQ(transpose(A), A);
}

TEST(Problems, ConvDiffUpwindCoefficients) {
    // bx > 0 biases the west coefficient, by < 0 the north one.
    const index_t nx = 4, ny = 4;
    const double hx = 1.0 / 5.0, hy = 1.0 / 5.0;
    const double bx = 2.0, by = -3.0, c = 1.5;
    const CsrMatrix A = convdiff2d(nx, ny, bx, by, c);
    const index_t center = 1 * nx + 1; // node (ix=1, iy=1)
    EXPECT_NEAR(A.coeff(center, center - 1), -hy / hx - bx * hy, 1e-14);
    EXPECT_NEAR(A.coeff(center, center + 1), -hy / hx, 1e-14);
    EXPECT_NEAR(A.coeff(center, center - nx), -hx / hy, 1e-14);
    EXPECT_NEAR(A.coeff(center, center + nx), -hx / hy + by * hx, 1e-14);
    EXPECT_NEAR(A.coeff(center, center),
                2 * hy / hx + 2 * hx / hy + std::abs(bx) * hy +
                    std::abs(by) * hx + c * hx * hy,
                1e-14);
}

// Interior rows of the discrete operator sum to c*hx*hy: convection and
// diffusion both annihilate constants.
TEST(Problems, ConvDiffInteriorRowSums) {
    const index_t nx = 6, ny = 5;
    const double c = 2.0;
    const CsrMatrix A = convdiff2d(nx, ny, 1.0, 100.0, c);
    const double hx = 1.0 / (nx + 1), hy = 1.0 / (ny + 1);
    for (index_t iy = 1; iy + 1 < ny; ++iy)
        for (index_t ix = 1; ix + 1 < nx; ++ix) {
            const index_t m = iy * nx + ix;
            double sum = 0.0;
            for (double v : A.row_values(m)) sum += v;
            EXPECT_NEAR(sum, c * hx * hy, 1e-13);
        }
}

TEST(Problems, ConvDiffIsUnsymmetricWithConvection) {
    const CsrMatrix A = convdiff2d(4, 4, 1.0, 0.0, 0.0);
    EXPECT_NE(transpose(A), A);
    EXPECT_EQ(convdiff2d(4, 4, 0.0, 0.0, 0.0), poisson2d(4, 4));
}

TEST(Problems, RejectsDegenerateGrids) {
    EXPECT_THROW(poisson2d(1, 4), std::invalid_argument);
    EXPECT_THROW(poisson2d(4, 0), std::invalid_argument);
    EXPECT_THROW(convdiff2d(-2, 4, 0, 0, 0), std::invalid_argument);
}

TEST(Problems, RhsOnes) {
    const DenseVector v = rhs_ones(4);
    ASSERT_EQ(v.size(), 4u);
    for (double e : v) EXPECT_DOUBLE_EQ(e, 1.0);
}

TEST(Problems, RhsRandomIsSeededAndInRange) {
    const DenseVector a = rhs_random(100, 42);
    const DenseVector b = rhs_random(100, 42);
    const DenseVector c = rhs_random(100, 43);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
    for (double e : a) {
        EXPECT_GE(e, 0.0);
        EXPECT_LT(e, 1.0);
    }
}

TEST(Problems, ReadVectorParsesWhitespaceSeparatedReals) {
    const auto path =
        (std::filesystem::temp_directory_path() / "sparsh_rhs.txt").string();
    {
        std::ofstream out(path);
        out << " 1.5\n-2 3e2\t4\n";
    }
    const DenseVector v = read_vector(path);
    ASSERT_EQ(v.size(), 4u);
    EXPECT_DOUBLE_EQ(v[0], 1.5);
    EXPECT_DOUBLE_EQ(v[1], -2.0);
    EXPECT_DOUBLE_EQ(v[2], 300.0);
    EXPECT_DOUBLE_EQ(v[3], 4.0);
    {
        std::ofstream out(path);
        out << "1.0 oops 2.0\n";
    }
    EXPECT_THROW(read_vector(path), std::runtime_error);
    std::remove(path.c_str());
    EXPECT_THROW(read_vector(path), std::runtime_error);
}
