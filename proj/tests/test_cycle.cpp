#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "oracles.hpp"
#include "sparsh/cycle.hpp"

using namespace sparsh;

namespace {

Hierarchy poisson_hierarchy(index_t n, index_t coarse_target = 500) {
    SolverConfig cfg;
    cfg.coarse_target = coarse_target;
    return Hierarchy(poisson2d(n, n), cfg);
}

} // namespace

TEST(Cycle, SingleLevelCycleIsTheDirectSolve) {
    SolverConfig cfg;
    cfg.coarse_target = 100;
    const Hierarchy h(oracles::example_6x6(), cfg);
    ASSERT_EQ(h.nlevels(), 1u);
    const DenseVector f = rhs_ones(6);
    const DenseVector x = vcycle(h, 0, f, zeros(6), CycleParams{});
    EXPECT_EQ(x, h.factorization()->solve(f));
}

TEST(Cycle, ZeroRhsGivesZeroResult) {
    const Hierarchy h = poisson_hierarchy(32, 100);
    ASSERT_GE(h.nlevels(), 2u);
    const DenseVector x = vcycle(h, 0, zeros(1024), zeros(1024), CycleParams{});
    for (double e : x) EXPECT_EQ(e, 0.0);
}

TEST(Cycle, CycleOperatorIsLinear) {
    const Hierarchy h = poisson_hierarchy(16, 60);
    std::mt19937 rng(83);
    const DenseVector f = oracles::random_vector(256, rng);
    const DenseVector g = oracles::random_vector(256, rng);
    const CycleParams p;
    const DenseVector Bf = vcycle(h, 0, f, zeros(256), p);
    const DenseVector Bg = vcycle(h, 0, g, zeros(256), p);
    DenseVector combo(256);
    for (std::size_t i = 0; i < 256; ++i) combo[i] = 2.0 * f[i] - 3.0 * g[i];
    const DenseVector Bcombo = vcycle(h, 0, combo, zeros(256), p);
    double scale = 0.0;
    for (std::size_t i = 0; i < 256; ++i)
        scale = std::max(scale, std::abs(Bcombo[i]));
    for (std::size_t i = 0; i < 256; ++i)
        EXPECT_NEAR(Bcombo[i], 2.0 * Bf[i] - 3.0 * Bg[i], 1e-10 * scale);
}

TEST(Cycle, ResidualDropsEveryCycleOnPoisson) {
    const Hierarchy h = poisson_hierarchy(64);
    const DenseVector b = rhs_ones(4096);
    DenseVector x = zeros(4096);
    double prev = norm2(b);
    for (int c = 0; c < 5; ++c) {
        vcycle_in_place(h, 0, b, x, CycleParams{});
        const double rn = norm2(residual(h.level(0).A, x, b));
        EXPECT_LT(rn, prev);
        prev = rn;
    }
    // Unsmoothed aggregation cycles contract by roughly 0.6 per cycle on
    // this problem, so five of them reduce the residual well past 10x.
    EXPECT_LT(prev, 0.1 * norm2(b));
}

// The restriction inside the cycle is P^T r: with a unit P this is the
// per-aggregate sum of fine entries in ascending fine order.
TEST(Cycle, RestrictionMatchesAggregateSums) {
    const Hierarchy h = poisson_hierarchy(16, 60);
    std::mt19937 rng(89);
    const DenseVector r = oracles::random_vector(256, rng);
    const Aggregation &agg = *h.level(0).agg;
    const DenseVector restricted = spmv_transpose(*h.level(0).P_to_coarser, r);
    DenseVector manual = zeros(agg.n_coarse);
    for (index_t i = 0; i < 256; ++i)
        manual[static_cast<std::size_t>(
            agg.fine_to_coarse[static_cast<std::size_t>(i)])] +=
            r[static_cast<std::size_t>(i)];
    EXPECT_EQ(restricted, manual);
}

TEST(Cycle, ProlongationScattersCoarseValues) {
    const Hierarchy h = poisson_hierarchy(16, 60);
    const Aggregation &agg = *h.level(0).agg;
    std::mt19937 rng(97);
    const DenseVector xc = oracles::random_vector(agg.n_coarse, rng);
    const DenseVector fine = spmv(*h.level(0).P_to_coarser, xc);
    for (index_t i = 0; i < 256; ++i)
        EXPECT_EQ(fine[static_cast<std::size_t>(i)],
                  xc[static_cast<std::size_t>(
                      agg.fine_to_coarse[static_cast<std::size_t>(i)])]);
}

TEST(AmgSolve, ConvergesOnPoisson) {
    const Hierarchy h = poisson_hierarchy(64);
    const DenseVector b = rhs_ones(4096);
    const SolveResult res = amg_solve(h, b, 1e-8, 100);
    EXPECT_EQ(res.report.termination, Termination::converged);
    EXPECT_TRUE(res.report.converged());
    EXPECT_LT(res.report.true_residual, 1e-8);
    EXPECT_LT(norm2(residual(h.level(0).A, res.x, b)), 1e-8);
    EXPECT_EQ(res.report.residual_history.size(),
              static_cast<std::size_t>(res.report.iterations) + 1);
    ASSERT_EQ(res.report.time_history.size(),
              res.report.residual_history.size());
    for (std::size_t k = 1; k < res.report.time_history.size(); ++k)
        EXPECT_GE(res.report.time_history[k], res.report.time_history[k - 1]);
    // history holds true residuals: last entry equals the recomputation
    EXPECT_DOUBLE_EQ(res.report.residual_history.back(),
                     res.report.true_residual);
    for (std::size_t k = 2; k + 1 < res.report.residual_history.size(); ++k)
        EXPECT_LE(res.report.residual_history[k + 1],
                  res.report.residual_history[k]);
}

TEST(AmgSolve, ZeroRhsConvergesImmediately) {
    const Hierarchy h = poisson_hierarchy(16, 60);
    const SolveResult res = amg_solve(h, zeros(256), 1e-8, 10);
    EXPECT_EQ(res.report.iterations, 0);
    EXPECT_EQ(res.report.termination, Termination::converged);
    for (double e : res.x) EXPECT_EQ(e, 0.0);
}

TEST(AmgSolve, MaxCyclesReported) {
    const Hierarchy h = poisson_hierarchy(32, 100);
    const SolveResult res = amg_solve(h, rhs_ones(1024), 1e-300, 3);
    EXPECT_EQ(res.report.termination, Termination::max_iters);
    EXPECT_EQ(res.report.iterations, 3);
    EXPECT_FALSE(res.report.converged());
}

TEST(AmgSolve, DivergenceThrows) {
    // Indefinite 2x2 with dominant off-diagonal: Gauss-Seidel amplifies
    // the error ninefold per sweep.
    SolverConfig cfg;
    cfg.coarse_target = 1;
    const Hierarchy h(oracles::from_dense({{1, 3}, {3, 1}}), cfg);
    try {
        (void)amg_solve(h, {1.0, -1.0}, 1e-8, 50);
        FAIL() << "expected runtime_error";
    } catch (const std::runtime_error &e) {
        EXPECT_NE(std::string(e.what()).find("diverged"), std::string::npos);
    }
}

TEST(AmgSolve, JacobiSmootherConverges) {
    SolverConfig cfg;
    cfg.coarse_target = 100;
    cfg.smoother = SmootherKind::weighted_jacobi();
    const Hierarchy h(poisson2d(32, 32), cfg);
    const SolveResult res =
        amg_solve(h, rhs_ones(1024), 1e-8, 200, CycleParams::from(cfg));
    EXPECT_EQ(res.report.termination, Termination::converged);
}

TEST(AmgSolve, IterativeCoarseSolverModeConverges) {
    SolverConfig cfg;
    cfg.coarse_target = 100;
    cfg.coarse_solver = CoarseSolverKind::cg;
    const Hierarchy h(poisson2d(32, 32), cfg);
    ASSERT_EQ(h.factorization(), nullptr);
    const SolveResult res = amg_solve(h, rhs_ones(1024), 1e-8, 100);
    EXPECT_EQ(res.report.termination, Termination::converged);
}

TEST(AmgSolve, RejectsBadArguments) {
    const Hierarchy h = poisson_hierarchy(16, 60);
    EXPECT_THROW(amg_solve(h, rhs_ones(255), 1e-8, 10), std::invalid_argument);
    EXPECT_THROW(amg_solve(h, rhs_ones(256), 0.0, 10), std::invalid_argument);
}

TEST(Preconditioner, OneApplicationIsOneCycleFromZero) {
    const Hierarchy h = poisson_hierarchy(32, 100);
    const Preconditioner M = make_amg_preconditioner(h);
    std::mt19937 rng(101);
    const DenseVector r = oracles::random_vector(1024, rng);
    EXPECT_EQ(M.apply(r), vcycle(h, 0, r, zeros(1024), CycleParams{}));
}

TEST(Preconditioner, VCycleOperatorIsSymmetricOnSpd) {
    const Hierarchy h = poisson_hierarchy(16, 60);
    const Preconditioner M = make_amg_preconditioner(h);
    std::mt19937 rng(103);
    for (int rep = 0; rep < 10; ++rep) {
        const DenseVector f = oracles::random_vector(256, rng);
        const DenseVector g = oracles::random_vector(256, rng);
        const double a = dot(M.apply(f), g);
        const double b = dot(f, M.apply(g));
        EXPECT_NEAR(a, b, 1e-9 * std::max(1.0, std::abs(a)));
    }
}

TEST(Cycle, RejectsMismatchedVectors) {
    const Hierarchy h = poisson_hierarchy(16, 60);
    DenseVector x = zeros(255);
    EXPECT_THROW(vcycle_in_place(h, 0, rhs_ones(256), x, CycleParams{}),
                 std::invalid_argument);
    DenseVector x2 = zeros(256);
    EXPECT_THROW(vcycle_in_place(h, 0, rhs_ones(255), x2, CycleParams{}),
                 std::invalid_argument);
}
