#ifndef SPARSH_CYCLE_HPP
#define SPARSH_CYCLE_HPP

/**
 * \file cycle.hpp
 * \brief Recursive V-cycle over a hierarchy, standalone or as a
 *        preconditioner application.
 */

#include <chrono>
#include <stdexcept>
#include <string>
#include <utility>

#include "sparsh/convergence.hpp"
#include "sparsh/csr.hpp"
#include "sparsh/hierarchy.hpp"
#include "sparsh/krylov.hpp"
#include "sparsh/smoother.hpp"

namespace sparsh {

/// Smoothing schedule for one cycle.
struct CycleParams {
    int pre_sweeps = 6;
    int post_sweeps = 6;
    SmootherKind smoother = SmootherKind::gauss_seidel_symmetric();

    static CycleParams from(const SolverConfig &cfg) {
        return {cfg.pre_sweeps, cfg.post_sweeps, cfg.smoother};
    }
};

namespace detail {

/// Coarsest-level solve: the stored factorization, or a tight CG run in
/// the iterative coarse-solver mode.
inline DenseVector coarse_solve(const Hierarchy &h, const DenseVector &f) {
    if (h.factorization()) return h.factorization()->solve(f);
    const CsrMatrix &Ac = h.coarsest();
    const double fn = norm2(f);
    if (fn == 0.0) return zeros(Ac.nrows());
    return cg(Ac, f, 1e-12 * fn, 5 * static_cast<int>(Ac.nrows()) + 10).x;
}

} // namespace detail

/**
 * One V-cycle at level k, updating x in place: pre-smooth, restrict the
 * residual through P^T, recurse with a zero initial guess, prolongate
 * the correction, post-smooth. The coarsest level is solved directly.
 */
inline void vcycle_in_place(const Hierarchy &h, std::size_t k,
                            const DenseVector &f, DenseVector &x,
                            const CycleParams &p) {
    const Level &lvl = h.level(k);
    const auto n = static_cast<std::size_t>(lvl.A.nrows());
    if (f.size() != n || x.size() != n)
        throw std::invalid_argument(
            "vcycle: vector lengths (" + std::to_string(f.size()) + ", " +
            std::to_string(x.size()) + ") do not match level size " +
            std::to_string(n));
    if (k + 1 == h.nlevels()) {
        x = detail::coarse_solve(h, f);
        return;
    }
    smooth_in_place(p.smoother, lvl.A, x, f, p.pre_sweeps);
    const DenseVector r = residual(lvl.A, x, f);
    const DenseVector f_coarse = spmv_transpose(*lvl.P_to_coarser, r);
    DenseVector x_coarse = zeros(h.level(k + 1).A.nrows());
    vcycle_in_place(h, k + 1, f_coarse, x_coarse, p);
    const DenseVector correction = spmv(*lvl.P_to_coarser, x_coarse);
    axpy(1.0, correction, x);
    smooth_in_place(p.smoother, lvl.A, x, f, p.post_sweeps);
}

/// Value-returning variant of vcycle_in_place.
inline DenseVector vcycle(const Hierarchy &h, std::size_t k,
                          const DenseVector &f, DenseVector x,
                          const CycleParams &p) {
    vcycle_in_place(h, k, f, x, p);
    return x;
}

/**
 * Stationary AMG solve: V-cycles from x = 0 until ||b - A x||_2 < tol or
 * max_cycles is spent. The per-cycle residuals in the report are true
 * residuals. Throws when the residual grows past 1e6 times the initial
 * norm.
 */
inline SolveResult amg_solve(const Hierarchy &h, const DenseVector &b,
                             double tol, int max_cycles,
                             const CycleParams &p = {}) {
    const CsrMatrix &A = h.level(0).A;
    if (b.size() != static_cast<std::size_t>(A.nrows()))
        throw std::invalid_argument("amg_solve: rhs length " +
                                    std::to_string(b.size()) +
                                    " does not match dimension " +
                                    std::to_string(A.nrows()));
    if (!(tol > 0.0))
        throw std::invalid_argument("amg_solve: tol must be > 0");

    const auto t0 = std::chrono::steady_clock::now();
    SolveResult out;
    out.x = zeros(A.nrows());
    ConvergenceReport &rep = out.report;
    const auto record = [&rep, t0](double value) {
        rep.residual_history.push_back(value);
        rep.time_history.push_back(detail::seconds_since(t0));
    };
    double rn = norm2(b);
    const double r0_norm = rn;
    record(rn);
    if (rn < tol) rep.termination = Termination::converged;
    for (int c = 1; rep.termination != Termination::converged && c <= max_cycles;
         ++c) {
        vcycle_in_place(h, 0, b, out.x, p);
        rn = norm2(residual(A, out.x, b));
        record(rn);
        rep.iterations = c;
        if (rn > divergence_factor * r0_norm)
            throw std::runtime_error(
                "amg_solve: diverged (residual " + std::to_string(rn) +
                " exceeds 1e6 x initial " + std::to_string(r0_norm) + ")");
        if (rn < tol) rep.termination = Termination::converged;
    }
    rep.true_residual = rn;
    rep.wall_time = detail::seconds_since(t0);
    return out;
}

/**
 * Wraps the hierarchy as a preconditioner: each application runs exactly
 * one V-cycle from a zero initial guess. The hierarchy must outlive the
 * returned object.
 */
inline Preconditioner make_amg_preconditioner(const Hierarchy &h,
                                              CycleParams p = {}) {
    const Hierarchy *hp = &h;
    return {[hp, p](const DenseVector &r) {
        DenseVector z = zeros(hp->level(0).A.nrows());
        vcycle_in_place(*hp, 0, r, z, p);
        return z;
    }};
}

} // namespace sparsh

#endif
