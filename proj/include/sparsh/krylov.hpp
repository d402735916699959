#ifndef SPARSH_KRYLOV_HPP
#define SPARSH_KRYLOV_HPP

/**
 * \file krylov.hpp
 * \brief Preconditioned CG and flexible preconditioned BiCGStab.
 *
 * Both drivers start from x = 0, stop on the recurrence residual
 * ||r||_2 < tol, and report the recomputed true residual on exit. With
 * the identity preconditioner they reduce to plain CG and BiCGStab.
 */

#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

#include "sparsh/convergence.hpp"
#include "sparsh/csr.hpp"

namespace sparsh {

/// Residual explosion beyond this factor of the initial norm stops a
/// solver with Termination::diverged.
inline constexpr double divergence_factor = 1e6;

/// Left-applied preconditioner z = M^-1 r. AMG wires a V-cycle in here
/// (one cycle from a zero initial guess per application).
struct Preconditioner {
    std::function<DenseVector(const DenseVector &)> apply;

    static Preconditioner identity() {
        return {[](const DenseVector &r) { return r; }};
    }
};

namespace detail {

inline void check_system(const CsrMatrix &A, const DenseVector &b, double tol,
                         const char *who) {
    if (!A.is_square())
        throw std::invalid_argument(std::string(who) + ": matrix must be square");
    if (b.size() != static_cast<std::size_t>(A.nrows()))
        throw std::invalid_argument(std::string(who) + ": rhs length " +
                                    std::to_string(b.size()) +
                                    " does not match dimension " +
                                    std::to_string(A.nrows()));
    if (!(tol > 0.0))
        throw std::invalid_argument(std::string(who) + ": tol must be > 0");
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace detail

/**
 * Preconditioned conjugate gradient for symmetric positive definite A
 * (not verified). A non-positive (Ap, p) stops with
 * Termination::breakdown as the non-SPD signal.
 */
inline SolveResult pcg(const CsrMatrix &A, const DenseVector &b,
                       const Preconditioner &M, double tol, int max_iters) {
    detail::check_system(A, b, tol, "pcg");
    const auto t0 = std::chrono::steady_clock::now();
    SolveResult out;
    out.x = zeros(A.nrows());
    ConvergenceReport &rep = out.report;

    const auto record = [&rep, t0](double value) {
        rep.residual_history.push_back(value);
        rep.time_history.push_back(detail::seconds_since(t0));
    };

    DenseVector r = b;
    double rn = norm2(r);
    const double r0_norm = rn;
    record(rn);
    if (rn < tol) {
        rep.termination = Termination::converged;
    } else {
        DenseVector z = M.apply(r);
        DenseVector p = z;
        double rz = dot(r, z);
        for (int j = 0; j < max_iters; ++j) {
            const DenseVector Ap = spmv(A, p);
            const double pAp = dot(Ap, p);
            if (pAp <= 0.0) {
                rep.termination = Termination::breakdown;
                break;
            }
            const double alpha = rz / pAp;
            axpy(alpha, p, out.x);
            axpy(-alpha, Ap, r);
            rn = norm2(r);
            record(rn);
            rep.iterations = j + 1;
            if (rn < tol) {
                rep.termination = Termination::converged;
                break;
            }
            if (rn > divergence_factor * r0_norm) {
                rep.termination = Termination::diverged;
                break;
            }
            z = M.apply(r);
            const double rz_next = dot(r, z);
            const double beta = rz_next / rz;
            rz = rz_next;
            for (std::size_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
        }
    }
    rep.true_residual = norm2(residual(A, out.x, b));
    rep.wall_time = detail::seconds_since(t0);
    return out;
}

/**
 * Flexible preconditioned BiCGStab with shadow residual fixed to r_0.
 * Two preconditioner applications per iteration; converging already at
 * the intermediate residual s counts as one (half) iteration.
 */
inline SolveResult pbicgstab(const CsrMatrix &A, const DenseVector &b,
                             const Preconditioner &M, double tol,
                             int max_iters) {
    detail::check_system(A, b, tol, "pbicgstab");
    constexpr double breakdown_eps = 1e-300;
    const auto t0 = std::chrono::steady_clock::now();
    SolveResult out;
    out.x = zeros(A.nrows());
    ConvergenceReport &rep = out.report;

    const auto record = [&rep, t0](double value) {
        rep.residual_history.push_back(value);
        rep.time_history.push_back(detail::seconds_since(t0));
    };

    DenseVector r = b;
    double rn = norm2(r);
    const double r0_norm = rn;
    record(rn);
    if (rn < tol) {
        rep.termination = Termination::converged;
    } else {
        const DenseVector rbar0 = r;
        DenseVector p = r;
        double rho = dot(r, rbar0);
        for (int j = 0; j < max_iters; ++j) {
            if (std::abs(rho) < breakdown_eps) {
                rep.termination = Termination::breakdown;
                break;
            }
            const DenseVector p_tilde = M.apply(p);
            const DenseVector Ap_tilde = spmv(A, p_tilde);
            const double denom = dot(Ap_tilde, rbar0);
            if (std::abs(denom) < breakdown_eps) {
                rep.termination = Termination::breakdown;
                break;
            }
            const double alpha = rho / denom;
            DenseVector s = r;
            axpy(-alpha, Ap_tilde, s);
            const double sn = norm2(s);
            if (sn < tol) {
                axpy(alpha, p_tilde, out.x);
                record(sn);
                rep.iterations = j + 1;
                rep.termination = Termination::converged;
                break;
            }
            const DenseVector s_tilde = M.apply(s);
            const DenseVector As_tilde = spmv(A, s_tilde);
            const double AsAs = dot(As_tilde, As_tilde);
            if (AsAs < breakdown_eps) {
                rep.termination = Termination::breakdown;
                break;
            }
            const double omega = dot(As_tilde, s) / AsAs;
            axpy(alpha, p_tilde, out.x);
            axpy(omega, s_tilde, out.x);
            r = s;
            axpy(-omega, As_tilde, r);
            rn = norm2(r);
            record(rn);
            rep.iterations = j + 1;
            if (rn < tol) {
                rep.termination = Termination::converged;
                break;
            }
            if (rn > divergence_factor * r0_norm) {
                rep.termination = Termination::diverged;
                break;
            }
            if (std::abs(omega) < breakdown_eps) {
                rep.termination = Termination::breakdown;
                break;
            }
            const double rho_next = dot(r, rbar0);
            const double beta = (rho_next / rho) * (alpha / omega);
            rho = rho_next;
            for (std::size_t i = 0; i < p.size(); ++i)
                p[i] = r[i] + beta * (p[i] - omega * Ap_tilde[i]);
        }
    }
    rep.true_residual = norm2(residual(A, out.x, b));
    rep.wall_time = detail::seconds_since(t0);
    return out;
}

/// Plain CG: PCG with the identity preconditioner.
inline SolveResult cg(const CsrMatrix &A, const DenseVector &b, double tol,
                      int max_iters) {
    return pcg(A, b, Preconditioner::identity(), tol, max_iters);
}

/// Plain BiCGStab: the flexible driver with the identity preconditioner.
inline SolveResult bicgstab(const CsrMatrix &A, const DenseVector &b,
                            double tol, int max_iters) {
    return pbicgstab(A, b, Preconditioner::identity(), tol, max_iters);
}

} // namespace sparsh

#endif
