#ifndef SPARSH_CONVERGENCE_HPP
#define SPARSH_CONVERGENCE_HPP

/**
 * \file convergence.hpp
 * \brief Per-solve convergence bookkeeping shared by AMG and Krylov drivers.
 */

#include <vector>

#include "sparsh/csr.hpp"

namespace sparsh {

enum class Termination { converged, max_iters, breakdown, diverged };

inline const char *to_string(Termination t) {
    switch (t) {
    case Termination::converged: return "converged";
    case Termination::max_iters: return "max_iters";
    case Termination::breakdown: return "breakdown";
    default: return "diverged";
    }
}

/**
 * Outcome of one solve. residual_history[0] is the initial residual norm
 * and one entry follows per iteration, so its length is iterations + 1;
 * time_history holds the elapsed seconds at the same points. The
 * stopping tests use the recurrence residual; true_residual is
 * ||b - A x|| recomputed at exit.
 */
struct ConvergenceReport {
    std::vector<double> residual_history;
    std::vector<double> time_history;
    int iterations = 0;
    Termination termination = Termination::max_iters;
    double wall_time = 0.0;
    double true_residual = 0.0;

    bool converged() const { return termination == Termination::converged; }
};

/// Solution vector paired with its report.
struct SolveResult {
    DenseVector x;
    ConvergenceReport report;
};

} // namespace sparsh

#endif
