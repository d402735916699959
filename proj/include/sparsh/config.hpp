#ifndef SPARSH_CONFIG_HPP
#define SPARSH_CONFIG_HPP

/**
 * \file config.hpp
 * \brief Solver configuration shared by the library and the CLI.
 */

#include <stdexcept>
#include <string>

#include "sparsh/csr.hpp"
#include "sparsh/smoother.hpp"

namespace sparsh {

enum class CoarseningKind { node_hem, edge_hem };
enum class SolverKind { amg, cg, pcg, bicgstab, pbicgstab };
enum class CoarseSolverKind { direct, cg };

inline const char *to_string(CoarseningKind k) {
    return k == CoarseningKind::node_hem ? "node_hem" : "edge_hem";
}
inline const char *to_string(SolverKind k) {
    switch (k) {
    case SolverKind::amg: return "amg";
    case SolverKind::cg: return "cg";
    case SolverKind::pcg: return "pcg";
    case SolverKind::bicgstab: return "bicgstab";
    default: return "pbicgstab";
    }
}
inline const char *to_string(CoarseSolverKind k) {
    return k == CoarseSolverKind::direct ? "direct" : "cg";
}
inline const char *to_string(SmootherKind::Family f) {
    switch (f) {
    case SmootherKind::Family::weighted_jacobi: return "jacobi";
    case SmootherKind::Family::gauss_seidel_forward: return "gs_forward";
    case SmootherKind::Family::gauss_seidel_backward: return "gs_backward";
    default: return "gs_symmetric";
    }
}

inline CoarseningKind coarsening_from_string(const std::string &s) {
    if (s == "node_hem") return CoarseningKind::node_hem;
    if (s == "edge_hem") return CoarseningKind::edge_hem;
    throw std::invalid_argument("unknown coarsening '" + s +
                                "' (expected node_hem or edge_hem)");
}
inline SolverKind solver_from_string(const std::string &s) {
    if (s == "amg") return SolverKind::amg;
    if (s == "cg") return SolverKind::cg;
    if (s == "pcg") return SolverKind::pcg;
    if (s == "bicgstab") return SolverKind::bicgstab;
    if (s == "pbicgstab") return SolverKind::pbicgstab;
    throw std::invalid_argument(
        "unknown solver '" + s +
        "' (expected amg, cg, pcg, bicgstab or pbicgstab)");
}
inline CoarseSolverKind coarse_solver_from_string(const std::string &s) {
    if (s == "direct") return CoarseSolverKind::direct;
    if (s == "cg") return CoarseSolverKind::cg;
    throw std::invalid_argument("unknown coarse solver '" + s +
                                "' (expected direct or cg)");
}
inline SmootherKind smoother_from_string(const std::string &s,
                                         double omega = default_jacobi_omega) {
    if (s == "jacobi") return SmootherKind::weighted_jacobi(omega);
    if (s == "gs_forward") return SmootherKind::gauss_seidel_forward();
    if (s == "gs_backward") return SmootherKind::gauss_seidel_backward();
    if (s == "gs_symmetric") return SmootherKind::gauss_seidel_symmetric();
    throw std::invalid_argument(
        "unknown smoother '" + s +
        "' (expected jacobi, gs_forward, gs_backward or gs_symmetric)");
}

/// Knobs for setup and solve. Defaults: symmetric Gauss-Seidel with six
/// sweeps each way, node-based matching, coarse systems of at most 500
/// unknowns solved directly, residual target 1e-8.
struct SolverConfig {
    CoarseningKind coarsening = CoarseningKind::node_hem;
    SmootherKind smoother = SmootherKind::gauss_seidel_symmetric();
    int pre_sweeps = 6;
    int post_sweeps = 6;
    index_t coarse_target = 500;
    int max_levels = 10;
    double tol = 1e-8;
    int max_iters = 1000;
    SolverKind solver = SolverKind::amg;
    CoarseSolverKind coarse_solver = CoarseSolverKind::direct;

    void validate() const {
        if (!(tol > 0.0))
            throw std::invalid_argument("SolverConfig: tol must be > 0");
        if (pre_sweeps < 0 || post_sweeps < 0)
            throw std::invalid_argument("SolverConfig: sweep counts must be >= 0");
        if (coarse_target < 1)
            throw std::invalid_argument("SolverConfig: coarse_target must be >= 1");
        if (max_levels < 1)
            throw std::invalid_argument("SolverConfig: max_levels must be >= 1");
        if (max_iters < 0)
            throw std::invalid_argument("SolverConfig: max_iters must be >= 0");
    }
};

} // namespace sparsh

#endif
