#ifndef SPARSH_HIERARCHY_HPP
#define SPARSH_HIERARCHY_HPP

/**
 * \file hierarchy.hpp
 * \brief Setup phase: the multilevel structure {A_0..A_{L-1}, P_0..P_{L-2}}.
 */

#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sparsh/aggregation.hpp"
#include "sparsh/coarse_solver.hpp"
#include "sparsh/coarsen.hpp"
#include "sparsh/config.hpp"
#include "sparsh/csr.hpp"

namespace sparsh {

/// One level of the hierarchy. The coarsest level has no P or aggregation.
struct Level {
    CsrMatrix A;
    std::optional<CsrMatrix> P_to_coarser;
    std::optional<Aggregation> agg;
};

/// Per-level sizes plus the usual complexity measures.
struct HierarchyStats {
    struct LevelStats {
        index_t size;
        index_t nnz;
    };
    std::vector<LevelStats> levels;
    double operator_complexity = 1.0; // sum_i nnz(A_i) / nnz(A_0)
    double grid_complexity = 1.0;     // sum_i n_i / n_0
    bool coarsening_stalled = false;
};

/**
 * Immutable multilevel hierarchy. Construction coarsens repeatedly
 * (configured HEM variant + Galerkin product) until the level size drops
 * to cfg.coarse_target, cfg.max_levels is reached, or coarsening stalls,
 * then factorizes the coarsest matrix unless cfg.coarse_solver defers it
 * to an iterative solve.
 */
class Hierarchy {
public:
    Hierarchy(CsrMatrix A, const SolverConfig &cfg) {
        if (!A.is_square())
            throw std::invalid_argument("Hierarchy: matrix must be square");
        cfg.validate();
        coarse_solver_ = cfg.coarse_solver;
        levels_.push_back(Level{std::move(A), std::nullopt, std::nullopt});
        while (levels_.back().A.nrows() > cfg.coarse_target &&
               static_cast<int>(levels_.size()) < cfg.max_levels) {
            const CsrMatrix &A_fine = levels_.back().A;
            Aggregation agg = cfg.coarsening == CoarseningKind::node_hem
                                  ? coarsen_node_hem(A_fine)
                                  : coarsen_edge_hem(A_fine);
            if (agg.n_coarse == A_fine.nrows()) {
                // Only possible when no off-diagonal entries are left to
                // match; factor what exists rather than looping forever.
                stalled_ = true;
                break;
            }
            CsrMatrix A_coarse = galerkin_product(A_fine, agg);
            levels_.back().P_to_coarser = prolongation_from_aggregation(agg);
            levels_.back().agg = std::move(agg);
            levels_.push_back(Level{std::move(A_coarse), std::nullopt, std::nullopt});
        }
        if (coarse_solver_ == CoarseSolverKind::direct)
            factorization_ = std::make_unique<CoarseFactorization>(levels_.back().A);
    }

    std::size_t nlevels() const { return levels_.size(); }
    const std::vector<Level> &levels() const { return levels_; }
    const Level &level(std::size_t k) const { return levels_.at(k); }
    const CsrMatrix &coarsest() const { return levels_.back().A; }
    bool coarsening_stalled() const { return stalled_; }
    CoarseSolverKind coarse_solver_kind() const { return coarse_solver_; }

    /// Null when the coarse solver is iterative.
    const CoarseFactorization *factorization() const { return factorization_.get(); }

private:
    std::vector<Level> levels_;
    std::unique_ptr<CoarseFactorization> factorization_;
    CoarseSolverKind coarse_solver_ = CoarseSolverKind::direct;
    bool stalled_ = false;
};

inline Hierarchy setup(CsrMatrix A, const SolverConfig &cfg) {
    return Hierarchy(std::move(A), cfg);
}

inline HierarchyStats stats(const Hierarchy &h) {
    HierarchyStats s;
    s.coarsening_stalled = h.coarsening_stalled();
    double nnz_sum = 0.0, size_sum = 0.0;
    for (const Level &lvl : h.levels()) {
        s.levels.push_back({lvl.A.nrows(), lvl.A.nnz()});
        nnz_sum += static_cast<double>(lvl.A.nnz());
        size_sum += static_cast<double>(lvl.A.nrows());
    }
    const auto nnz0 = static_cast<double>(h.level(0).A.nnz());
    const auto n0 = static_cast<double>(h.level(0).A.nrows());
    s.operator_complexity = nnz0 > 0.0 ? nnz_sum / nnz0 : 1.0;
    s.grid_complexity = n0 > 0.0 ? size_sum / n0 : 1.0;
    return s;
}

} // namespace sparsh

#endif
