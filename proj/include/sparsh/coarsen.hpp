#ifndef SPARSH_COARSEN_HPP
#define SPARSH_COARSEN_HPP

/**
 * \file coarsen.hpp
 * \brief Pairwise aggregation by heavy-edge matching, node-based or edge-based.
 */

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "sparsh/aggregation.hpp"
#include "sparsh/csr.hpp"

namespace sparsh {

/**
 * Node-based heavy-edge matching. Unassigned nodes are visited in
 * ascending index order; each pairs with its unassigned neighbor of
 * largest |a_ij| (ties fall to the lowest column index), or becomes a
 * singleton when no candidate is left. Coarse numbers follow discovery
 * order.
 *
 * With \p alternate_ends the visit order instead alternates between the
 * lowest and highest unassigned index.
 */
inline Aggregation coarsen_node_hem(const CsrMatrix &A, bool alternate_ends = false) {
    if (!A.is_square())
        throw std::invalid_argument("coarsen_node_hem: matrix must be square");
    const index_t n = A.nrows();
    std::vector<index_t> fine_to_coarse(static_cast<std::size_t>(n), index_t{-1});
    index_t next_coarse = 0;

    auto visit = [&](index_t i) {
        if (fine_to_coarse[static_cast<std::size_t>(i)] >= 0) return;
        const auto cols = A.row_cols(i);
        const auto vals = A.row_values(i);
        index_t best = -1;
        double best_weight = 0.0;
        for (std::size_t k = 0; k < cols.size(); ++k) {
            const index_t j = cols[k];
            if (j == i || fine_to_coarse[static_cast<std::size_t>(j)] >= 0) continue;
            const double w = std::abs(vals[k]);
            // Strict > keeps the lowest column index on equal weight.
            if (w != 0.0 && (best < 0 || w > best_weight)) {
                best = j;
                best_weight = w;
            }
        }
        fine_to_coarse[static_cast<std::size_t>(i)] = next_coarse;
        if (best >= 0) fine_to_coarse[static_cast<std::size_t>(best)] = next_coarse;
        ++next_coarse;
    };

    if (!alternate_ends) {
        for (index_t i = 0; i < n; ++i) visit(i);
    } else {
        index_t lo = 0, hi = n - 1;
        bool take_lo = true;
        while (true) {
            while (lo <= hi && fine_to_coarse[static_cast<std::size_t>(lo)] >= 0) ++lo;
            while (hi >= lo && fine_to_coarse[static_cast<std::size_t>(hi)] >= 0) --hi;
            if (lo > hi) break;
            visit(take_lo ? lo : hi);
            take_lo = !take_lo;
        }
    }
    return Aggregation{std::move(fine_to_coarse), next_coarse};
}

/// Undirected graph edge with the matching weight |a_ij|.
struct Edge {
    double weight;
    index_t i;
    index_t j;
};

/**
 * Collects each undirected off-diagonal edge once (i < j, weight
 * max(|a_ij|, |a_ji|), stored zeros dropped) and sorts the result
 * lexicographically descending by (weight, i, j).
 */
inline std::vector<Edge> build_edge_list(const CsrMatrix &A) {
    if (!A.is_square())
        throw std::invalid_argument("build_edge_list: matrix must be square");
    std::vector<Edge> edges;
    for (index_t i = 0; i < A.nrows(); ++i) {
        const auto cols = A.row_cols(i);
        const auto vals = A.row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            const index_t j = cols[k];
            const double w = std::abs(vals[k]);
            if (j == i || w == 0.0) continue;
            edges.push_back({w, std::min(i, j), std::max(i, j)});
        }
    }
    // Deduplicate the two stored directions of an edge, keeping the
    // heavier one.
    std::sort(edges.begin(), edges.end(), [](const Edge &a, const Edge &b) {
        return std::tie(a.i, a.j, b.weight) < std::tie(b.i, b.j, a.weight);
    });
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const Edge &a, const Edge &b) {
                                return a.i == b.i && a.j == b.j;
                            }),
                edges.end());
    std::sort(edges.begin(), edges.end(), [](const Edge &a, const Edge &b) {
        return std::tie(a.weight, a.i, a.j) > std::tie(b.weight, b.i, b.j);
    });
    return edges;
}

/**
 * Edge-based heavy-edge matching: walk the sorted edge list, pairing
 * the endpoints of each edge whose ends are both still unassigned;
 * leftovers become singletons in ascending index order.
 */
inline Aggregation coarsen_edge_hem(const CsrMatrix &A) {
    const auto edges = build_edge_list(A);
    const index_t n = A.nrows();
    std::vector<index_t> fine_to_coarse(static_cast<std::size_t>(n), index_t{-1});
    index_t next_coarse = 0;
    for (const Edge &e : edges) {
        if (fine_to_coarse[static_cast<std::size_t>(e.i)] < 0 &&
            fine_to_coarse[static_cast<std::size_t>(e.j)] < 0) {
            fine_to_coarse[static_cast<std::size_t>(e.i)] = next_coarse;
            fine_to_coarse[static_cast<std::size_t>(e.j)] = next_coarse;
            ++next_coarse;
        }
    }
    for (index_t i = 0; i < n; ++i)
        if (fine_to_coarse[static_cast<std::size_t>(i)] < 0)
            fine_to_coarse[static_cast<std::size_t>(i)] = next_coarse++;
    return Aggregation{std::move(fine_to_coarse), next_coarse};
}

} // namespace sparsh

#endif
