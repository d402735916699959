#ifndef SPARSH_AGGREGATION_HPP
#define SPARSH_AGGREGATION_HPP

/**
 * \file aggregation.hpp
 * \brief Fine-to-coarse node maps, the unit prolongation they induce, and
 *        the Galerkin coarse operator specialized to that prolongation.
 */

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsh/csr.hpp"

namespace sparsh {

/**
 * Surjection of fine nodes onto coarse nodes produced by a pairwise
 * coarsening pass. Every coarse node has one or two fine preimages, so
 * ceil(n/2) <= n_coarse <= n.
 */
struct Aggregation {
    std::vector<index_t> fine_to_coarse;
    index_t n_coarse = 0;

    index_t n_fine() const {
        return static_cast<index_t>(fine_to_coarse.size());
    }

    /// Identity aggregation: every node its own aggregate.
    static Aggregation identity(index_t n) {
        Aggregation agg;
        agg.fine_to_coarse.resize(static_cast<std::size_t>(n));
        std::iota(agg.fine_to_coarse.begin(), agg.fine_to_coarse.end(), 0);
        agg.n_coarse = n;
        return agg;
    }

    /// Throws unless the map is a surjection with aggregates of size 1 or 2.
    void validate() const {
        std::vector<index_t> count(static_cast<std::size_t>(n_coarse), 0);
        for (index_t c : fine_to_coarse) {
            if (c < 0 || c >= n_coarse)
                throw std::invalid_argument(
                    "Aggregation: coarse index " + std::to_string(c) +
                    " outside [0, " + std::to_string(n_coarse) + ")");
            ++count[static_cast<std::size_t>(c)];
        }
        for (index_t c = 0; c < n_coarse; ++c) {
            const index_t sz = count[static_cast<std::size_t>(c)];
            if (sz < 1 || sz > 2)
                throw std::invalid_argument(
                    "Aggregation: coarse node " + std::to_string(c) + " has " +
                    std::to_string(sz) + " fine nodes");
        }
    }

    friend bool operator==(const Aggregation &, const Aggregation &) = default;
};

/// Weighting mode for prolongation entries. Only the unit weighting is
/// implemented; the enum is the hook for value-carrying variants.
enum class PWeighting { unit };

/// P is n x n_coarse with a single entry per row: P[i, fine_to_coarse[i]] = 1.
inline CsrMatrix prolongation_from_aggregation(const Aggregation &agg,
                                               PWeighting weighting = PWeighting::unit) {
    agg.validate();
    if (weighting != PWeighting::unit)
        throw std::invalid_argument("prolongation: unsupported weighting");
    const index_t n = agg.n_fine();
    std::vector<index_t> ptr(static_cast<std::size_t>(n) + 1);
    std::vector<index_t> col(static_cast<std::size_t>(n));
    std::vector<double> val(static_cast<std::size_t>(n), 1.0);
    for (index_t i = 0; i <= n; ++i) ptr[static_cast<std::size_t>(i)] = i;
    for (index_t i = 0; i < n; ++i)
        col[static_cast<std::size_t>(i)] = agg.fine_to_coarse[static_cast<std::size_t>(i)];
    return CsrMatrix(n, agg.n_coarse, std::move(ptr), std::move(col),
                     std::move(val));
}

/**
 * Coarse operator A_c = P^T A P for the unit prolongation induced by agg:
 * (A_c)[k, l] = sum of A[i, j] over i in agg^-1(k), j in agg^-1(l).
 *
 * Each P row has exactly one unit entry, so the triple product reduces to
 * accumulating every A entry into the coarse coordinate of its row and
 * column aggregate; no general sparse-sparse multiply is involved.
 */
inline CsrMatrix galerkin_product(const CsrMatrix &A, const Aggregation &agg) {
    if (!A.is_square())
        throw std::invalid_argument("galerkin_product: matrix must be square");
    if (agg.n_fine() != A.nrows())
        throw std::invalid_argument(
            "galerkin_product: aggregation covers " +
            std::to_string(agg.n_fine()) + " nodes, matrix has " +
            std::to_string(A.nrows()));
    agg.validate();

    const index_t nc = agg.n_coarse;
    // Fine rows of each aggregate, in ascending fine order.
    std::vector<index_t> member_ptr(static_cast<std::size_t>(nc) + 1, 0);
    for (index_t c : agg.fine_to_coarse)
        ++member_ptr[static_cast<std::size_t>(c) + 1];
    for (index_t c = 0; c < nc; ++c)
        member_ptr[static_cast<std::size_t>(c) + 1] +=
            member_ptr[static_cast<std::size_t>(c)];
    std::vector<index_t> members(static_cast<std::size_t>(A.nrows()));
    {
        std::vector<index_t> next(member_ptr.begin(), member_ptr.end() - 1);
        for (index_t i = 0; i < A.nrows(); ++i)
            members[static_cast<std::size_t>(
                next[static_cast<std::size_t>(agg.fine_to_coarse[static_cast<std::size_t>(i)])]++)] = i;
    }

    std::vector<index_t> ptr(static_cast<std::size_t>(nc) + 1, 0);
    std::vector<index_t> col;
    std::vector<double> val;
    // Sparse accumulator over coarse columns, reused across coarse rows.
    std::vector<double> acc(static_cast<std::size_t>(nc), 0.0);
    std::vector<char> touched(static_cast<std::size_t>(nc), 0);
    std::vector<index_t> cols_here;
    for (index_t k = 0; k < nc; ++k) {
        cols_here.clear();
        for (index_t m = member_ptr[static_cast<std::size_t>(k)];
             m < member_ptr[static_cast<std::size_t>(k) + 1]; ++m) {
            const index_t i = members[static_cast<std::size_t>(m)];
            const auto cols = A.row_cols(i);
            const auto vals = A.row_values(i);
            for (std::size_t e = 0; e < cols.size(); ++e) {
                const index_t l =
                    agg.fine_to_coarse[static_cast<std::size_t>(cols[e])];
                if (!touched[static_cast<std::size_t>(l)]) {
                    touched[static_cast<std::size_t>(l)] = 1;
                    cols_here.push_back(l);
                }
                acc[static_cast<std::size_t>(l)] += vals[e];
            }
        }
        std::sort(cols_here.begin(), cols_here.end());
        for (index_t l : cols_here) {
            col.push_back(l);
            val.push_back(acc[static_cast<std::size_t>(l)]);
            acc[static_cast<std::size_t>(l)] = 0.0;
            touched[static_cast<std::size_t>(l)] = 0;
        }
        ptr[static_cast<std::size_t>(k) + 1] = static_cast<index_t>(col.size());
    }
    return CsrMatrix(nc, nc, std::move(ptr), std::move(col), std::move(val));
}

} // namespace sparsh

#endif
