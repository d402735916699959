#ifndef SPARSH_SMOOTHER_HPP
#define SPARSH_SMOOTHER_HPP

/**
 * \file smoother.hpp
 * \brief Stationary smoothers: weighted Jacobi and Gauss-Seidel sweeps.
 */

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsh/csr.hpp"

namespace sparsh {

/// Standard damping for Poisson-like spectra.
inline constexpr double default_jacobi_omega = 2.0 / 3.0;

/// Smoother selector. The weight applies to Jacobi only.
struct SmootherKind {
    enum class Family {
        weighted_jacobi,
        gauss_seidel_forward,
        gauss_seidel_backward,
        gauss_seidel_symmetric,
    };

    Family family = Family::gauss_seidel_symmetric;
    double omega = default_jacobi_omega;

    static SmootherKind weighted_jacobi(double omega = default_jacobi_omega) {
        if (!(omega > 0.0) || omega > 1.0)
            throw std::invalid_argument("SmootherKind: Jacobi weight " +
                                        std::to_string(omega) +
                                        " outside (0, 1]");
        return {Family::weighted_jacobi, omega};
    }
    static SmootherKind gauss_seidel_forward() {
        return {Family::gauss_seidel_forward, default_jacobi_omega};
    }
    static SmootherKind gauss_seidel_backward() {
        return {Family::gauss_seidel_backward, default_jacobi_omega};
    }
    static SmootherKind gauss_seidel_symmetric() {
        return {Family::gauss_seidel_symmetric, default_jacobi_omega};
    }
};

namespace detail {

/// Positions of the diagonal entries inside the CSR value array.
/// Throws when a diagonal entry is structurally missing or stored as zero.
inline std::vector<index_t> diagonal_positions(const CsrMatrix &A) {
    std::vector<index_t> pos(static_cast<std::size_t>(A.nrows()));
    for (index_t i = 0; i < A.nrows(); ++i) {
        const auto cols = A.row_cols(i);
        const auto vals = A.row_values(i);
        const auto it = std::lower_bound(cols.begin(), cols.end(), i);
        if (it == cols.end() || *it != i ||
            vals[static_cast<std::size_t>(it - cols.begin())] == 0.0)
            throw std::invalid_argument("smooth: zero diagonal entry in row " +
                                        std::to_string(i));
        pos[static_cast<std::size_t>(i)] =
            A.row_ptr()[static_cast<std::size_t>(i)] +
            static_cast<index_t>(it - cols.begin());
    }
    return pos;
}

inline void gs_row_solve(const CsrMatrix &A, DenseVector &x,
                         const DenseVector &f, index_t i) {
    const auto cols = A.row_cols(i);
    const auto vals = A.row_values(i);
    double sum = f[static_cast<std::size_t>(i)];
    double diag = 0.0;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        if (cols[k] == i)
            diag = vals[k];
        else
            sum -= vals[k] * x[static_cast<std::size_t>(cols[k])];
    }
    x[static_cast<std::size_t>(i)] = sum / diag;
}

} // namespace detail

/**
 * Applies `sweeps` smoothing passes to x in place. Jacobi updates
 * x <- x + omega D^-1 (f - A x) from the previous iterate; Gauss-Seidel
 * solves rows in place, forward and/or backward; the symmetric variant
 * counts a forward plus a backward pass as one sweep.
 */
inline void smooth_in_place(const SmootherKind &kind, const CsrMatrix &A,
                            DenseVector &x, const DenseVector &f, int sweeps) {
    if (!A.is_square())
        throw std::invalid_argument("smooth: matrix must be square");
    if (x.size() != static_cast<std::size_t>(A.nrows()) ||
        f.size() != static_cast<std::size_t>(A.nrows()))
        throw std::invalid_argument("smooth: vector length does not match matrix");
    if (sweeps < 0)
        throw std::invalid_argument("smooth: negative sweep count");
    if (sweeps == 0) return;

    const auto diag_pos = detail::diagonal_positions(A);
    const index_t n = A.nrows();

    if (kind.family == SmootherKind::Family::weighted_jacobi) {
        DenseVector Ax(x.size());
        for (int s = 0; s < sweeps; ++s) {
            spmv(A, x, Ax);
            for (index_t i = 0; i < n; ++i) {
                const double aii = A.values()[static_cast<std::size_t>(
                    diag_pos[static_cast<std::size_t>(i)])];
                x[static_cast<std::size_t>(i)] +=
                    kind.omega *
                    (f[static_cast<std::size_t>(i)] - Ax[static_cast<std::size_t>(i)]) /
                    aii;
            }
        }
        return;
    }

    const bool forward = kind.family != SmootherKind::Family::gauss_seidel_backward;
    const bool backward = kind.family != SmootherKind::Family::gauss_seidel_forward;
    for (int s = 0; s < sweeps; ++s) {
        if (forward)
            for (index_t i = 0; i < n; ++i) detail::gs_row_solve(A, x, f, i);
        if (backward)
            for (index_t i = n - 1; i >= 0; --i) detail::gs_row_solve(A, x, f, i);
    }
}

/// Value-returning variant of smooth_in_place.
inline DenseVector smooth(const SmootherKind &kind, const CsrMatrix &A,
                          DenseVector x, const DenseVector &f, int sweeps) {
    smooth_in_place(kind, A, x, f, sweeps);
    return x;
}

} // namespace sparsh

#endif
