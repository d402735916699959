#ifndef SPARSH_COARSE_SOLVER_HPP
#define SPARSH_COARSE_SOLVER_HPP

/**
 * \file coarse_solver.hpp
 * \brief Factor-once direct solver for the coarsest-level system.
 *
 * Small systems get an in-house dense LU with partial pivoting; past
 * `dense_lu_max_dim` unknowns a sparse LU (Eigen) takes over. Both paths
 * split symbolic from numeric work so refactoring a matrix with the same
 * sparsity pattern skips the analysis.
 */

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "sparsh/csr.hpp"

namespace sparsh {

/// Largest coarse dimension still handled by the dense LU path.
inline constexpr index_t dense_lu_max_dim = 2000;

/**
 * LU factorization of the coarsest matrix with reuse counters.
 *
 * The constructor performs one symbolic and one numeric factorization.
 * refactor() with an identical sparsity pattern redoes only the numeric
 * part; a changed pattern triggers a fresh symbolic analysis. solve() is
 * safe to call concurrently with distinct right-hand sides.
 */
class CoarseFactorization {
public:
    explicit CoarseFactorization(const CsrMatrix &A) { init(A); }

    CoarseFactorization(const CoarseFactorization &) = delete;
    CoarseFactorization &operator=(const CoarseFactorization &) = delete;

    /// Refreshes the numeric factors for new values of A.
    void refactor(const CsrMatrix &A) {
        if (A.nrows() == n_ && A.ncols() == n_ && A.row_ptr() == pattern_ptr_ &&
            A.col_idx() == pattern_idx_) {
            ++numeric_count_;
            if (dense_mode_)
                factor_dense(A);
            else
                factor_sparse_numeric(A);
        } else {
            init(A);
        }
    }

    /// Forward/backward substitution; factors are left untouched.
    DenseVector solve(const DenseVector &b) const {
        if (b.size() != static_cast<std::size_t>(n_))
            throw std::invalid_argument(
                "CoarseFactorization::solve: rhs length " +
                std::to_string(b.size()) + " does not match dimension " +
                std::to_string(n_));
        solve_count_.fetch_add(1, std::memory_order_relaxed);
        return dense_mode_ ? solve_dense(b) : solve_sparse(b);
    }

    index_t dim() const { return n_; }
    bool uses_dense_lu() const { return dense_mode_; }
    long symbolic_count() const { return symbolic_count_; }
    long numeric_count() const { return numeric_count_; }
    long solve_count() const { return solve_count_.load(std::memory_order_relaxed); }

private:
    using EigenSparse = Eigen::SparseMatrix<double>;

    void init(const CsrMatrix &A) {
        if (!A.is_square())
            throw std::invalid_argument(
                "CoarseFactorization: matrix must be square");
        n_ = A.nrows();
        pattern_ptr_ = A.row_ptr();
        pattern_idx_ = A.col_idx();
        dense_mode_ = n_ <= dense_lu_max_dim;
        ++symbolic_count_;
        ++numeric_count_;
        if (dense_mode_) {
            lu_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_),
                       0.0);
            perm_.resize(static_cast<std::size_t>(n_));
            factor_dense(A);
        } else {
            eigen_lu_ = std::make_unique<Eigen::SparseLU<EigenSparse>>();
            EigenSparse M = to_eigen(A);
            eigen_lu_->analyzePattern(M);
            numeric_from(M);
        }
    }

    static EigenSparse to_eigen(const CsrMatrix &A) {
        std::vector<Eigen::Triplet<double>> trips;
        trips.reserve(static_cast<std::size_t>(A.nnz()));
        for (index_t i = 0; i < A.nrows(); ++i) {
            const auto cols = A.row_cols(i);
            const auto vals = A.row_values(i);
            for (std::size_t k = 0; k < cols.size(); ++k)
                trips.emplace_back(i, cols[k], vals[k]);
        }
        EigenSparse M(A.nrows(), A.ncols());
        M.setFromTriplets(trips.begin(), trips.end());
        M.makeCompressed();
        return M;
    }

    void factor_sparse_numeric(const CsrMatrix &A) { numeric_from(to_eigen(A)); }

    void numeric_from(const EigenSparse &M) {
        eigen_lu_->factorize(M);
        if (eigen_lu_->info() != Eigen::Success)
            throw std::runtime_error("CoarseFactorization: sparse LU failed: " +
                                     eigen_lu_->lastErrorMessage());
    }

    void factor_dense(const CsrMatrix &A) {
        const auto n = static_cast<std::size_t>(n_);
        std::fill(lu_.begin(), lu_.end(), 0.0);
        double max_abs = 0.0;
        for (index_t i = 0; i < n_; ++i) {
            const auto cols = A.row_cols(i);
            const auto vals = A.row_values(i);
            for (std::size_t k = 0; k < cols.size(); ++k) {
                lu_[static_cast<std::size_t>(i) * n +
                    static_cast<std::size_t>(cols[k])] = vals[k];
                max_abs = std::max(max_abs, std::abs(vals[k]));
            }
        }
        std::iota(perm_.begin(), perm_.end(), index_t{0});
        const double tol = 1e-14 * max_abs;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            for (std::size_t i = k + 1; i < n; ++i)
                if (std::abs(lu_[i * n + k]) > std::abs(lu_[p * n + k])) p = i;
            const double pivot = lu_[p * n + k];
            if (pivot == 0.0 || std::abs(pivot) < tol)
                throw std::runtime_error(
                    "CoarseFactorization: singular pivot in row " +
                    std::to_string(k));
            if (p != k) {
                std::swap_ranges(lu_.begin() + static_cast<std::ptrdiff_t>(p * n),
                                 lu_.begin() + static_cast<std::ptrdiff_t>((p + 1) * n),
                                 lu_.begin() + static_cast<std::ptrdiff_t>(k * n));
                std::swap(perm_[p], perm_[k]);
            }
            for (std::size_t i = k + 1; i < n; ++i) {
                const double m = lu_[i * n + k] / pivot;
                lu_[i * n + k] = m;
                for (std::size_t j = k + 1; j < n; ++j)
                    lu_[i * n + j] -= m * lu_[k * n + j];
            }
        }
    }

    DenseVector solve_dense(const DenseVector &b) const {
        const auto n = static_cast<std::size_t>(n_);
        DenseVector y(n);
        for (std::size_t i = 0; i < n; ++i) {
            double s = b[static_cast<std::size_t>(perm_[i])];
            for (std::size_t j = 0; j < i; ++j) s -= lu_[i * n + j] * y[j];
            y[i] = s;
        }
        for (std::size_t i = n; i-- > 0;) {
            double s = y[i];
            for (std::size_t j = i + 1; j < n; ++j) s -= lu_[i * n + j] * y[j];
            y[i] = s / lu_[i * n + i];
        }
        return y;
    }

    DenseVector solve_sparse(const DenseVector &b) const {
        Eigen::Map<const Eigen::VectorXd> bmap(b.data(),
                                               static_cast<Eigen::Index>(b.size()));
        const Eigen::VectorXd x = eigen_lu_->solve(bmap);
        return DenseVector(x.data(), x.data() + x.size());
    }

    index_t n_ = 0;
    bool dense_mode_ = true;
    std::vector<index_t> pattern_ptr_;
    std::vector<index_t> pattern_idx_;
    std::vector<double> lu_;
    std::vector<index_t> perm_;
    std::unique_ptr<Eigen::SparseLU<EigenSparse>> eigen_lu_;
    long symbolic_count_ = 0;
    long numeric_count_ = 0;
    mutable std::atomic<long> solve_count_{0};
};

} // namespace sparsh

#endif
