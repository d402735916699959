#ifndef SPARSH_CSR_HPP
#define SPARSH_CSR_HPP

/**
 * \file csr.hpp
 * \brief Compressed sparse row storage and the basic sparse/dense kernels.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sparsh/parallel.hpp"

namespace sparsh {

using index_t = std::int32_t;

/// Dense real vector. Length must match the operator dimension it is used with.
using DenseVector = std::vector<double>;

struct Triplet {
    index_t row;
    index_t col;
    double value;
};

/**
 * Square or rectangular real matrix in compressed sparse row form.
 *
 * Invariants (checked on construction):
 *  - row_ptr has nrows+1 entries, is non-decreasing, row_ptr[0] == 0 and
 *    row_ptr[nrows] == nnz;
 *  - column indices are strictly increasing within each row and < ncols.
 *
 * Instances are immutable after construction and safe to share across
 * threads.
 */
class CsrMatrix {
public:
    CsrMatrix() = default;

    CsrMatrix(index_t nrows, index_t ncols, std::vector<index_t> row_ptr,
              std::vector<index_t> col_idx, std::vector<double> values)
        : nrows_(nrows), ncols_(ncols), row_ptr_(std::move(row_ptr)),
          col_idx_(std::move(col_idx)), values_(std::move(values)) {
        validate();
    }

    /// Builds a matrix from unordered (row, col, value) entries.
    /// Duplicate coordinates are summed; rows come out sorted.
    static CsrMatrix from_triplets(index_t nrows, index_t ncols,
                                   std::vector<Triplet> entries) {
        for (const Triplet &t : entries) {
            if (t.row < 0 || t.row >= nrows || t.col < 0 || t.col >= ncols)
                throw std::invalid_argument(
                    "from_triplets: entry (" + std::to_string(t.row) + ", " +
                    std::to_string(t.col) + ") outside " +
                    std::to_string(nrows) + "x" + std::to_string(ncols));
        }
        std::sort(entries.begin(), entries.end(),
                  [](const Triplet &a, const Triplet &b) {
                      return a.row != b.row ? a.row < b.row : a.col < b.col;
                  });
        std::vector<index_t> ptr(static_cast<std::size_t>(nrows) + 1, 0);
        std::vector<index_t> col;
        std::vector<double> val;
        col.reserve(entries.size());
        val.reserve(entries.size());
        std::size_t k = 0;
        while (k < entries.size()) {
            const index_t r = entries[k].row;
            const index_t c = entries[k].col;
            double sum = 0.0;
            while (k < entries.size() && entries[k].row == r &&
                   entries[k].col == c) {
                sum += entries[k].value;
                ++k;
            }
            col.push_back(c);
            val.push_back(sum);
            ptr[static_cast<std::size_t>(r) + 1] =
                static_cast<index_t>(col.size());
        }
        for (index_t r = 0; r < nrows; ++r)
            ptr[static_cast<std::size_t>(r) + 1] = std::max(
                ptr[static_cast<std::size_t>(r) + 1], ptr[static_cast<std::size_t>(r)]);
        return CsrMatrix(nrows, ncols, std::move(ptr), std::move(col),
                         std::move(val));
    }

    static CsrMatrix identity(index_t n) {
        std::vector<index_t> ptr(static_cast<std::size_t>(n) + 1);
        std::vector<index_t> col(static_cast<std::size_t>(n));
        std::vector<double> val(static_cast<std::size_t>(n), 1.0);
        for (index_t i = 0; i <= n; ++i) ptr[static_cast<std::size_t>(i)] = i;
        for (index_t i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = i;
        return CsrMatrix(n, n, std::move(ptr), std::move(col), std::move(val));
    }

    index_t nrows() const { return nrows_; }
    index_t ncols() const { return ncols_; }
    index_t nnz() const { return static_cast<index_t>(col_idx_.size()); }
    bool is_square() const { return nrows_ == ncols_; }

    const std::vector<index_t> &row_ptr() const { return row_ptr_; }
    const std::vector<index_t> &col_idx() const { return col_idx_; }
    const std::vector<double> &values() const { return values_; }

    std::span<const index_t> row_cols(index_t i) const {
        return {col_idx_.data() + row_ptr_[static_cast<std::size_t>(i)],
                col_idx_.data() + row_ptr_[static_cast<std::size_t>(i) + 1]};
    }
    std::span<const double> row_values(index_t i) const {
        return {values_.data() + row_ptr_[static_cast<std::size_t>(i)],
                values_.data() + row_ptr_[static_cast<std::size_t>(i) + 1]};
    }

    /// Value at (i, j); 0 when the coordinate is not stored.
    double coeff(index_t i, index_t j) const {
        const auto cols = row_cols(i);
        const auto it = std::lower_bound(cols.begin(), cols.end(), j);
        if (it == cols.end() || *it != j) return 0.0;
        return row_values(i)[static_cast<std::size_t>(it - cols.begin())];
    }

    friend bool operator==(const CsrMatrix &, const CsrMatrix &) = default;

private:
    void validate() const {
        if (nrows_ < 0 || ncols_ < 0)
            throw std::invalid_argument("CsrMatrix: negative dimension");
        if (row_ptr_.size() != static_cast<std::size_t>(nrows_) + 1)
            throw std::invalid_argument("CsrMatrix: row_ptr length mismatch");
        if (row_ptr_.front() != 0)
            throw std::invalid_argument("CsrMatrix: row_ptr[0] != 0");
        if (row_ptr_.back() != static_cast<index_t>(col_idx_.size()))
            throw std::invalid_argument("CsrMatrix: row_ptr[nrows] != nnz");
        if (col_idx_.size() != values_.size())
            throw std::invalid_argument("CsrMatrix: col/value length mismatch");
        for (index_t i = 0; i < nrows_; ++i) {
            if (row_ptr_[static_cast<std::size_t>(i) + 1] <
                row_ptr_[static_cast<std::size_t>(i)])
                throw std::invalid_argument("CsrMatrix: row_ptr not monotone");
            const auto cols = row_cols(i);
            for (std::size_t k = 0; k < cols.size(); ++k) {
                if (cols[k] < 0 || cols[k] >= ncols_)
                    throw std::invalid_argument(
                        "CsrMatrix: column index out of range in row " +
                        std::to_string(i));
                if (k > 0 && cols[k] <= cols[k - 1])
                    throw std::invalid_argument(
                        "CsrMatrix: columns not strictly increasing in row " +
                        std::to_string(i));
            }
        }
    }

    index_t nrows_ = 0;
    index_t ncols_ = 0;
    std::vector<index_t> row_ptr_{0};
    std::vector<index_t> col_idx_;
    std::vector<double> values_;
};

/// y = A x. Row-parallel when a thread count > 1 is configured; every y[i]
/// is a sequential accumulation over the stored row, so results do not
/// depend on the partition.
inline void spmv(const CsrMatrix &A, const DenseVector &x, DenseVector &y) {
    if (A.ncols() != static_cast<index_t>(x.size()))
        throw std::invalid_argument(
            "spmv: matrix has " + std::to_string(A.ncols()) +
            " columns but vector has " + std::to_string(x.size()) +
            " entries");
    y.resize(static_cast<std::size_t>(A.nrows()));
    const auto &ptr = A.row_ptr();
    const auto &col = A.col_idx();
    const auto &val = A.values();
    parallel_for_range(A.nrows(), [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t i = begin; i < end; ++i) {
            double sum = 0.0;
            for (index_t k = ptr[static_cast<std::size_t>(i)];
                 k < ptr[static_cast<std::size_t>(i) + 1]; ++k)
                sum += val[static_cast<std::size_t>(k)] *
                       x[static_cast<std::size_t>(col[static_cast<std::size_t>(k)])];
            y[static_cast<std::size_t>(i)] = sum;
        }
    });
}

inline DenseVector spmv(const CsrMatrix &A, const DenseVector &x) {
    DenseVector y;
    spmv(A, x, y);
    return y;
}

inline CsrMatrix transpose(const CsrMatrix &A) {
    const index_t m = A.nrows(), n = A.ncols();
    std::vector<index_t> ptr(static_cast<std::size_t>(n) + 1, 0);
    for (index_t k = 0; k < A.nnz(); ++k)
        ++ptr[static_cast<std::size_t>(A.col_idx()[static_cast<std::size_t>(k)]) + 1];
    for (index_t j = 0; j < n; ++j)
        ptr[static_cast<std::size_t>(j) + 1] += ptr[static_cast<std::size_t>(j)];
    std::vector<index_t> col(static_cast<std::size_t>(A.nnz()));
    std::vector<double> val(static_cast<std::size_t>(A.nnz()));
    std::vector<index_t> next(ptr.begin(), ptr.end() - 1);
    for (index_t i = 0; i < m; ++i) {
        const auto cols = A.row_cols(i);
        const auto vals = A.row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            const index_t dst = next[static_cast<std::size_t>(cols[k])]++;
            col[static_cast<std::size_t>(dst)] = i;
            val[static_cast<std::size_t>(dst)] = vals[k];
        }
    }
    return CsrMatrix(n, m, std::move(ptr), std::move(col), std::move(val));
}

/// y = A^T x without forming the transpose; rows are accumulated in
/// ascending order, so the result is reproducible bit for bit.
inline DenseVector spmv_transpose(const CsrMatrix &A, const DenseVector &x) {
    if (x.size() != static_cast<std::size_t>(A.nrows()))
        throw std::invalid_argument("spmv_transpose: vector length " +
                                    std::to_string(x.size()) +
                                    " does not match row count " +
                                    std::to_string(A.nrows()));
    DenseVector y(static_cast<std::size_t>(A.ncols()), 0.0);
    for (index_t i = 0; i < A.nrows(); ++i) {
        const auto cols = A.row_cols(i);
        const auto vals = A.row_values(i);
        const double xi = x[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k < cols.size(); ++k)
            y[static_cast<std::size_t>(cols[k])] += vals[k] * xi;
    }
    return y;
}

// --- dense vector helpers -------------------------------------------------

inline double dot(const DenseVector &a, const DenseVector &b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot: length mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

inline double norm2(const DenseVector &a) { return std::sqrt(dot(a, a)); }

/// y += alpha * x
inline void axpy(double alpha, const DenseVector &x, DenseVector &y) {
    if (x.size() != y.size())
        throw std::invalid_argument("axpy: length mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline DenseVector zeros(index_t n) {
    return DenseVector(static_cast<std::size_t>(n), 0.0);
}

/// r = f - A x
inline DenseVector residual(const CsrMatrix &A, const DenseVector &x,
                            const DenseVector &f) {
    DenseVector r = spmv(A, x);
    if (f.size() != r.size())
        throw std::invalid_argument("residual: rhs length mismatch");
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f[i] - r[i];
    return r;
}

} // namespace sparsh

#endif
