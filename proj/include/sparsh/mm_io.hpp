#ifndef SPARSH_MM_IO_HPP
#define SPARSH_MM_IO_HPP

/**
 * \file mm_io.hpp
 * \brief Matrix Market coordinate I/O (real, general or symmetric).
 */

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsh/csr.hpp"

namespace sparsh {

namespace detail {
inline std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}
} // namespace detail

/**
 * Reads a Matrix Market coordinate file. Accepted headers are
 * "%%MatrixMarket matrix coordinate real general|symmetric". Symmetric
 * files are expanded to full storage, 1-based indices become 0-based,
 * duplicates are summed and rows come out sorted.
 */
inline CsrMatrix read_matrix_market(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("read_matrix_market: cannot open '" + path + "'");

    std::string banner;
    if (!std::getline(in, banner))
        throw std::runtime_error("read_matrix_market: '" + path + "' is empty");
    std::istringstream hdr(banner);
    std::string tag, object, format, field, symmetry;
    hdr >> tag >> object >> format >> field >> symmetry;
    if (detail::lower(tag) != "%%matrixmarket" || detail::lower(object) != "matrix")
        throw std::runtime_error("read_matrix_market: '" + path +
                                 "': malformed header '" + banner + "'");
    if (detail::lower(format) != "coordinate")
        throw std::runtime_error("read_matrix_market: '" + path +
                                 "': only coordinate format is supported");
    if (detail::lower(field) != "real")
        throw std::runtime_error("read_matrix_market: '" + path +
                                 "': field '" + field + "' is not real");
    const std::string sym = detail::lower(symmetry);
    if (sym != "general" && sym != "symmetric")
        throw std::runtime_error("read_matrix_market: '" + path +
                                 "': symmetry '" + symmetry +
                                 "' is not general or symmetric");

    std::string line;
    auto next_data_line = [&](std::string &out) {
        while (std::getline(in, out)) {
            const auto pos = out.find_first_not_of(" \t\r\n");
            if (pos == std::string::npos) continue;
            if (out[pos] == '%') continue;
            return true;
        }
        return false;
    };

    if (!next_data_line(line))
        throw std::runtime_error("read_matrix_market: '" + path +
                                 "': missing size line");
    long long nrows = 0, ncols = 0, nnz = 0;
    {
        std::istringstream sz(line);
        if (!(sz >> nrows >> ncols >> nnz) || nrows < 0 || ncols < 0 || nnz < 0)
            throw std::runtime_error("read_matrix_market: '" + path +
                                     "': malformed size line '" + line + "'");
    }

    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(sym == "symmetric" ? 2 * nnz : nnz));
    for (long long e = 0; e < nnz; ++e) {
        if (!next_data_line(line))
            throw std::runtime_error("read_matrix_market: '" + path +
                                     "': expected " + std::to_string(nnz) +
                                     " entries, found " + std::to_string(e));
        std::istringstream es(line);
        long long i = 0, j = 0;
        double v = 0.0;
        if (!(es >> i >> j >> v))
            throw std::runtime_error("read_matrix_market: '" + path +
                                     "': malformed entry '" + line + "'");
        if (i < 1 || i > nrows || j < 1 || j > ncols)
            throw std::runtime_error("read_matrix_market: '" + path +
                                     "': index (" + std::to_string(i) + ", " +
                                     std::to_string(j) + ") out of bounds for " +
                                     std::to_string(nrows) + "x" +
                                     std::to_string(ncols));
        entries.push_back({static_cast<index_t>(i - 1),
                           static_cast<index_t>(j - 1), v});
        if (sym == "symmetric" && i != j)
            entries.push_back({static_cast<index_t>(j - 1),
                               static_cast<index_t>(i - 1), v});
    }
    return CsrMatrix::from_triplets(static_cast<index_t>(nrows),
                                    static_cast<index_t>(ncols),
                                    std::move(entries));
}

/// Writes A in coordinate/real/general form with 1-based indices.
inline void write_matrix_market(const CsrMatrix &A, std::ostream &out) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << A.nrows() << " " << A.ncols() << " " << A.nnz() << "\n";
    out.precision(17);
    for (index_t i = 0; i < A.nrows(); ++i) {
        const auto cols = A.row_cols(i);
        const auto vals = A.row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k)
            out << (i + 1) << " " << (cols[k] + 1) << " " << vals[k] << "\n";
    }
}

inline void write_matrix_market(const CsrMatrix &A, const std::string &path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_matrix_market: cannot open '" + path + "'");
    write_matrix_market(A, static_cast<std::ostream &>(out));
    if (!out)
        throw std::runtime_error("write_matrix_market: write to '" + path +
                                 "' failed");
}

} // namespace sparsh

#endif
