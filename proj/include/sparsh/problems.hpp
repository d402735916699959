#ifndef SPARSH_PROBLEMS_HPP
#define SPARSH_PROBLEMS_HPP

/**
 * \file problems.hpp
 * \brief Finite-difference test problems on the unit square and rhs builders.
 */

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsh/csr.hpp"

namespace sparsh {

/**
 * -laplace(u) + b.grad(u) + c u on (0,1)^2 with homogeneous Dirichlet
 * boundaries: 5-point stencil on an nx-by-ny interior grid (node (ix,iy)
 * is unknown iy*nx+ix), first-order upwinding for the convection term,
 * every entry scaled by the cell area hx*hy. With b = 0, c = 0 this is
 * the symmetric Poisson matrix with diagonal 2hy/hx + 2hx/hy.
 */
inline CsrMatrix convdiff2d(index_t nx, index_t ny, double bx, double by,
                            double c) {
    if (nx < 2 || ny < 2)
        throw std::invalid_argument("convdiff2d: grid dims must be >= 2, got " +
                                    std::to_string(nx) + "x" +
                                    std::to_string(ny));
    const double hx = 1.0 / (static_cast<double>(nx) + 1.0);
    const double hy = 1.0 / (static_cast<double>(ny) + 1.0);
    const double diag = 2.0 * hy / hx + 2.0 * hx / hy +
                        std::abs(bx) * hy + std::abs(by) * hx + c * hx * hy;
    const double west = -hy / hx - std::max(bx, 0.0) * hy;
    const double east = -hy / hx + std::min(bx, 0.0) * hy;
    const double south = -hx / hy - std::max(by, 0.0) * hx;
    const double north = -hx / hy + std::min(by, 0.0) * hx;

    const index_t n = nx * ny;
    std::vector<Triplet> entries;
    entries.reserve(5 * static_cast<std::size_t>(n));
    for (index_t iy = 0; iy < ny; ++iy) {
        for (index_t ix = 0; ix < nx; ++ix) {
            const index_t m = iy * nx + ix;
            entries.push_back({m, m, diag});
            if (ix > 0) entries.push_back({m, m - 1, west});
            if (ix < nx - 1) entries.push_back({m, m + 1, east});
            if (iy > 0) entries.push_back({m, m - nx, south});
            if (iy < ny - 1) entries.push_back({m, m + nx, north});
        }
    }
    return CsrMatrix::from_triplets(n, n, std::move(entries));
}

/// Symmetric 5-point Poisson matrix (convdiff2d with b = 0, c = 0).
inline CsrMatrix poisson2d(index_t nx, index_t ny) {
    return convdiff2d(nx, ny, 0.0, 0.0, 0.0);
}

inline DenseVector rhs_ones(index_t n) {
    return DenseVector(static_cast<std::size_t>(n), 1.0);
}

/// Uniform [0,1) entries from a fixed seed.
inline DenseVector rhs_random(index_t n, unsigned seed = 42) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    DenseVector v(static_cast<std::size_t>(n));
    for (double &x : v) x = dist(gen);
    return v;
}

/// Reads whitespace-separated doubles, e.g. one value per line.
inline DenseVector read_vector(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("read_vector: cannot open '" + path + "'");
    DenseVector v;
    double x = 0.0;
    while (in >> x) v.push_back(x);
    if (!in.eof())
        throw std::runtime_error("read_vector: malformed value in '" + path +
                                 "' near entry " + std::to_string(v.size()));
    return v;
}

} // namespace sparsh

#endif
