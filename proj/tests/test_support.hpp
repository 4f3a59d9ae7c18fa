#pragma once

// Shared test helpers: random generators and independent oracles. Oracles
// here deliberately avoid the library's Gram-Schmidt path wherever an
// elementary route exists.

#include <cstdint>
#include <random>
#include <vector>

#include "linmod/kernels.hpp"
#include "linmod/matrix.hpp"

namespace testsup {

inline linmod::Matrix random_matrix(std::mt19937_64& rng, std::size_t rows,
                                    std::size_t cols) {
    std::normal_distribution<double> normal(0.0, 1.0);
    linmod::Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = normal(rng);
    return m;
}

// Random matrix with exactly the requested rank (outer product of two
// full-rank factors).
inline linmod::Matrix random_matrix_with_rank(std::mt19937_64& rng, std::size_t rows,
                                              std::size_t cols, std::size_t rank) {
    return linmod::matmul(random_matrix(rng, rows, rank), random_matrix(rng, rank, cols));
}

// Random symmetric positive-definite matrix A'A + eps I.
inline linmod::Matrix random_spd(std::mt19937_64& rng, std::size_t n) {
    const linmod::Matrix a = random_matrix(rng, n + 2, n);
    linmod::Matrix d = linmod::matmul(a.transpose(), a);
    for (std::size_t i = 0; i < n; ++i) d(i, i) += 0.5;
    return d;
}

// Random invertible matrix (resampled until comfortably nonsingular).
inline linmod::Matrix random_invertible(std::mt19937_64& rng, std::size_t n) {
    for (;;) {
        linmod::Matrix t = random_matrix(rng, n, n);
        if (linmod::rank_of(t) == n) return t;
    }
}

// Gauss-Jordan inverse; independent of the library's factorizations.
inline linmod::Matrix gauss_jordan_inverse(linmod::Matrix a) {
    const std::size_t n = a.rows();
    linmod::Matrix inv = linmod::Matrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(a(col, j), a(pivot, j));
            std::swap(inv(col, j), inv(pivot, j));
        }
        const double p = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= p;
            inv(col, j) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a(r, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

// Projector oracle M(M'M)^{-1}M' for full-column-rank M, via Gauss-Jordan.
inline linmod::Matrix projector_oracle(const linmod::Matrix& m) {
    const linmod::Matrix gram = linmod::matmul(m.transpose(), m);
    return linmod::matmul(linmod::matmul(m, gauss_jordan_inverse(gram)), m.transpose());
}

}  // namespace testsup
