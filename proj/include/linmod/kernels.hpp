#pragma once

#include <optional>

#include "linmod/matrix.hpp"

namespace linmod {

constexpr double kDefaultDropTol = 1e-10;

// Orthonormal basis of a column span, with the numerical rank decision
// baked in: columns whose residual after projection is shorter than
// drop_tolerance times their original length are dropped.
struct OrthonormalBasis {
    Matrix basis;                 // rows x rank, orthonormal columns; empty() when rank 0
    std::size_t original_cols = 0;
    std::size_t rank = 0;
    double drop_tolerance = 0.0;
};

// Modified Gram-Schmidt with one re-orthogonalization pass.
OrthonormalBasis gram_schmidt(const Matrix& m, double drop_tolerance = kDefaultDropTol);

std::size_t rank_of(const Matrix& m, double drop_tolerance = kDefaultDropTol);

// Orthogonal projector onto span(m), computed as BB' from the basis.
Matrix projector(const Matrix& m, double drop_tolerance = kDefaultDropTol);

// Orthonormal basis of span(m)^perp inside R^rows. May be empty (nullopt)
// when m has full row-space.
std::optional<Matrix> orthonormal_complement(const Matrix& m,
                                             double drop_tolerance = kDefaultDropTol);

// Moore-Penrose inverse via the Gram-Schmidt factorization m = B R.
// The all-zero matrix maps to the zero matrix of transposed shape.
Matrix generalized_inverse(const Matrix& m, double drop_tolerance = kDefaultDropTol);

Matrix kronecker(const Matrix& a, const Matrix& b);

struct SpecialMatrices {
    Matrix ones;  // 1_m
    Matrix U;     // (1/m) 1_m 1_m'
    Matrix S;     // I_m - U_m
};

SpecialMatrices special_matrices(std::size_t m);

// Lower Cholesky factor of a symmetric positive-definite matrix. Pivots
// below floor_rel times the largest diagonal entry are an error.
Matrix cholesky(const Matrix& d, double floor_rel = 1e-12);

// Inverse of a symmetric positive-definite matrix via its Cholesky factor.
Matrix spd_inverse(const Matrix& d, double floor_rel = 1e-12);

// Symmetric square root pair of a positive-definite matrix, from a Jacobi
// eigendecomposition. Eigenvalues below floor_rel times the largest are an
// error (the inputs here are positive-definite by construction, so a small
// eigenvalue signals a degenerate instance, not roundoff).
struct SymmetricSqrt {
    Matrix half;      // D^{1/2}
    Matrix inv_half;  // D^{-1/2}
};

SymmetricSqrt symmetric_sqrt(const Matrix& d, double floor_rel = 1e-12);

// Max-abs entry of P_{D^{1/2}R} + P_{D^{-1/2}M} - I with span(M) = span(R)^perp.
// The identity says this is zero; the returned residual measures how far
// the computed projectors are from it.
double prop1_residual(const Matrix& r, const Matrix& d,
                      double drop_tolerance = kDefaultDropTol);

}  // namespace linmod
