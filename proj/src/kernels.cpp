#include "linmod/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace linmod {

namespace {

double column_norm(const Matrix& m, std::size_t j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, j) * m(i, j);
    return std::sqrt(s);
}

// Subtract from v its components along the accepted basis columns.
void orthogonalize_against(std::vector<double>& v,
                           const std::vector<std::vector<double>>& basis) {
    for (const auto& q : basis) {
        double c = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) c += q[i] * v[i];
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[i];
    }
}

double norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

OrthonormalBasis gram_schmidt(const Matrix& m, double drop_tolerance) {
    if (m.empty()) throw std::invalid_argument("gram_schmidt: empty matrix");
    if (!m.all_finite())
        throw std::invalid_argument("gram_schmidt: non-finite entries");
    if (!(drop_tolerance > 0.0 && drop_tolerance < 1.0))
        throw std::invalid_argument("gram_schmidt: drop_tolerance must be in (0,1)");

    const std::size_t n = m.rows();
    std::vector<std::vector<double>> basis;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = m(i, j);
        const double orig = norm(v);
        if (orig == 0.0) continue;
        orthogonalize_against(v, basis);
        orthogonalize_against(v, basis);  // twice is enough
        const double res = norm(v);
        if (res < drop_tolerance * orig) continue;
        for (double& x : v) x /= res;
        basis.push_back(std::move(v));
    }

    OrthonormalBasis out;
    out.original_cols = m.cols();
    out.rank = basis.size();
    out.drop_tolerance = drop_tolerance;
    if (!basis.empty()) {
        out.basis = Matrix(n, basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j)
            for (std::size_t i = 0; i < n; ++i) out.basis(i, j) = basis[j][i];
    }
    return out;
}

std::size_t rank_of(const Matrix& m, double drop_tolerance) {
    return gram_schmidt(m, drop_tolerance).rank;
}

Matrix projector(const Matrix& m, double drop_tolerance) {
    const auto gs = gram_schmidt(m, drop_tolerance);
    if (gs.rank == 0) return Matrix::zeros(m.rows(), m.rows());
    return matmul(gs.basis, gs.basis.transpose());
}

std::optional<Matrix> orthonormal_complement(const Matrix& m, double drop_tolerance) {
    const std::size_t n = m.rows();
    const auto ext = gram_schmidt(Matrix::hcat(m, Matrix::identity(n)), drop_tolerance);
    const std::size_t span_rank = rank_of(m, drop_tolerance);
    if (ext.rank <= span_rank) return std::nullopt;
    Matrix comp(n, ext.rank - span_rank);
    for (std::size_t j = span_rank; j < ext.rank; ++j)
        for (std::size_t i = 0; i < n; ++i) comp(i, j - span_rank) = ext.basis(i, j);
    return comp;
}

Matrix generalized_inverse(const Matrix& m, double drop_tolerance) {
    if (!m.all_finite())
        throw std::invalid_argument("generalized_inverse: non-finite entries");
    const auto gs = gram_schmidt(m, drop_tolerance);
    if (gs.rank == 0) return Matrix::zeros(m.cols(), m.rows());
    // m = B R with R = B'm of full row rank, so pinv(m) = R'(RR')^{-1} B'.
    const Matrix bt = gs.basis.transpose();
    const Matrix r = matmul(bt, m);
    const Matrix gram = matmul(r, r.transpose());
    return matmul(matmul(r.transpose(), spd_inverse(gram)), bt);
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double aij = a(i, j);
            if (aij == 0.0) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    out(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
        }
    return out;
}

SpecialMatrices special_matrices(std::size_t m) {
    if (m == 0) throw std::invalid_argument("special_matrices: m must be positive");
    SpecialMatrices out;
    out.ones = Matrix::ones(m);
    out.U = Matrix(m, m, 1.0 / static_cast<double>(m));
    out.S = Matrix::identity(m) - out.U;
    return out;
}

Matrix cholesky(const Matrix& d, double floor_rel) {
    if (d.rows() != d.cols()) throw std::invalid_argument("cholesky: not square");
    const std::size_t n = d.rows();
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, d(i, i));
    const double floor = floor_rel * max_diag;

    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = d(j, j);
        for (std::size_t k = 0; k < j; ++k) s -= l(j, k) * l(j, k);
        if (!(s > floor))
            throw std::invalid_argument("cholesky: matrix not positive-definite");
        l(j, j) = std::sqrt(s);
        for (std::size_t i = j + 1; i < n; ++i) {
            double t = d(i, j);
            for (std::size_t k = 0; k < j; ++k) t -= l(i, k) * l(j, k);
            l(i, j) = t / l(j, j);
        }
    }
    return l;
}

Matrix spd_inverse(const Matrix& d, double floor_rel) {
    const Matrix l = cholesky(d, floor_rel);
    const std::size_t n = d.rows();
    // Solve L L' X = I column by column.
    Matrix inv(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<double> z(n);
        for (std::size_t i = 0; i < n; ++i) {
            double s = (i == c) ? 1.0 : 0.0;
            for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * z[k];
            z[i] = s / l(i, i);
        }
        for (std::size_t ii = n; ii-- > 0;) {
            double s = z[ii];
            for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * inv(k, c);
            inv(ii, c) = s / l(ii, ii);
        }
    }
    // Symmetrize to kill the asymmetric half of the roundoff.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.5 * (inv(i, j) + inv(j, i));
            inv(i, j) = v;
            inv(j, i) = v;
        }
    return inv;
}

namespace {

// Cyclic Jacobi eigendecomposition for symmetric matrices. Values land on
// the diagonal of a, columns of v are the eigenvectors.
void jacobi_eigen(Matrix& a, Matrix& v) {
    const std::size_t n = a.rows();
    v = Matrix::identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-30) return;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }
}

}  // namespace

SymmetricSqrt symmetric_sqrt(const Matrix& d, double floor_rel) {
    if (d.rows() != d.cols())
        throw std::invalid_argument("symmetric_sqrt: not square");
    const std::size_t n = d.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(d(i, j) - d(j, i)) > 1e-10 * (1.0 + d.max_abs()))
                throw std::invalid_argument("symmetric_sqrt: matrix not symmetric");

    Matrix a = d, v;
    jacobi_eigen(a, v);
    double max_eig = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_eig = std::max(max_eig, a(i, i));
    const double floor = floor_rel * max_eig;

    Matrix half_diag(n, n), inv_half_diag(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double eig = a(i, i);
        if (!(eig > floor))
            throw std::invalid_argument("symmetric_sqrt: matrix not positive-definite");
        half_diag(i, i) = std::sqrt(eig);
        inv_half_diag(i, i) = 1.0 / std::sqrt(eig);
    }
    SymmetricSqrt out;
    out.half = matmul(matmul(v, half_diag), v.transpose());
    out.inv_half = matmul(matmul(v, inv_half_diag), v.transpose());
    return out;
}

double prop1_residual(const Matrix& r, const Matrix& d, double drop_tolerance) {
    if (d.rows() != r.rows())
        throw std::invalid_argument("prop1_residual: dimension mismatch");
    const auto roots = symmetric_sqrt(d);
    const std::size_t n = r.rows();
    const Matrix p_dr = projector(matmul(roots.half, r), drop_tolerance);
    Matrix sum = p_dr;
    if (const auto m = orthonormal_complement(r, drop_tolerance))
        sum += projector(matmul(roots.inv_half, *m), drop_tolerance);
    return (sum - Matrix::identity(n)).max_abs();
}

}  // namespace linmod
