#include "linmod/matrix.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace linmod {

namespace {
void check_conformable(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matmul: inner dimensions differ");
}

inline void product_row(const Matrix& a, const Matrix& b, Matrix& out, std::size_t i) {
    const std::size_t n = a.cols(), p = b.cols();
    for (std::size_t k = 0; k < n; ++k) {
        const double aik = a(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < p; ++j) out(i, j) += aik * b(k, j);
    }
}
}  // namespace

Matrix matmul_serial(const Matrix& a, const Matrix& b) {
    check_conformable(a, b);
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) product_row(a, b, out, i);
    return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    check_conformable(a, b);
    const std::size_t flops = a.rows() * a.cols() * b.cols();
    // Below this the fork/join overhead dominates at desk scale.
    constexpr std::size_t kParallelThreshold = 64 * 64 * 64;
    if (flops < kParallelThreshold) return matmul_serial(a, b);
    Matrix out(a.rows(), b.cols());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long i = 0; i < static_cast<long long>(a.rows()); ++i)
        product_row(a, b, out, static_cast<std::size_t>(i));
    return out;
}

double dot(const Matrix& x, const Matrix& y) {
    if (x.cols() != 1 || y.cols() != 1 || x.rows() != y.rows())
        throw std::invalid_argument("dot: expects equal-length column vectors");
    double s = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) s += x(i, 0) * y(i, 0);
    return s;
}

}  // namespace linmod
