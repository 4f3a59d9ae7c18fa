#include "linmod/mwsm.hpp"

#include <cmath>

#include "linmod/kernels.hpp"

namespace linmod {

namespace {

void check_construction(const MwsmConstruction& cons) {
    if ((matmul(cons.A.transpose(), cons.A) - cons.D).max_abs() >
        1e-8 * (1.0 + cons.D.max_abs()))
        throw InvalidConstructionError("mwsm: D != A'A");
    if (cons.M) {
        const Matrix ctm = matmul(cons.C.transpose(), *cons.M);
        if (ctm.max_abs() > 1e-10 * (1.0 + cons.C.max_abs()))
            throw InvalidConstructionError("mwsm: C'M != 0");
    }
}

}  // namespace

MwsmConstruction default_construction(const LinearModel& model, const Hypothesis& hyp) {
    if (!hyp.estimable)
        throw std::invalid_argument("default_construction: hypothesis not estimable");
    if (hyp.H.max_abs() == 0.0)
        throw DegenerateHypothesisError("default_construction: H is zero");

    MwsmConstruction cons;
    const auto gs = gram_schmidt(hyp.H);
    cons.A = gs.basis;
    cons.C = matmul(cons.A.transpose(), hyp.H);
    cons.D = matmul(cons.A.transpose(), cons.A);  // identity up to roundoff
    if (auto m = orthonormal_complement(cons.C)) cons.M = std::move(*m);
    return cons;
}

MwsmConstruction yates_construction(const TwoFactorLayout& layout) {
    const std::size_t a = layout.a, b = layout.b;
    const double inv_b = 1.0 / static_cast<double>(b);

    MwsmConstruction cons;
    const Matrix selector = kronecker(Matrix::identity(a), Matrix::ones(b));
    cons.A = matmul(matmul(layout.K, layout.D_ab), selector) * inv_b;
    cons.C = special_matrices(a).S;
    cons.M = Matrix::ones(a);

    // D_a = (1/b^2) Diag(sum_j 1/n_ij); diagonal entries are 1/w_i.
    std::vector<double> diag(a, 0.0);
    for (std::size_t i = 0; i < a; ++i) {
        for (std::size_t j = 0; j < b; ++j)
            diag[i] += 1.0 / static_cast<double>(layout.n_ij[i][j]);
        diag[i] *= inv_b * inv_b;
    }
    cons.D = Matrix::diagonal(diag);
    return cons;
}

double ss_eq3(const MwsmConstruction& cons, const Matrix& y) {
    check_construction(cons);
    const Matrix u = matmul(cons.A.transpose(), y);
    const Matrix d_inv = spd_inverse(cons.D);
    if (!cons.M) return std::max(0.0, dot(u, matmul(d_inv, u)));

    const Matrix dim = matmul(d_inv, *cons.M);                     // D^{-1}M
    const Matrix core = matmul(cons.M->transpose(), dim);          // M'D^{-1}M
    const Matrix middle = matmul(matmul(dim, generalized_inverse(core)), dim.transpose());
    return std::max(0.0, dot(u, matmul(d_inv - middle, u)));
}

double ss_eq3_via_z(const MwsmConstruction& cons, const Matrix& y) {
    check_construction(cons);
    const auto roots = symmetric_sqrt(cons.D);
    const Matrix z = matmul(roots.inv_half, matmul(cons.A.transpose(), y));
    if (!cons.M) return dot(z, z);
    const Matrix p = projector(matmul(roots.inv_half, *cons.M));
    const Matrix resid = z - matmul(p, z);
    return dot(resid, resid);
}

}  // namespace linmod
