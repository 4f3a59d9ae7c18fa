#include "linmod/glm.hpp"

#include <cmath>
#include <stdexcept>

#include "linmod/kernels.hpp"

namespace linmod {

Fit fit(const Matrix& X, const Matrix& y) {
    if (y.cols() != 1) throw std::invalid_argument("fit: y must be a column vector");
    if (X.rows() != y.rows())
        throw std::invalid_argument("fit: X and y row counts differ");
    if (!X.all_finite() || !y.all_finite())
        throw std::invalid_argument("fit: non-finite values");

    Fit out;
    out.model.X = X;
    out.model.y = y;
    const auto gs = gram_schmidt(X);
    out.model.rank_x = gs.rank;
    out.model.p_x = gs.rank == 0 ? Matrix::zeros(X.rows(), X.rows())
                                 : matmul(gs.basis, gs.basis.transpose());

    out.summary.fitted = matmul(out.model.p_x, y);
    const Matrix resid = y - out.summary.fitted;
    out.summary.sse = dot(resid, resid);
    out.summary.df_error = out.model.df_error();
    if (out.summary.df_error > 0)
        out.summary.mse = out.summary.sse / static_cast<double>(out.summary.df_error);
    return out;
}

double noncentrality(const LinearModel& model, const Matrix& P, const Matrix& beta,
                     double sigma2) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("noncentrality: sigma2 <= 0");
    if (P.rows() != model.n() || P.cols() != model.n())
        throw std::invalid_argument("noncentrality: P has wrong shape");
    if (beta.cols() != 1 || beta.rows() != model.k())
        throw std::invalid_argument("noncentrality: beta has wrong length");
    const double scale = 1.0 + P.max_abs();
    if ((P - P.transpose()).max_abs() > 1e-8 * scale ||
        (matmul(P, P) - P).max_abs() > 1e-8 * scale)
        throw std::invalid_argument("noncentrality: P not symmetric idempotent");

    const Matrix mu = matmul(model.X, beta);
    const double delta2 = dot(mu, matmul(P, mu)) / sigma2;
    if (delta2 < 0.0) {
        // Tiny negatives are projector roundoff; anything larger is a bug.
        const double mu2 = dot(mu, mu) / sigma2;
        if (-delta2 < 1e-12 * (1.0 + mu2)) return 0.0;
        throw std::runtime_error("noncentrality: negative quadratic form");
    }
    return delta2;
}

}  // namespace linmod
