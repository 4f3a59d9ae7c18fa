#include "linmod/hypothesis.hpp"

#include <cmath>

#include "linmod/dist.hpp"
#include "linmod/kernels.hpp"

namespace linmod {

namespace {

constexpr double kEstimableTol = 1e-8;

Matrix restricted_projector(const LinearModel& model, const Hypothesis& hyp) {
    if (!hyp.XN) return Matrix::zeros(model.n(), model.n());
    return projector(*hyp.XN);
}

}  // namespace

Hypothesis build_hypothesis(const LinearModel& model, const Matrix& G) {
    if (G.rows() != model.k())
        throw std::invalid_argument("build_hypothesis: G must have k rows");
    if (!G.all_finite())
        throw std::invalid_argument("build_hypothesis: non-finite entries in G");

    // Estimability: each column of G must survive projection onto span(X').
    const Matrix row_space_proj = projector(model.X.transpose());
    const Matrix reproduced = matmul(row_space_proj, G);
    std::vector<std::size_t> bad;
    for (std::size_t j = 0; j < G.cols(); ++j) {
        const Matrix gj = G.col(j);
        const double res = (reproduced.col(j) - gj).frobenius_norm();
        if (res > kEstimableTol * std::max(1e-300, gj.frobenius_norm())) bad.push_back(j);
    }
    if (!bad.empty()) {
        std::string msg = "hypothesis not estimable; offending G columns:";
        for (auto j : bad) msg += " " + std::to_string(j);
        throw NotEstimableError(std::move(msg), std::move(bad));
    }

    Hypothesis hyp;
    hyp.G = G;
    hyp.estimable = true;
    hyp.rank_g = rank_of(G);

    if (auto n_basis = orthonormal_complement(G)) {
        hyp.N = std::move(*n_basis);
        hyp.XN = matmul(model.X, *hyp.N);
    }

    // H = X (X'X)^- G has columns in span(X) and X'H = G.
    const Matrix xtx = matmul(model.X.transpose(), model.X);
    hyp.H = matmul(matmul(model.X, generalized_inverse(xtx)), G);
    return hyp;
}

SsOnly rmfm_ss_only(const LinearModel& model, const Hypothesis& hyp, const Matrix& y) {
    if (!hyp.estimable)
        throw std::invalid_argument("rmfm_ss: hypothesis not estimable");
    if (y.cols() != 1 || y.rows() != model.n())
        throw std::invalid_argument("rmfm_ss: y has wrong shape");

    SsOnly out;
    out.projector = model.p_x - restricted_projector(model, hyp);
    const double tr = out.projector.trace();
    out.df = static_cast<std::size_t>(std::llround(tr));
    if (out.df == 0)
        throw DegenerateHypothesisError(
            "degenerate hypothesis: restricted model equals the full model");
    out.ss = std::max(0.0, dot(y, matmul(out.projector, y)));
    return out;
}

TestResult rmfm_ss(const LinearModel& model, const Hypothesis& hyp, const Matrix& y) {
    if (model.saturated())
        throw SaturatedModelError("saturated model: no error degrees of freedom");
    SsOnly base = rmfm_ss_only(model, hyp, y);

    const Matrix resid = y - matmul(model.p_x, y);
    const double mse = dot(resid, resid) / static_cast<double>(model.df_error());

    TestResult out;
    out.ss = base.ss;
    out.df = base.df;
    out.projector = std::move(base.projector);
    out.f_stat = (out.ss / static_cast<double>(out.df)) / mse;
    out.p_value = f_sf(out.f_stat, {static_cast<double>(out.df),
                                    static_cast<double>(model.df_error())});
    return out;
}

double wald_ss(const LinearModel& model, const Hypothesis& hyp, const Matrix& y) {
    if (!hyp.estimable)
        throw std::invalid_argument("wald_ss: hypothesis not estimable");
    if (hyp.H.max_abs() == 0.0)
        throw DegenerateHypothesisError("wald_ss: H is zero");
    const Matrix hty = matmul(hyp.H.transpose(), y);
    const Matrix hth = matmul(hyp.H.transpose(), hyp.H);
    return dot(hty, matmul(generalized_inverse(hth), hty));
}

Prop2Verdict verify_prop2(const LinearModel& model, const Hypothesis& hyp,
                          const Matrix& P) {
    const double scale = 1.0 + P.max_abs();
    if ((P - P.transpose()).max_abs() > 1e-8 * scale ||
        (matmul(P, P) - P).max_abs() > 1e-8 * scale)
        throw std::invalid_argument("verify_prop2: P not symmetric idempotent");
    if ((matmul(model.p_x, P) - P).max_abs() > 1e-8 * scale)
        throw std::invalid_argument("verify_prop2: span(P) not inside span(X)");

    constexpr double kTol = 1e-8;
    Prop2Verdict v;
    const Matrix xtp = matmul(model.X.transpose(), P);
    if (xtp.max_abs() == 0.0) {
        // P = 0: sp(X'P)^perp is everything; contained in sp(G)^perp only
        // if G is zero, which build_hypothesis never admits as estimable
        // with nonzero columns.
        v.tests = hyp.G.max_abs() == 0.0;
        v.tests_exactly = v.tests && hyp.rank_g == 0;
        return v;
    }
    const Matrix p_xtp = projector(xtp);
    // sp(X'P)^perp subset of sp(G)^perp  <=>  sp(G) subset of sp(X'P).
    v.tests = (matmul(p_xtp, hyp.G) - hyp.G).max_abs() <=
              kTol * (1.0 + hyp.G.max_abs());
    if (v.tests) {
        const Matrix p_g = projector(hyp.G);
        v.tests_exactly = (p_xtp - p_g).max_abs() <= kTol;
    }
    return v;
}

}  // namespace linmod
