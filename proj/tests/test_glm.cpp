#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "linmod/anova.hpp"
#include "linmod/dist.hpp"
#include "linmod/glm.hpp"
#include "linmod/hypothesis.hpp"
#include "linmod/kernels.hpp"
#include "test_support.hpp"

using linmod::Matrix;
using namespace linmod;

TEST_CASE("fit: intercept-only mean fit") {
    const auto [model, summary] = fit(Matrix::ones(4), Matrix::column({1, 2, 3, 4}));
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(summary.fitted(i, 0) == doctest::Approx(2.5));
    CHECK(summary.sse == doctest::Approx(5.0));
    CHECK(summary.df_error == 3);
    CHECK(*summary.mse == doctest::Approx(5.0 / 3.0));
}

TEST_CASE("fit: saturated model") {
    const auto [model, summary] = fit(Matrix::identity(3), Matrix::column({2, -1, 7}));
    CHECK(summary.sse == doctest::Approx(0.0));
    CHECK(summary.df_error == 0);
    CHECK(!summary.mse.has_value());
    CHECK(model.saturated());
}

TEST_CASE("fit: two-factor incidence, within-cell SS by hand") {
    // n_ij = [[2,1],[1,1]], y = (1,3, 2, 4, 6): only cell (1,1) has spread,
    // so SSE = (1-2)^2 + (3-2)^2 = 2, df_error = 5 - 4 = 1.
    const auto layout = build_layout_indexed(2, 2, {{2, 1}, {1, 1}}, {1, 3, 2, 4, 6});
    const auto [model, summary] = fit(layout.K, layout.y);
    CHECK(summary.sse == doctest::Approx(2.0));
    CHECK(summary.df_error == 1);
}

TEST_CASE("fit: input validation") {
    CHECK_THROWS_AS(fit(Matrix::ones(3), Matrix::column({1, 2})), std::invalid_argument);
    CHECK_THROWS_AS(fit(Matrix::ones(2), Matrix::column({1.0, std::nan("")})),
                    std::invalid_argument);
}

TEST_CASE("fit: Pythagorean split and span invariance") {
    std::mt19937_64 rng(91);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 4 + rng() % 9, k = 1 + rng() % 4;
        const Matrix x = testsup::random_matrix(rng, n, k);
        const Matrix y = testsup::random_matrix(rng, n, 1);
        const auto [model, summary] = fit(x, y);
        const double y2 = dot(y, y);
        const double fit2 = dot(summary.fitted, summary.fitted);
        CHECK(y2 == doctest::Approx(fit2 + summary.sse).epsilon(1e-9));

        const Matrix xt = matmul(x, testsup::random_invertible(rng, k));
        const auto [model2, summary2] = fit(xt, y);
        CHECK((summary.fitted - summary2.fitted).max_abs() < 1e-9 * (1.0 + y.max_abs()));
        CHECK(summary.sse == doctest::Approx(summary2.sse).epsilon(1e-9));
    }
}

TEST_CASE("noncentrality: zero cases") {
    std::mt19937_64 rng(13);
    const Matrix x = testsup::random_matrix(rng, 6, 3);
    const auto [model, summary] = fit(x, testsup::random_matrix(rng, 6, 1));
    CHECK(noncentrality(model, model.p_x, Matrix::zeros(3, 1), 1.0) == 0.0);
    CHECK(noncentrality(model, Matrix::zeros(6, 6), Matrix::column({1, 2, 3}), 1.0) ==
          0.0);
    Matrix not_idem{{1, 1}, {1, 1}};
    const auto [m2, s2] = fit(Matrix::ones(2), Matrix::column({1, 2}));
    CHECK_THROWS_AS(noncentrality(m2, not_idem, Matrix::column({1.0}), 1.0),
                    std::invalid_argument);
}

TEST_CASE("noncentrality: equal marginal means give zero for the A projector") {
    // 2x2 unbalanced layout; eta with equal A marginal means.
    const auto layout = build_layout_indexed(2, 2, {{2, 1}, {1, 3}},
                                             {1, 1, 1, 1, 1, 1, 1});
    const auto [model, summary] = fit(layout.K, layout.y);
    const Matrix g = main_effect_G(layout, Factor::A);
    const auto hyp = build_hypothesis(model, g);
    const auto res = rmfm_ss_only(model, hyp, layout.y);
    // eta = (1, 5, 4, 2): row means (1+5)/2 = 3 and (4+2)/2 = 3
    const Matrix eta = Matrix::column({1, 5, 4, 2});
    CHECK(noncentrality(model, res.projector, eta, 1.0) < 1e-10);
    // unequal marginal means: strictly positive
    const Matrix eta2 = Matrix::column({1, 5, 4, 9});
    CHECK(noncentrality(model, res.projector, eta2, 1.0) > 1e-6);
}

TEST_CASE("mse unbiasedness over 20000 simulated draws") {
    std::mt19937_64 rng(2024);
    const Matrix x = testsup::random_matrix(rng, 8, 3);
    const Matrix beta = testsup::random_matrix(rng, 3, 1);
    const Matrix mu = matmul(x, beta);
    const double sigma2 = 1.7;
    const double sigma = std::sqrt(sigma2);

    NormalSampler sampler(555);
    double mse_sum = 0.0;
    const int reps = 20000;
    for (int r = 0; r < reps; ++r) {
        Matrix y = mu;
        for (std::size_t i = 0; i < 8; ++i) y(i, 0) += sigma * sampler.next();
        const auto [model, summary] = fit(x, y);
        mse_sum += *summary.mse;
    }
    const double mean_mse = mse_sum / reps;
    CHECK(std::abs(mean_mse - sigma2) < 0.02 * sigma2);
}
