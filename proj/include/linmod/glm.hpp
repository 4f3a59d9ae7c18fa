#pragma once

#include <optional>

#include "linmod/matrix.hpp"

namespace linmod {

// Least-squares machinery for Y ~ N(X beta, sigma^2 I). Coefficient
// estimates are never materialized; everything downstream is a function of
// the projected response P_X y.
struct LinearModel {
    Matrix X;       // n x k design
    Matrix y;       // n x 1 response
    Matrix p_x;     // projector onto span(X)
    std::size_t rank_x = 0;

    std::size_t n() const { return X.rows(); }
    std::size_t k() const { return X.cols(); }
    std::size_t df_error() const { return n() - rank_x; }
    bool saturated() const { return df_error() == 0; }
};

struct FitSummary {
    Matrix fitted;                // P_X y
    double sse = 0.0;
    std::size_t df_error = 0;
    std::optional<double> mse;    // absent when the model is saturated
};

struct Fit {
    LinearModel model;
    FitSummary summary;
};

Fit fit(const Matrix& X, const Matrix& y);

// Noncentrality delta^2 = beta' X' P X beta / sigma2 of the quadratic form
// y'Py. P must be a symmetric idempotent n x n matrix.
double noncentrality(const LinearModel& model, const Matrix& P, const Matrix& beta,
                     double sigma2);

}  // namespace linmod
