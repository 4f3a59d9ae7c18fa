#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "linmod/glm.hpp"
#include "linmod/matrix.hpp"

namespace linmod {

// Thrown when some columns of G fall outside span(X').
struct NotEstimableError : std::runtime_error {
    NotEstimableError(std::string msg, std::vector<std::size_t> cols)
        : std::runtime_error(std::move(msg)), offending_columns(std::move(cols)) {}
    std::vector<std::size_t> offending_columns;
};

// G spans nothing to test (G = 0, or the restriction leaves the full model).
struct DegenerateHypothesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// rank(X) = n: there is no error variance to test against.
struct SaturatedModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An estimable linear hypothesis H0: G'beta = 0, with the derived pieces:
// N spanning the null space of G', the unique H with columns in span(X) and
// X'H = G, and the restricted design XN.
struct Hypothesis {
    Matrix G;                    // k x c
    std::optional<Matrix> N;     // orthonormal basis of {beta: G'beta = 0}; absent when rank(G) = k
    Matrix H;                    // n x c
    std::optional<Matrix> XN;    // restricted design; absent when N is
    bool estimable = false;
    std::size_t rank_g = 0;
};

struct TestResult {
    double ss = 0.0;
    std::size_t df = 0;
    double f_stat = 0.0;
    double p_value = 1.0;
    Matrix projector;            // P = P_X - P_XN
};

Hypothesis build_hypothesis(const LinearModel& model, const Matrix& G);

// Restricted-model-minus-full-model numerator SS, with F and p against the
// model's MSE. The full inferential contract: refuses saturated models.
TestResult rmfm_ss(const LinearModel& model, const Hypothesis& hyp, const Matrix& y);

// SS and df only, no F or p. This is the piece a saturated design can
// still report.
struct SsOnly {
    double ss = 0.0;
    std::size_t df = 0;
    Matrix projector;
};

SsOnly rmfm_ss_only(const LinearModel& model, const Hypothesis& hyp, const Matrix& y);

// Wald quadratic form (H'y)'(H'H)^-(H'y); equals rmfm_ss by the projector
// identity P_H = P_X - P_XN.
double wald_ss(const LinearModel& model, const Hypothesis& hyp, const Matrix& y);

// Span characterization of "tests" / "tests exactly" for a candidate
// numerator projector P.
struct Prop2Verdict {
    bool tests = false;
    bool tests_exactly = false;
};

Prop2Verdict verify_prop2(const LinearModel& model, const Hypothesis& hyp,
                          const Matrix& P);

}  // namespace linmod
