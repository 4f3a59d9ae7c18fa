#pragma once

#include <optional>

#include "linmod/anova.hpp"
#include "linmod/glm.hpp"
#include "linmod/hypothesis.hpp"
#include "linmod/matrix.hpp"

namespace linmod {

// The weighted-squares-of-means ensemble: A and C with AC = H, D = A'A
// positive-definite, M spanning span(C)^perp, and the marginal-mean
// statistics U = A'y with their standardized form Z = D^{-1/2}U.
struct MwsmConstruction {
    Matrix A;                  // n x c, linearly independent columns in span(X)
    Matrix C;                  // c x q
    Matrix D;                  // c x c = A'A
    std::optional<Matrix> M;   // span = span(C)^perp; absent when C has full row rank
};

struct InvalidConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canonical factorization: A = orthonormal basis of span(H), so D = I and
// C = A'H. Any other (A, C) with AC = H gives the same SS.
MwsmConstruction default_construction(const LinearModel& model, const Hypothesis& hyp);

// The two-factor specialization: A = (1/b) K D_ab (I_a (x) 1_b), C = S_a,
// M = 1_a; D is diagonal with entries 1/w_i.
MwsmConstruction yates_construction(const TwoFactorLayout& layout);

// u'(D^{-1} - D^{-1}M(M'D^{-1}M)^-M'D^{-1})u with u = A'y.
double ss_eq3(const MwsmConstruction& cons, const Matrix& y);

// Same quantity through the standardized route:
// z = D^{-1/2}A'y, then z'(I - P_{D^{-1/2}M})z.
double ss_eq3_via_z(const MwsmConstruction& cons, const Matrix& y);

}  // namespace linmod
