#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "linmod/matrix.hpp"

namespace linmod {

struct EmptyCellError : std::runtime_error {
    EmptyCellError(std::string msg, std::vector<std::pair<std::size_t, std::size_t>> cells)
        : std::runtime_error(std::move(msg)), missing_cells(std::move(cells)) {}
    std::vector<std::pair<std::size_t, std::size_t>> missing_cells;
};

struct DegenerateFactorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two-factor layout in the cell-means parameterization. Responses are
// grouped by cell, row-major in (i, j), and K is the 0/1 incidence design
// with one 1 per row.
struct TwoFactorLayout {
    std::size_t a = 0;
    std::size_t b = 0;
    std::vector<std::vector<std::size_t>> n_ij;  // a x b, all positive
    Matrix y;                                    // n.. x 1, grouped by cell
    Matrix K;                                    // n.. x ab incidence
    Matrix D_ab;                                 // diagonal, entries 1/n_ij
    std::vector<std::string> labels_a;           // first-appearance order
    std::vector<std::string> labels_b;

    std::size_t n_total() const { return K.rows(); }
    std::size_t cell_index(std::size_t i, std::size_t j) const { return i * b + j; }
};

struct Record {
    std::string level_a;
    std::string level_b;
    double response;
};

TwoFactorLayout build_layout(const std::vector<Record>& records);

// As build_layout but from pre-coded integer levels and grouped responses;
// used by generators that never touch string labels.
TwoFactorLayout build_layout_indexed(std::size_t a, std::size_t b,
                                     const std::vector<std::vector<std::size_t>>& n_ij,
                                     const std::vector<double>& y_grouped);

struct CellStats {
    std::vector<std::vector<double>> cell_means;  // a x b
    std::vector<double> marginal_means_a;         // unweighted over j
    std::vector<double> weights_a;                // 1/w_i = (1/b^2) sum_j 1/n_ij
};

CellStats cell_stats(const TwoFactorLayout& layout);

// Q = sum_i w_i (u_i - u_bar)^2, computed by both the deviation form and
// the matrix form as a cross-check; the deviation-form value is returned.
double compute_q(const CellStats& stats);

enum class Factor { A, B };

// Main-effect contrast matrix in the cell-means parameterization:
// (1/b)(S_a (x) 1_b) for A, (1/a)(1_a (x) S_b) for B.
Matrix main_effect_G(const TwoFactorLayout& layout, Factor factor);

// Interaction contrasts S_a (x) S_b, rank (a-1)(b-1).
Matrix interaction_G(const TwoFactorLayout& layout);

struct AnovaRow {
    std::string source;
    double ss = 0.0;
    std::size_t df = 0;
    std::optional<double> f;  // absent on the Error row and when saturated
    std::optional<double> p;
};

struct AnovaTable {
    std::vector<AnovaRow> rows;  // A, B, A:B, Error
    std::size_t n = 0;
    std::size_t rank = 0;
    std::size_t df_error = 0;
    std::optional<double> mse;
    bool saturated = false;
};

AnovaTable anova_table(const TwoFactorLayout& layout);

}  // namespace linmod
