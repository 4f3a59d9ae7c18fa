#include "linmod/anova.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "linmod/hypothesis.hpp"
#include "linmod/kernels.hpp"
#include "linmod/mwsm.hpp"

namespace linmod {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::size_t level_index(std::vector<std::string>& labels, const std::string& raw) {
    const std::string label = trim(raw);
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it != labels.end()) return static_cast<std::size_t>(it - labels.begin());
    labels.push_back(label);
    return labels.size() - 1;
}

TwoFactorLayout finalize_layout(TwoFactorLayout layout,
                                const std::vector<double>& y_grouped) {
    const std::size_t a = layout.a, b = layout.b;
    if (a < 2) throw DegenerateFactorError("factor A has fewer than 2 levels");
    if (b < 2) throw DegenerateFactorError("factor B has fewer than 2 levels");

    std::vector<std::pair<std::size_t, std::size_t>> missing;
    std::size_t n_total = 0;
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j) {
            if (layout.n_ij[i][j] == 0) missing.emplace_back(i, j);
            n_total += layout.n_ij[i][j];
        }
    if (!missing.empty()) {
        std::string msg = "empty cells:";
        for (auto [i, j] : missing)
            msg += " (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
        throw EmptyCellError(std::move(msg), std::move(missing));
    }
    if (y_grouped.size() != n_total)
        throw std::invalid_argument("build_layout: response count mismatch");

    layout.y = Matrix::column(y_grouped);
    layout.K = Matrix::zeros(n_total, a * b);
    std::size_t row = 0;
    std::vector<double> dab_diag(a * b);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j) {
            const std::size_t cell = layout.cell_index(i, j);
            dab_diag[cell] = 1.0 / static_cast<double>(layout.n_ij[i][j]);
            for (std::size_t r = 0; r < layout.n_ij[i][j]; ++r)
                layout.K(row++, cell) = 1.0;
        }
    layout.D_ab = Matrix::diagonal(dab_diag);
    return layout;
}

}  // namespace

TwoFactorLayout build_layout(const std::vector<Record>& records) {
    if (records.empty()) throw std::invalid_argument("build_layout: no records");

    TwoFactorLayout layout;
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, double>> coded;
    coded.reserve(records.size());
    for (const auto& rec : records) {
        const std::size_t i = level_index(layout.labels_a, rec.level_a);
        const std::size_t j = level_index(layout.labels_b, rec.level_b);
        if (!std::isfinite(rec.response))
            throw std::invalid_argument("build_layout: non-finite response");
        coded.push_back({{i, j}, rec.response});
    }
    layout.a = layout.labels_a.size();
    layout.b = layout.labels_b.size();
    layout.n_ij.assign(layout.a, std::vector<std::size_t>(layout.b, 0));
    for (const auto& [cell, resp] : coded) layout.n_ij[cell.first][cell.second]++;

    // Group responses by cell, preserving within-cell input order.
    std::vector<std::vector<double>> per_cell(layout.a * layout.b);
    for (const auto& [cell, resp] : coded)
        per_cell[cell.first * layout.b + cell.second].push_back(resp);
    std::vector<double> grouped;
    grouped.reserve(coded.size());
    for (const auto& cell : per_cell)
        grouped.insert(grouped.end(), cell.begin(), cell.end());

    return finalize_layout(std::move(layout), grouped);
}

TwoFactorLayout build_layout_indexed(std::size_t a, std::size_t b,
                                     const std::vector<std::vector<std::size_t>>& n_ij,
                                     const std::vector<double>& y_grouped) {
    TwoFactorLayout layout;
    layout.a = a;
    layout.b = b;
    layout.n_ij = n_ij;
    for (std::size_t i = 0; i < a; ++i) layout.labels_a.push_back(std::to_string(i + 1));
    for (std::size_t j = 0; j < b; ++j) layout.labels_b.push_back(std::to_string(j + 1));
    return finalize_layout(std::move(layout), y_grouped);
}

CellStats cell_stats(const TwoFactorLayout& layout) {
    CellStats stats;
    stats.cell_means.assign(layout.a, std::vector<double>(layout.b, 0.0));
    std::size_t row = 0;
    for (std::size_t i = 0; i < layout.a; ++i)
        for (std::size_t j = 0; j < layout.b; ++j) {
            double sum = 0.0;
            for (std::size_t r = 0; r < layout.n_ij[i][j]; ++r) sum += layout.y(row++, 0);
            stats.cell_means[i][j] = sum / static_cast<double>(layout.n_ij[i][j]);
        }

    const double b = static_cast<double>(layout.b);
    for (std::size_t i = 0; i < layout.a; ++i) {
        double mean = 0.0, inv_w = 0.0;
        for (std::size_t j = 0; j < layout.b; ++j) {
            mean += stats.cell_means[i][j];
            inv_w += 1.0 / static_cast<double>(layout.n_ij[i][j]);
        }
        stats.marginal_means_a.push_back(mean / b);
        stats.weights_a.push_back(1.0 / (inv_w / (b * b)));
    }
    return stats;
}

double compute_q(const CellStats& stats) {
    const std::size_t a = stats.marginal_means_a.size();
    if (a < 2) throw DegenerateFactorError("compute_q: fewer than 2 marginal means");
    for (double w : stats.weights_a)
        if (!(w > 0.0)) throw std::invalid_argument("compute_q: weights must be positive");

    const auto& u = stats.marginal_means_a;
    const auto& w = stats.weights_a;

    double w_sum = 0.0, wu_sum = 0.0;
    for (std::size_t i = 0; i < a; ++i) {
        w_sum += w[i];
        wu_sum += w[i] * u[i];
    }
    const double u_bar = wu_sum / w_sum;
    double q_dev = 0.0;
    for (std::size_t i = 0; i < a; ++i) q_dev += w[i] * (u[i] - u_bar) * (u[i] - u_bar);

    // Matrix form u'(D^{-1} - D^{-1}1(1'D^{-1}1)^{-1}1'D^{-1})u with
    // D = Diag(1/w_i); must agree with the deviation form.
    double q_mat = 0.0;
    for (std::size_t i = 0; i < a; ++i) q_mat += w[i] * u[i] * u[i];
    q_mat -= wu_sum * wu_sum / w_sum;

    const double scale = std::max(1.0, std::abs(q_dev));
    if (std::abs(q_dev - q_mat) > 1e-10 * scale)
        throw std::runtime_error("compute_q: deviation and matrix forms disagree");
    return q_dev;
}

Matrix main_effect_G(const TwoFactorLayout& layout, Factor factor) {
    if (factor == Factor::A) {
        if (layout.a < 2) throw DegenerateFactorError("factor A degenerate");
        const auto sp = special_matrices(layout.a);
        return kronecker(sp.S, Matrix::ones(layout.b)) * (1.0 / static_cast<double>(layout.b));
    }
    if (layout.b < 2) throw DegenerateFactorError("factor B degenerate");
    const auto sp = special_matrices(layout.b);
    return kronecker(Matrix::ones(layout.a), sp.S) * (1.0 / static_cast<double>(layout.a));
}

Matrix interaction_G(const TwoFactorLayout& layout) {
    if (layout.a < 2 || layout.b < 2)
        throw DegenerateFactorError("interaction needs both factors non-degenerate");
    return kronecker(special_matrices(layout.a).S, special_matrices(layout.b).S);
}

AnovaTable anova_table(const TwoFactorLayout& layout) {
    const Fit full = fit(layout.K, layout.y);

    AnovaTable table;
    table.n = layout.n_total();
    table.rank = full.model.rank_x;
    table.df_error = full.summary.df_error;
    table.mse = full.summary.mse;
    table.saturated = full.model.saturated();

    const auto add_row = [&](const std::string& source, const Matrix& G) {
        const Hypothesis hyp = build_hypothesis(full.model, G);
        AnovaRow row;
        row.source = source;
        if (table.saturated) {
            const SsOnly ss = rmfm_ss_only(full.model, hyp, layout.y);
            row.ss = ss.ss;
            row.df = ss.df;
        } else {
            const TestResult res = rmfm_ss(full.model, hyp, layout.y);
            row.ss = res.ss;
            row.df = res.df;
            row.f = res.f_stat;
            row.p = res.p_value;
        }
        table.rows.push_back(std::move(row));
    };

    add_row("A", main_effect_G(layout, Factor::A));
    add_row("B", main_effect_G(layout, Factor::B));
    add_row("A:B", interaction_G(layout));

    AnovaRow err;
    err.source = "Error";
    err.ss = full.summary.sse;
    err.df = table.df_error;
    table.rows.push_back(std::move(err));
    return table;
}

}  // namespace linmod
