#include "surrox/model_select.hpp"

#include "surrox/errors.hpp"
#include "surrox/estimator.hpp"
#include "surrox/forecaster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace surrox {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double corrected_aic(const VectorXd& residuals, int m) {
    const auto t1 = static_cast<double>(residuals.size());
    if (m < 0) throw Error(ErrorCode::InvalidArgument, "feature count must be >= 0");
    if (t1 <= m + 2.0) {
        throw Error(ErrorCode::PenaltyUndefined,
                    "corrected AIC needs T1 > m + 2 (T1=" + std::to_string(residuals.size()) +
                        ", m=" + std::to_string(m) + ")");
    }
    const double penalty = (m + 1.0) * (m + 2.0) / (t1 - m - 2.0);
    return t1 * std::log(residuals.squaredNorm() / t1 + 1.0) + 2.0 * penalty;
}

double pearson(const VectorXd& a, const VectorXd& b) {
    if (a.size() != b.size() || a.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "correlation needs two equal-length series");
    }
    const VectorXd ac = a.array() - a.mean();
    const VectorXd bc = b.array() - b.mean();
    const double denom = std::sqrt(ac.squaredNorm() * bc.squaredNorm());
    if (!(denom > 0.0)) return 0.0;
    return ac.dot(bc) / denom;
}

namespace {

std::vector<Index> rank_by_correlation(const MatrixXd& x_trim, const VectorXd& residuals,
                                       const std::vector<Index>& exclude) {
    std::vector<Index> cols;
    std::vector<double> score(static_cast<std::size_t>(x_trim.cols()), 0.0);
    for (Index j = 0; j < x_trim.cols(); ++j) {
        if (std::find(exclude.begin(), exclude.end(), j) != exclude.end()) continue;
        score[static_cast<std::size_t>(j)] = std::abs(pearson(x_trim.col(j), residuals));
        cols.push_back(j);
    }
    std::stable_sort(cols.begin(), cols.end(), [&](Index a, Index b) {
        return score[static_cast<std::size_t>(a)] > score[static_cast<std::size_t>(b)];
    });
    return cols;
}

MatrixXd take_columns(const MatrixXd& x, const std::vector<Index>& cols) {
    MatrixXd out(x.rows(), static_cast<Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) out.col(static_cast<Index>(i)) = x.col(cols[i]);
    return out;
}

}  // namespace

SelectionResult correlation_pursuit(const VectorXd& y, const MatrixXd& x,
                                    const SelectionConfig& config) {
    if (x.cols() < 1) throw Error(ErrorCode::InvalidArgument, "selection needs at least one column");
    if (x.rows() != y.size()) throw Error(ErrorCode::PanelMismatch, "x rows differ from y");

    SelectionResult result;
    result.ar_order = select_ar_order(y, config.q_max);
    const int q = result.ar_order;
    const Index t_len = y.size();
    const MatrixXd x_trim = x.bottomRows(t_len - q);

    VectorXd residuals = fit_arx(y, MatrixXd(t_len, 0), q).residuals;
    double current = corrected_aic(residuals, 0);
    result.aic_path.push_back(current);

    std::vector<Index> fixed_ranking;
    if (!config.rerank) fixed_ranking = rank_by_correlation(x_trim, residuals, {});
    std::size_t cursor = 0;

    while (true) {
        std::vector<Index> tried = result.chosen;
        tried.insert(tried.end(), result.skipped.begin(), result.skipped.end());

        std::optional<Index> candidate;
        if (config.rerank) {
            const auto order = rank_by_correlation(x_trim, residuals, tried);
            if (!order.empty()) candidate = order.front();
        } else {
            while (cursor < fixed_ranking.size() &&
                   std::find(tried.begin(), tried.end(), fixed_ranking[cursor]) != tried.end()) {
                ++cursor;
            }
            if (cursor < fixed_ranking.size()) candidate = fixed_ranking[cursor];
        }
        if (!candidate) break;

        std::vector<Index> cols = result.chosen;
        cols.push_back(*candidate);
        const int m = static_cast<int>(cols.size());
        if (t_len - q <= m + 2) break;

        ArxFit fit;
        try {
            fit = fit_arx(y, take_columns(x, cols), q);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::RankDeficient && e.code() != ErrorCode::InsufficientSample) throw;
            result.skipped.push_back(*candidate);
            continue;
        }
        const double aic = corrected_aic(fit.residuals, m);
        if (aic < current - config.min_decrease) {
            result.chosen.push_back(*candidate);
            result.aic_path.push_back(aic);
            current = aic;
            residuals = fit.residuals;
        } else {
            result.rejected_aic = aic;
            break;
        }
    }

    // Ranking: entry order, then the remaining columns by |corr| with the final residuals
    // (or in fixed order when ranking once), skipped columns last.
    result.ranking = result.chosen;
    std::vector<Index> exclude = result.chosen;
    exclude.insert(exclude.end(), result.skipped.begin(), result.skipped.end());
    if (config.rerank) {
        for (Index j : rank_by_correlation(x_trim, residuals, exclude)) result.ranking.push_back(j);
    } else {
        for (Index j : fixed_ranking) {
            if (std::find(exclude.begin(), exclude.end(), j) == exclude.end()) result.ranking.push_back(j);
        }
    }
    result.ranking.insert(result.ranking.end(), result.skipped.begin(), result.skipped.end());
    return result;
}

}  // namespace surrox
