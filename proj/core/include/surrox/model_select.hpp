#pragma once

#include "surrox/panel.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace surrox {

/**
 * Corrected AIC used for lag-order and feature selection:
 *
 *   T1 * log(sum(r^2) / T1 + 1) + 2 * (m + 1)(m + 2) / (T1 - m - 2)
 *
 * where T1 is the residual count. Throws PenaltyUndefined when T1 <= m + 2.
 */
double corrected_aic(const Eigen::VectorXd& residuals, int m);

struct SelectionConfig {
    int q_max = 4;               ///< largest AR order considered for the baseline fit
    double min_decrease = 1e-8;  ///< AIC must drop by more than this to accept a feature
    /// Re-rank the remaining columns against the current residuals after each
    /// accepted feature. When false the ranking against the AR residuals is fixed.
    bool rerank = true;
};

struct SelectionResult {
    std::vector<Index> chosen;     ///< accepted columns in order of entry
    std::vector<double> aic_path;  ///< AIC before any feature, then after each accepted one
    std::vector<Index> ranking;    ///< entry order followed by the untried columns
    std::vector<Index> skipped;    ///< columns dropped because they made the design singular
    std::optional<double> rejected_aic;  ///< AIC of the first rejected candidate, if any
    int ar_order = 1;
};

/**
 * Forward selection of embedding columns. Fits an AR baseline with order from
 * select_ar_order, ranks columns by |corr| with its residuals, then adds the
 * top-ranked column while the corrected AIC keeps decreasing.
 *
 * Callers pass the training window only.
 */
SelectionResult correlation_pursuit(const Eigen::VectorXd& y, const Eigen::MatrixXd& x,
                                    const SelectionConfig& config = {});

/// Pearson correlation; zero when either input has no spread.
double pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace surrox
