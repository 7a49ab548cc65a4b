#pragma once

#include <Eigen/Dense>

namespace surrox {

/// Relative singular-value floor below which a design counts as rank deficient.
inline constexpr double kRankTolerance = 1e-10;

/**
 * Least-squares coefficients minimizing ||response - design * coef||_F.
 *
 * Solved through a thin SVD of the design. Throws RankDeficient when
 * sigma_min / sigma_max < rank_tol, naming the columns that participate in
 * the near-null direction, and InsufficientSample when rows < columns.
 */
Eigen::MatrixXd ols_solve(const Eigen::MatrixXd& design, const Eigen::MatrixXd& response,
                          double rank_tol = kRankTolerance);

}  // namespace surrox
