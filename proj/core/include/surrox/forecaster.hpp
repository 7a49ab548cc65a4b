#pragma once

#include "surrox/estimator.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string_view>

namespace surrox {

enum class Method { LLMCPI, AR, ARX, RW, AVE, TEXT_ARX };

std::string_view to_string(Method method) noexcept;
std::optional<Method> parse_method(std::string_view text);

/// Exogenous inputs for months T+1..T+H.
struct FutureExogenous {
    Eigen::MatrixXd z;   ///< H x d
    Eigen::MatrixXd x;   ///< H x p
    Eigen::MatrixXd ys;  ///< H x K; only the joint model reads it

    Index horizon() const noexcept {
        return std::max({z.rows(), x.rows(), ys.rows()});
    }
};

struct ForecastResult {
    Method method = Method::LLMCPI;
    Eigen::VectorXd point;

    Index horizon() const noexcept { return point.size(); }
};

/// Observed history needed by the joint forecaster.
struct History {
    Eigen::VectorXd y;
    Eigen::MatrixXd z;
    Eigen::MatrixXd x;
    Eigen::MatrixXd ys;

    static History from(const MonthlyPanel& monthly, const SurrogatePanel& surrogate);
};

/**
 * Rolling recursion f_h = sum_l alpha_l f_{h-l} + drift_h, where f_t is the
 * observed history for t <= T. Returns the H values past the history.
 */
Eigen::VectorXd roll_forward(const Eigen::VectorXd& alpha, const Eigen::VectorXd& history,
                             const Eigen::VectorXd& drift);

/// Per-step exogenous contribution z'theta + x'delta + gamma'D(ys) of the joint model.
Eigen::VectorXd joint_drift(const JointFit& fit, const Eigen::MatrixXd& hist_ys,
                            const FutureExogenous& future, Index horizon);

ForecastResult forecast_joint(const JointFit& fit, const History& history,
                              const FutureExogenous& future, Index horizon);

/// ARX forecast; `exog_future` is H x m with the same columns the fit used.
ForecastResult forecast_arx(const ArxFit& fit, const Eigen::VectorXd& hist_y,
                            const Eigen::MatrixXd& exog_future, Index horizon,
                            Method label = Method::ARX);

ForecastResult forecast_rw(const Eigen::VectorXd& hist_y, Index horizon);
ForecastResult forecast_ave(const Eigen::VectorXd& hist_y, Index horizon);

/**
 * Autoregressive order in 1..q_max minimizing the corrected AIC. All orders
 * are compared on the common sample t = q_max..T-1; ties go to the smaller
 * order.
 */
int select_ar_order(const Eigen::VectorXd& y, int q_max);

}  // namespace surrox
