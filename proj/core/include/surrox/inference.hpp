#pragma once

#include "surrox/estimator.hpp"
#include "surrox/forecaster.hpp"

#include <Eigen/Dense>

#include <cstdint>

namespace surrox {

enum class IntervalKind { BJ, BOOT };

struct IntervalResult {
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
    double alpha = 0.05;
    IntervalKind kind = IntervalKind::BJ;

    Eigen::VectorXd length() const { return upper - lower; }
};

/// Standard normal quantile function.
double normal_quantile(double p);

/// sqrt(sum_{r<h} ((A^r)_{11})^2) for the companion matrix A of `alpha`.
double companion_weight(const Eigen::VectorXd& alpha, int h);

/// Normal-theory interval: point +/- |z_{alpha/2}| * companion_weight(h) * sigma_e.
IntervalResult bj_interval(const ForecastResult& forecast, const Eigen::VectorXd& ar_coef,
                           double sigma_e, double alpha);
IntervalResult bj_interval(const ForecastResult& forecast, const JointFit& fit, double alpha);
IntervalResult bj_interval(const ForecastResult& forecast, const ArxFit& fit, double alpha);

enum class QuantileRule {
    Type1,  ///< order statistic ceil(B * p)
    Type7,  ///< linear interpolation between order statistics
};

struct BootstrapConfig {
    int B = 500;
    std::uint64_t seed = 0;
    QuantileRule quantile_rule = QuantileRule::Type1;
    /// Replace the literal y* = e* start with the tail of a 50-step warm-up.
    bool burn_in = false;
    unsigned threads = 1;
};

/// Empirical quantile of `values` (unsorted) under `rule`.
double empirical_quantile(std::vector<double> values, double p, QuantileRule rule);

/// Bootstrap forecast errors, one row per successful replicate.
struct BootstrapDraws {
    Eigen::MatrixXd errors;  ///< successful replicates x H
    int failed = 0;
};

/**
 * Residual bootstrap of the joint model's H-step forecast errors.
 *
 * Each replicate resamples centered residuals, rebuilds y* recursively with
 * the original surrogate innovations held fixed, refits the target equation
 * on t <= T, forecasts H steps and records y*_{T+h} - yhat*_{T+h}.
 * Replicates whose refit is singular are dropped; more than 5% dropped raises
 * BootstrapUnstable.
 */
BootstrapDraws bootstrap_errors(const JointFit& fit, const History& history,
                                const FutureExogenous& future, Index horizon,
                                const BootstrapConfig& config);

/// [point + q_{alpha/2}, point + q_{1-alpha/2}] from bootstrap errors.
IntervalResult boot_interval(const ForecastResult& forecast, const BootstrapDraws& draws,
                             double alpha, QuantileRule rule = QuantileRule::Type1);

IntervalResult boot_interval(const JointFit& fit, const History& history,
                             const FutureExogenous& future, Index horizon,
                             const BootstrapConfig& config, double alpha);

/**
 * Ratio of prediction-error variances without and with the surrogate:
 * sigma_tt / (sigma_tt - S_ts S_ss^{-1} S_st). Throws InvalidCovariance unless
 * S_ss and the joint covariance are positive definite.
 */
double efficiency_gain(double sigma_tt, const Eigen::VectorXd& sigma_ts,
                       const Eigen::MatrixXd& sigma_ss);

}  // namespace surrox
