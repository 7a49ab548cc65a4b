#pragma once

#include "surrox/panel.hpp"

#include <Eigen/Dense>

#include <vector>

namespace surrox {

/// Least-squares fit of the K-dimensional surrogate VARX(q2) model.
struct SurrogateFit {
    std::vector<Eigen::MatrixXd> A;  ///< q2 lag matrices, each K x K
    Eigen::MatrixXd B;               ///< K x p exogenous loadings
    Eigen::MatrixXd residuals;       ///< (T - q2) x K; row i belongs to month q2 + i
    int q2 = 1;

    Index periods() const noexcept { return B.rows(); }
};

SurrogateFit fit_surrogate(const Eigen::MatrixXd& ys, const Eigen::MatrixXd& x, int q2);
SurrogateFit fit_surrogate(const SurrogatePanel& surrogate, const Eigen::MatrixXd& x, int q2);

/// Surrogate innovation with the autoregressive part removed:
/// ys_t - sum_l A_l ys_{t-l}. The exogenous term is deliberately kept.
/// `t` is a 0-based row of `ys` and must satisfy t >= q2.
Eigen::VectorXd d_residual(const Eigen::MatrixXd& ys, const SurrogateFit& fit, Index t);
Eigen::VectorXd d_residual(const SurrogatePanel& surrogate, const SurrogateFit& fit, Index t);

/// d_residual for rows q2..rows-1 stacked into a (rows - q2) x K matrix.
Eigen::MatrixXd d_residual_path(const Eigen::MatrixXd& ys, const SurrogateFit& fit);

/// Second-stage coefficients of the surrogate-augmented ARX model.
struct TargetStage {
    Eigen::VectorXd alpha;      ///< q1 autoregressive coefficients
    Eigen::VectorXd theta;      ///< d macro coefficients
    Eigen::VectorXd delta;      ///< p embedding coefficients (net of the surrogate channel)
    Eigen::VectorXd gamma;      ///< K loadings on the surrogate innovation
    Eigen::VectorXd residuals;  ///< T - q1 residuals
    double sigma_e = 0.0;       ///< sqrt(sum e^2 / (T - q1))
};

/**
 * OLS of y_t on (y_{t-1..t-q1}, z_t, x_t, d_t) over t = q1..T-1 (0-based).
 * `d` has one row per month; rows before q1 are never read.
 */
TargetStage fit_target_stage(const Eigen::VectorXd& y, const Eigen::MatrixXd& z,
                             const Eigen::MatrixXd& x, const Eigen::MatrixXd& d, int q1);

/// Two-step fit of the joint model.
struct JointFit {
    Eigen::VectorXd alpha;
    Eigen::VectorXd theta;
    Eigen::VectorXd delta;
    Eigen::VectorXd gamma;
    double sigma_e = 0.0;
    Eigen::VectorXd residuals;  ///< T - q1; row i belongs to month q1 + i
    Eigen::MatrixXd companion;  ///< q1 x q1
    Eigen::MatrixXd d_hat;      ///< (T - q2) x K; row i belongs to month q2 + i
    SurrogateFit surrogate;
    int q1 = 1;
    int q2 = 1;

    Index periods() const noexcept { return gamma.size(); }
};

/// Raw arrays for a joint fit. The surrogate equation may use its own
/// exogenous matrix (over-specified or misspecified designs).
struct JointData {
    Eigen::VectorXd y;
    Eigen::MatrixXd z;            ///< T x d
    Eigen::MatrixXd x;            ///< T x p, target equation
    Eigen::MatrixXd ys;           ///< T x K
    Eigen::MatrixXd surrogate_x;  ///< T x p', surrogate equation

    static JointData from(const MonthlyPanel& monthly, const SurrogatePanel& surrogate);
    Index length() const noexcept { return y.size(); }
};

JointFit fit_joint(const JointData& data, int q1, int q2);
JointFit fit_joint(const MonthlyPanel& monthly, const SurrogatePanel& surrogate, int q1, int q2);

/// One target residual paired with one surrogate residual component.
struct ResidualPair {
    Index month;  ///< 0-based row in the fitted sample
    int period;   ///< surrogate component k (0-based)
    double target;
    double surrogate;
};

/// Aligned (e_t, eps^S_{t,k}) pairs for t >= q1, ordered by month then k.
/// e_t is the target-equation error implied by the fit, i.e. the joint
/// residual plus gamma' eps^S_t, so the pairs show the error correlation.
std::vector<ResidualPair> residual_pairs(const JointFit& fit);

/// q x q companion matrix: first row alpha, identity subdiagonal.
Eigen::MatrixXd companion_matrix(const Eigen::VectorXd& alpha);

/// Plain ARX(q) fit without surrogate information; exog may have zero columns.
struct ArxFit {
    Eigen::VectorXd alpha;
    Eigen::VectorXd beta;
    double sigma_e = 0.0;
    Eigen::VectorXd residuals;
    int q = 1;
};

ArxFit fit_arx(const Eigen::VectorXd& y, const Eigen::MatrixXd& exog, int q);

}  // namespace surrox
