#include "surrox/estimator.hpp"

#include "surrox/errors.hpp"
#include "surrox/linalg.hpp"

#include <string>

namespace surrox {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void require_order(int q, const char* name) {
    if (q < 1) throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be >= 1");
}

}  // namespace

SurrogateFit fit_surrogate(const MatrixXd& ys, const MatrixXd& x, int q2) {
    require_order(q2, "q2");
    const Index t_len = ys.rows();
    const Index k = ys.cols();
    const Index p = x.cols();
    if (x.rows() != t_len) {
        throw Error(ErrorCode::PanelMismatch, "surrogate and exogenous rows differ");
    }
    if (t_len <= q2 + k * q2 + p) {
        throw Error(ErrorCode::InsufficientSample,
                    "surrogate model needs T > q2 + K*q2 + p (T=" + std::to_string(t_len) + ")");
    }
    const Index rows = t_len - q2;
    MatrixXd design(rows, k * q2 + p);
    for (Index i = 0; i < rows; ++i) {
        const Index t = q2 + i;
        for (int l = 1; l <= q2; ++l) design.block(i, (l - 1) * k, 1, k) = ys.row(t - l);
        if (p > 0) design.block(i, k * q2, 1, p) = x.row(t);
    }
    const MatrixXd response = ys.bottomRows(rows);
    const MatrixXd coef = ols_solve(design, response);

    SurrogateFit fit;
    fit.q2 = q2;
    fit.A.reserve(static_cast<std::size_t>(q2));
    for (int l = 0; l < q2; ++l) fit.A.push_back(coef.block(l * k, 0, k, k).transpose());
    fit.B = coef.bottomRows(p).transpose();
    fit.residuals = response - design * coef;
    return fit;
}

SurrogateFit fit_surrogate(const SurrogatePanel& surrogate, const MatrixXd& x, int q2) {
    return fit_surrogate(surrogate.ys(), x, q2);
}

VectorXd d_residual(const MatrixXd& ys, const SurrogateFit& fit, Index t) {
    if (t < fit.q2 || t >= ys.rows()) {
        throw Error(ErrorCode::IndexError, "surrogate innovation at row " + std::to_string(t) +
                                               " needs " + std::to_string(fit.q2) + " lags");
    }
    if (ys.cols() != fit.periods()) {
        throw Error(ErrorCode::PanelMismatch, "surrogate width differs from the fitted K");
    }
    VectorXd d = ys.row(t).transpose();
    for (int l = 1; l <= fit.q2; ++l) d -= fit.A[static_cast<std::size_t>(l - 1)] * ys.row(t - l).transpose();
    return d;
}

VectorXd d_residual(const SurrogatePanel& surrogate, const SurrogateFit& fit, Index t) {
    return d_residual(surrogate.ys(), fit, t);
}

MatrixXd d_residual_path(const MatrixXd& ys, const SurrogateFit& fit) {
    const Index rows = ys.rows() - fit.q2;
    MatrixXd out(std::max<Index>(rows, 0), ys.cols());
    for (Index i = 0; i < rows; ++i) out.row(i) = d_residual(ys, fit, fit.q2 + i).transpose();
    return out;
}

TargetStage fit_target_stage(const VectorXd& y, const MatrixXd& z, const MatrixXd& x,
                             const MatrixXd& d, int q1) {
    require_order(q1, "q1");
    const Index t_len = y.size();
    const Index dz = z.cols();
    const Index p = x.cols();
    const Index k = d.cols();
    if (z.rows() != t_len || x.rows() != t_len || d.rows() != t_len) {
        throw Error(ErrorCode::PanelMismatch, "target design inputs differ in length");
    }
    const Index rows = t_len - q1;
    const Index params = q1 + dz + p + k;
    if (t_len <= q1 + dz + p + k || rows < params) {
        throw Error(ErrorCode::InsufficientSample,
                    "joint model needs at least " + std::to_string(params) + " rows after " +
                        std::to_string(q1) + " lags (T=" + std::to_string(t_len) + ")");
    }
    MatrixXd design(rows, params);
    for (Index i = 0; i < rows; ++i) {
        const Index t = q1 + i;
        for (int l = 1; l <= q1; ++l) design(i, l - 1) = y(t - l);
        if (dz > 0) design.block(i, q1, 1, dz) = z.row(t);
        if (p > 0) design.block(i, q1 + dz, 1, p) = x.row(t);
        design.block(i, q1 + dz + p, 1, k) = d.row(t);
    }
    const VectorXd response = y.tail(rows);
    const VectorXd coef = ols_solve(design, response);

    TargetStage out;
    out.alpha = coef.head(q1);
    out.theta = coef.segment(q1, dz);
    out.delta = coef.segment(q1 + dz, p);
    out.gamma = coef.tail(k);
    out.residuals = response - design * coef;
    out.sigma_e = std::sqrt(out.residuals.squaredNorm() / static_cast<double>(rows));
    return out;
}

JointData JointData::from(const MonthlyPanel& monthly, const SurrogatePanel& surrogate) {
    require_aligned(monthly, surrogate);
    return {monthly.y(), monthly.z(), monthly.x(), surrogate.ys(), monthly.x()};
}

JointFit fit_joint(const JointData& data, int q1, int q2) {
    require_order(q1, "q1");
    require_order(q2, "q2");
    if (q2 > q1) throw Error(ErrorCode::InvalidArgument, "surrogate order q2 must not exceed q1");
    const Index t_len = data.length();
    if (data.ys.rows() != t_len || data.z.rows() != t_len || data.x.rows() != t_len ||
        data.surrogate_x.rows() != t_len) {
        throw Error(ErrorCode::PanelMismatch, "joint model inputs differ in length");
    }

    JointFit fit;
    fit.q1 = q1;
    fit.q2 = q2;
    fit.surrogate = fit_surrogate(data.ys, data.surrogate_x, q2);
    fit.d_hat = d_residual_path(data.ys, fit.surrogate);

    // Rows q2..q1-1 of the innovation path exist but the target fit starts at q1.
    MatrixXd aligned = MatrixXd::Zero(t_len, data.ys.cols());
    aligned.bottomRows(fit.d_hat.rows()) = fit.d_hat;
    TargetStage stage = fit_target_stage(data.y, data.z, data.x, aligned, q1);

    fit.alpha = std::move(stage.alpha);
    fit.theta = std::move(stage.theta);
    fit.delta = std::move(stage.delta);
    fit.gamma = std::move(stage.gamma);
    fit.residuals = std::move(stage.residuals);
    fit.sigma_e = stage.sigma_e;
    fit.companion = companion_matrix(fit.alpha);
    return fit;
}

JointFit fit_joint(const MonthlyPanel& monthly, const SurrogatePanel& surrogate, int q1, int q2) {
    return fit_joint(JointData::from(monthly, surrogate), q1, q2);
}

std::vector<ResidualPair> residual_pairs(const JointFit& fit) {
    std::vector<ResidualPair> out;
    const Index k = fit.surrogate.residuals.cols();
    const Index offset = fit.q1 - fit.q2;
    if (fit.surrogate.residuals.rows() != fit.residuals.size() + offset) {
        throw Error(ErrorCode::PanelMismatch, "target and surrogate residuals are not aligned");
    }
    out.reserve(static_cast<std::size_t>(fit.residuals.size() * k));
    for (Index i = 0; i < fit.residuals.size(); ++i) {
        // Undo the projection on D-hat: e_t = u_t + gamma' eps^S_t.
        const double e = fit.residuals(i) + fit.surrogate.residuals.row(i + offset).dot(fit.gamma);
        for (Index j = 0; j < k; ++j) {
            out.push_back({fit.q1 + i, static_cast<int>(j), e, fit.surrogate.residuals(i + offset, j)});
        }
    }
    return out;
}

MatrixXd companion_matrix(const VectorXd& alpha) {
    const Index q = alpha.size();
    MatrixXd a = MatrixXd::Zero(q, q);
    if (q == 0) return a;
    a.row(0) = alpha.transpose();
    for (Index i = 1; i < q; ++i) a(i, i - 1) = 1.0;
    return a;
}

ArxFit fit_arx(const VectorXd& y, const MatrixXd& exog, int q) {
    require_order(q, "q");
    const Index t_len = y.size();
    const Index m = exog.cols();
    if (exog.rows() != t_len) throw Error(ErrorCode::PanelMismatch, "exogenous rows differ from y");
    const Index rows = t_len - q;
    if (rows < q + m || rows < 1) {
        throw Error(ErrorCode::InsufficientSample,
                    "ARX(" + std::to_string(q) + ") needs more than " + std::to_string(t_len) +
                        " observations");
    }
    MatrixXd design(rows, q + m);
    for (Index i = 0; i < rows; ++i) {
        const Index t = q + i;
        for (int l = 1; l <= q; ++l) design(i, l - 1) = y(t - l);
        if (m > 0) design.block(i, q, 1, m) = exog.row(t);
    }
    const VectorXd response = y.tail(rows);
    const VectorXd coef = ols_solve(design, response);

    ArxFit fit;
    fit.q = q;
    fit.alpha = coef.head(q);
    fit.beta = coef.tail(m);
    fit.residuals = response - design * coef;
    fit.sigma_e = std::sqrt(fit.residuals.squaredNorm() / static_cast<double>(rows));
    return fit;
}

}  // namespace surrox
