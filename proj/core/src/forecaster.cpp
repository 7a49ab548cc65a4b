#include "surrox/forecaster.hpp"

#include "surrox/errors.hpp"
#include "surrox/model_select.hpp"

#include <string>

namespace surrox {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::string_view to_string(Method method) noexcept {
    switch (method) {
        case Method::LLMCPI: return "LLMCPI";
        case Method::AR: return "AR";
        case Method::ARX: return "ARX";
        case Method::RW: return "RW";
        case Method::AVE: return "AVE";
        case Method::TEXT_ARX: return "TEXT_ARX";
    }
    return "UNKNOWN";
}

std::optional<Method> parse_method(std::string_view text) {
    for (Method m : {Method::LLMCPI, Method::AR, Method::ARX, Method::RW, Method::AVE,
                     Method::TEXT_ARX}) {
        std::string name(to_string(m));
        std::string lower = name;
        for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (text == name || text == lower) return m;
    }
    return std::nullopt;
}

History History::from(const MonthlyPanel& monthly, const SurrogatePanel& surrogate) {
    require_aligned(monthly, surrogate);
    return {monthly.y(), monthly.z(), monthly.x(), surrogate.ys()};
}

VectorXd roll_forward(const VectorXd& alpha, const VectorXd& history, const VectorXd& drift) {
    const Index q = alpha.size();
    const Index t_len = history.size();
    const Index h_len = drift.size();
    if (t_len < q) {
        throw Error(ErrorCode::InsufficientSample, "history shorter than the autoregressive order");
    }
    VectorXd path(t_len + h_len);
    path.head(t_len) = history;
    for (Index h = 0; h < h_len; ++h) {
        const Index t = t_len + h;
        double value = drift(h);
        for (Index l = 1; l <= q; ++l) value += alpha(l - 1) * path(t - l);
        path(t) = value;
    }
    return path.tail(h_len);
}

namespace {

void require_rows(const MatrixXd& m, Index horizon, Index cols, const char* what) {
    if (m.cols() != cols) {
        throw Error(ErrorCode::MissingExogenous,
                    std::string(what) + " has " + std::to_string(m.cols()) +
                        " columns, the fit expects " + std::to_string(cols));
    }
    if (cols > 0 && m.rows() < horizon) {
        throw Error(ErrorCode::MissingExogenous,
                    std::string(what) + " supplies " + std::to_string(m.rows()) +
                        " future rows, horizon is " + std::to_string(horizon));
    }
}

void require_horizon(Index horizon) {
    if (horizon < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
}

}  // namespace

VectorXd joint_drift(const JointFit& fit, const MatrixXd& hist_ys, const FutureExogenous& future,
                     Index horizon) {
    require_horizon(horizon);
    require_rows(future.z, horizon, fit.theta.size(), "future z");
    require_rows(future.x, horizon, fit.delta.size(), "future x");
    require_rows(future.ys, horizon, fit.periods(), "future surrogate");
    if (hist_ys.cols() != fit.periods() || hist_ys.rows() < fit.q2) {
        throw Error(ErrorCode::MissingExogenous, "surrogate history cannot supply the needed lags");
    }

    MatrixXd ys_all(hist_ys.rows() + horizon, hist_ys.cols());
    ys_all << hist_ys, future.ys.topRows(horizon);
    VectorXd drift(horizon);
    for (Index h = 0; h < horizon; ++h) {
        const VectorXd d = d_residual(ys_all, fit.surrogate, hist_ys.rows() + h);
        double value = fit.gamma.dot(d);
        if (fit.theta.size() > 0) value += future.z.row(h).dot(fit.theta);
        if (fit.delta.size() > 0) value += future.x.row(h).dot(fit.delta);
        drift(h) = value;
    }
    return drift;
}

ForecastResult forecast_joint(const JointFit& fit, const History& history,
                              const FutureExogenous& future, Index horizon) {
    const VectorXd drift = joint_drift(fit, history.ys, future, horizon);
    return {Method::LLMCPI, roll_forward(fit.alpha, history.y, drift)};
}

ForecastResult forecast_arx(const ArxFit& fit, const VectorXd& hist_y, const MatrixXd& exog_future,
                            Index horizon, Method label) {
    require_horizon(horizon);
    require_rows(exog_future, horizon, fit.beta.size(), "future exogenous");
    VectorXd drift = VectorXd::Zero(horizon);
    if (fit.beta.size() > 0) drift = exog_future.topRows(horizon) * fit.beta;
    return {label, roll_forward(fit.alpha, hist_y, drift)};
}

ForecastResult forecast_rw(const VectorXd& hist_y, Index horizon) {
    require_horizon(horizon);
    if (hist_y.size() < 1) throw Error(ErrorCode::InsufficientSample, "random walk needs y_T");
    return {Method::RW, VectorXd::Constant(horizon, hist_y(hist_y.size() - 1))};
}

ForecastResult forecast_ave(const VectorXd& hist_y, Index horizon) {
    require_horizon(horizon);
    const Index t_len = hist_y.size();
    if (t_len < horizon) {
        throw Error(ErrorCode::InsufficientSample,
                    "average forecast at step " + std::to_string(horizon) + " needs " +
                        std::to_string(horizon) + " observations, have " + std::to_string(t_len));
    }
    VectorXd point(horizon);
    double running = 0.0;
    for (Index h = 1; h <= horizon; ++h) {
        running += hist_y(t_len - h);
        point(h - 1) = running / static_cast<double>(h);
    }
    return {Method::AVE, point};
}

int select_ar_order(const VectorXd& y, int q_max) {
    if (q_max < 1) throw Error(ErrorCode::InvalidArgument, "q_max must be >= 1");
    const Index t_len = y.size();
    if (t_len - q_max <= q_max + 2) {
        throw Error(ErrorCode::InsufficientSample,
                    "order selection up to " + std::to_string(q_max) + " needs T > " +
                        std::to_string(2 * q_max + 2));
    }
    const MatrixXd no_exog(t_len, 0);
    int best_order = 1;
    double best_aic = 0.0;
    for (int q = 1; q <= q_max; ++q) {
        const Index start = q_max - q;
        const Index len = t_len - start;
        const ArxFit fit = fit_arx(y.tail(len), no_exog.topRows(len), q);
        const double aic = corrected_aic(fit.residuals, q);
        if (q == 1 || aic < best_aic) {
            best_aic = aic;
            best_order = q;
        }
    }
    return best_order;
}

}  // namespace surrox
