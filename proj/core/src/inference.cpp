#include "surrox/inference.hpp"

#include "surrox/errors.hpp"
#include "surrox/parallel.hpp"
#include "surrox/rng.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace surrox {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr int kWarmupSteps = 50;
constexpr double kMaxFailureShare = 0.05;

void require_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1)");
    }
}

MatrixXd stack_rows(const MatrixXd& top, const MatrixXd& bottom, Index bottom_rows) {
    MatrixXd out(top.rows() + bottom_rows, top.cols());
    out.topRows(top.rows()) = top;
    if (bottom_rows > 0 && top.cols() > 0) out.bottomRows(bottom_rows) = bottom.topRows(bottom_rows);
    return out;
}

}  // namespace

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::InvalidArgument, "quantile level must lie in (0, 1)");
    return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double companion_weight(const VectorXd& alpha, int h) {
    if (h < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
    // (A^r)_{11} obeys psi_r = sum_l alpha_l psi_{r-l} with psi_0 = 1.
    const Index q = alpha.size();
    std::vector<double> psi(static_cast<std::size_t>(h), 0.0);
    psi[0] = 1.0;
    double sum = 1.0;
    for (int r = 1; r < h; ++r) {
        double v = 0.0;
        for (Index l = 1; l <= std::min<Index>(q, r); ++l) v += alpha(l - 1) * psi[static_cast<std::size_t>(r - l)];
        psi[static_cast<std::size_t>(r)] = v;
        sum += v * v;
    }
    return std::sqrt(sum);
}

IntervalResult bj_interval(const ForecastResult& forecast, const VectorXd& ar_coef, double sigma_e,
                           double alpha) {
    require_alpha(alpha);
    const double z = std::abs(normal_quantile(alpha / 2.0));
    const Index h_len = forecast.horizon();
    IntervalResult out{VectorXd(h_len), VectorXd(h_len), alpha, IntervalKind::BJ};
    for (Index h = 0; h < h_len; ++h) {
        const double half = z * companion_weight(ar_coef, static_cast<int>(h + 1)) * sigma_e;
        out.lower(h) = forecast.point(h) - half;
        out.upper(h) = forecast.point(h) + half;
    }
    return out;
}

IntervalResult bj_interval(const ForecastResult& forecast, const JointFit& fit, double alpha) {
    return bj_interval(forecast, fit.alpha, fit.sigma_e, alpha);
}

IntervalResult bj_interval(const ForecastResult& forecast, const ArxFit& fit, double alpha) {
    return bj_interval(forecast, fit.alpha, fit.sigma_e, alpha);
}

double empirical_quantile(std::vector<double> values, double p, QuantileRule rule) {
    if (values.empty()) throw Error(ErrorCode::InvalidArgument, "quantile of an empty sample");
    std::sort(values.begin(), values.end());
    const auto n = static_cast<double>(values.size());
    if (rule == QuantileRule::Type1) {
        // Small slack keeps exact products such as 500 * 0.025 = 12.5 stable under rounding.
        auto idx = static_cast<std::size_t>(std::ceil(n * p - 1e-9));
        idx = std::clamp<std::size_t>(idx, 1, values.size());
        return values[idx - 1];
    }
    const double pos = (n - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

BootstrapDraws bootstrap_errors(const JointFit& fit, const History& history,
                                const FutureExogenous& future, Index horizon,
                                const BootstrapConfig& config) {
    if (config.B < 1) throw Error(ErrorCode::InvalidArgument, "bootstrap needs B >= 1");
    const Index t_len = history.y.size();
    const Index total = t_len + horizon;
    const int q1 = fit.q1;

    // Surrogate innovations stay at their original-fit values for every replicate.
    const VectorXd drift_future = joint_drift(fit, history.ys, future, horizon);
    const MatrixXd z_all = stack_rows(history.z, future.z, fit.theta.size() > 0 ? horizon : 0);
    const MatrixXd x_all = stack_rows(history.x, future.x, fit.delta.size() > 0 ? horizon : 0);
    MatrixXd ys_all(total, history.ys.cols());
    ys_all << history.ys, future.ys.topRows(horizon);
    MatrixXd d_all = MatrixXd::Zero(total, ys_all.cols());
    for (Index t = fit.q2; t < total; ++t) d_all.row(t) = d_residual(ys_all, fit.surrogate, t).transpose();

    VectorXd drift(total);
    drift.setZero();
    for (Index t = q1; t < t_len; ++t) {
        double v = fit.gamma.dot(d_all.row(t).transpose());
        if (fit.theta.size() > 0) v += z_all.row(t).dot(fit.theta);
        if (fit.delta.size() > 0) v += x_all.row(t).dot(fit.delta);
        drift(t) = v;
    }
    drift.tail(horizon) = drift_future;

    const VectorXd centered = fit.residuals.array() - fit.residuals.mean();
    const auto pool_size = static_cast<std::uint64_t>(centered.size());
    if (pool_size == 0) throw Error(ErrorCode::InsufficientSample, "no residuals to resample");

    const MatrixXd z_hist = z_all.topRows(t_len);
    const MatrixXd x_hist = x_all.topRows(t_len);
    const MatrixXd d_hist = d_all.topRows(t_len);

    const auto replicates = static_cast<std::size_t>(config.B);
    MatrixXd errors(config.B, horizon);
    std::vector<char> ok(replicates, 0);

    parallel_for(replicates, config.threads, [&](std::size_t b) {
        Rng rng = make_rng(config.seed, {static_cast<std::uint64_t>(b)});
        std::uniform_int_distribution<std::uint64_t> pick(0, pool_size - 1);
        auto draw = [&] { return centered(static_cast<Index>(pick(rng))); };

        VectorXd y_star(total);
        if (config.burn_in) {
            VectorXd warm = VectorXd::Zero(kWarmupSteps + q1);
            for (Index t = 0; t < warm.size(); ++t) {
                double v = draw();
                for (int l = 1; l <= q1 && t - l >= 0; ++l) v += fit.alpha(l - 1) * warm(t - l);
                warm(t) = v;
            }
            y_star.head(q1) = warm.tail(q1);
        } else {
            for (Index t = 0; t < q1; ++t) y_star(t) = draw();
        }
        for (Index t = q1; t < total; ++t) {
            double v = drift(t) + draw();
            for (int l = 1; l <= q1; ++l) v += fit.alpha(l - 1) * y_star(t - l);
            y_star(t) = v;
        }

        TargetStage refit;
        try {
            refit = fit_target_stage(y_star.head(t_len), z_hist, x_hist, d_hist, q1);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::RankDeficient) throw;
            return;
        }
        VectorXd boot_drift(horizon);
        for (Index h = 0; h < horizon; ++h) {
            const Index t = t_len + h;
            double v = refit.gamma.dot(d_all.row(t).transpose());
            if (refit.theta.size() > 0) v += z_all.row(t).dot(refit.theta);
            if (refit.delta.size() > 0) v += x_all.row(t).dot(refit.delta);
            boot_drift(h) = v;
        }
        const VectorXd point = roll_forward(refit.alpha, y_star.head(t_len), boot_drift);
        errors.row(static_cast<Index>(b)) = (y_star.tail(horizon) - point).transpose();
        ok[b] = 1;
    });

    BootstrapDraws out;
    out.failed = static_cast<int>(std::count(ok.begin(), ok.end(), 0));
    if (out.failed > kMaxFailureShare * config.B) {
        throw Error(ErrorCode::BootstrapUnstable,
                    std::to_string(out.failed) + " of " + std::to_string(config.B) +
                        " bootstrap refits were singular");
    }
    out.errors.resize(config.B - out.failed, horizon);
    Index row = 0;
    for (std::size_t b = 0; b < replicates; ++b) {
        if (ok[b]) out.errors.row(row++) = errors.row(static_cast<Index>(b));
    }
    return out;
}

IntervalResult boot_interval(const ForecastResult& forecast, const BootstrapDraws& draws,
                             double alpha, QuantileRule rule) {
    require_alpha(alpha);
    const Index h_len = forecast.horizon();
    if (draws.errors.cols() < h_len || draws.errors.rows() < 1) {
        throw Error(ErrorCode::InvalidArgument, "bootstrap draws do not cover the horizon");
    }
    IntervalResult out{VectorXd(h_len), VectorXd(h_len), alpha, IntervalKind::BOOT};
    for (Index h = 0; h < h_len; ++h) {
        std::vector<double> col(draws.errors.col(h).data(),
                                draws.errors.col(h).data() + draws.errors.rows());
        out.lower(h) = forecast.point(h) + empirical_quantile(col, alpha / 2.0, rule);
        out.upper(h) = forecast.point(h) + empirical_quantile(std::move(col), 1.0 - alpha / 2.0, rule);
    }
    return out;
}

IntervalResult boot_interval(const JointFit& fit, const History& history,
                             const FutureExogenous& future, Index horizon,
                             const BootstrapConfig& config, double alpha) {
    if (config.B < 100) throw Error(ErrorCode::InvalidArgument, "bootstrap intervals need B >= 100");
    const ForecastResult forecast = forecast_joint(fit, history, future, horizon);
    const BootstrapDraws draws = bootstrap_errors(fit, history, future, horizon, config);
    return boot_interval(forecast, draws, alpha, config.quantile_rule);
}

double efficiency_gain(double sigma_tt, const VectorXd& sigma_ts, const MatrixXd& sigma_ss) {
    const Index k = sigma_ts.size();
    if (sigma_ss.rows() != k || sigma_ss.cols() != k) {
        throw Error(ErrorCode::InvalidArgument, "covariance blocks have inconsistent sizes");
    }
    if (!(sigma_tt > 0.0)) throw Error(ErrorCode::InvalidCovariance, "target variance must be positive");
    if (!sigma_ss.isApprox(sigma_ss.transpose(), 1e-12)) {
        throw Error(ErrorCode::InvalidCovariance, "surrogate covariance is not symmetric");
    }
    Eigen::LLT<MatrixXd> llt(sigma_ss);
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::InvalidCovariance, "surrogate covariance is not positive definite");
    }
    const double explained = sigma_ts.dot(llt.solve(sigma_ts));
    const double residual = sigma_tt - explained;
    if (!(residual > 1e-12 * sigma_tt)) {
        throw Error(ErrorCode::InvalidCovariance, "joint covariance is not positive definite");
    }
    return sigma_tt / residual;
}

}  // namespace surrox
