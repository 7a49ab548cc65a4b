#include "surrox/simulation.hpp"

#include "surrox/errors.hpp"
#include "surrox/inference.hpp"
#include "surrox/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <string>

namespace surrox {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr std::uint64_t kNuisanceStream = 0x6E75697361ULL;
constexpr std::uint64_t kBootstrapStream = 0x626F6F74ULL;
const Month kFirstMonth = std::chrono::year{2019} / std::chrono::January;

MatrixXd surrogate_companion(const std::vector<MatrixXd>& a) {
    if (a.empty()) return MatrixXd(0, 0);
    const Index k = a.front().rows();
    const Index q = static_cast<Index>(a.size());
    MatrixXd c = MatrixXd::Zero(k * q, k * q);
    for (Index l = 0; l < q; ++l) c.block(0, l * k, k, k) = a[static_cast<std::size_t>(l)];
    if (q > 1) c.block(k, 0, k * (q - 1), k * (q - 1)).setIdentity();
    return c;
}

/// Next value of a unit-variance AR(1) column.
double ar1_step(double prev, double phi, double shock) {
    return phi * prev + std::sqrt(1.0 - phi * phi) * shock;
}

MatrixXd drop_column(const MatrixXd& m, Index col) {
    MatrixXd out(m.rows(), m.cols() - 1);
    out << m.leftCols(col), m.rightCols(m.cols() - col - 1);
    return out;
}

MatrixXd hcat(const MatrixXd& a, const MatrixXd& b) {
    MatrixXd out(a.rows(), a.cols() + b.cols());
    out << a, b;
    return out;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct IntervalStore {
    MatrixXd lower;
    MatrixXd upper;
};

/// Q x H outcomes of one (rho, H) cell.
struct CellStore {
    MatrixXd truth;
    std::vector<MatrixXd> points;        // aligned with point method names
    std::vector<IntervalStore> intervals;  // aligned with interval names
};

struct CellLayout {
    std::vector<Method> point_methods;  // AR is always present: it is the baseline
    bool llmcpi_bj = false;
    bool llmcpi_boot = false;
    bool ar_bj = false;

    std::vector<std::string> interval_names() const {
        std::vector<std::string> out;
        if (llmcpi_bj) out.emplace_back("LLMCPI_BJ");
        if (llmcpi_boot) out.emplace_back("LLMCPI_BOOT");
        if (ar_bj) out.emplace_back("AR_BJ");
        return out;
    }
};

CellLayout make_layout(const ExperimentGrid& grid) {
    CellLayout layout;
    for (Method m : grid.methods) {
        if (std::find(layout.point_methods.begin(), layout.point_methods.end(), m) ==
            layout.point_methods.end()) {
            layout.point_methods.push_back(m);
        }
    }
    if (std::find(layout.point_methods.begin(), layout.point_methods.end(), Method::AR) ==
        layout.point_methods.end()) {
        layout.point_methods.push_back(Method::AR);
    }
    const bool joint = std::find(grid.methods.begin(), grid.methods.end(), Method::LLMCPI) !=
                       grid.methods.end();
    layout.llmcpi_bj = joint && grid.bj_intervals;
    layout.llmcpi_boot = joint && grid.boot_intervals;
    layout.ar_bj = grid.bj_intervals;
    return layout;
}

/// Full simulated arrays for one repetition at one rho.
struct RepData {
    VectorXd y;      // target, possibly with poisoned holdout rows
    MatrixXd z;
    MatrixXd x;      // target-equation exogenous columns after the variant toggle
    MatrixXd xs;     // surrogate-equation exogenous columns
    MatrixXd ys;
};

struct CellForecasts {
    std::vector<VectorXd> points;
    std::vector<IntervalResult> intervals;
};

CellForecasts evaluate_cell(const RepData& data, Index train, Index horizon,
                            const ExperimentGrid& grid, const CellLayout& layout,
                            std::uint64_t boot_seed) {
    // Everything below sees rows [0, train) of the target only.
    const VectorXd y = data.y.head(train);
    const MatrixXd z = data.z.topRows(train);
    const MatrixXd x = data.x.topRows(train);
    const MatrixXd xs = data.xs.topRows(train);
    const MatrixXd ys = data.ys.topRows(train);
    FutureExogenous future{data.z.middleRows(train, horizon), data.x.middleRows(train, horizon),
                           data.ys.middleRows(train, horizon)};

    CellForecasts out;
    std::optional<JointFit> joint;
    std::optional<ForecastResult> joint_point;
    std::optional<ArxFit> ar_fit;
    std::optional<ForecastResult> ar_point;
    const History history{y, z, x, ys};

    for (Method m : layout.point_methods) {
        switch (m) {
            case Method::LLMCPI: {
                joint = fit_joint(JointData{y, z, x, ys, xs}, grid.q1, grid.q2);
                joint_point = forecast_joint(*joint, history, future, horizon);
                out.points.push_back(joint_point->point);
                break;
            }
            case Method::AR: {
                const int q = select_ar_order(y, grid.ar_max_order);
                ar_fit = fit_arx(y, MatrixXd(train, 0), q);
                ar_point = forecast_arx(*ar_fit, y, MatrixXd(horizon, 0), horizon, Method::AR);
                out.points.push_back(ar_point->point);
                break;
            }
            case Method::ARX: {
                const ArxFit fit = fit_arx(y, z, grid.q1);
                out.points.push_back(forecast_arx(fit, y, future.z, horizon, m).point);
                break;
            }
            case Method::TEXT_ARX: {
                const MatrixXd exog = hcat(z, x);
                const ArxFit fit = fit_arx(y, exog, grid.q1);
                out.points.push_back(
                    forecast_arx(fit, y, hcat(future.z, future.x), horizon, m).point);
                break;
            }
            case Method::RW:
                out.points.push_back(forecast_rw(y, horizon).point);
                break;
            case Method::AVE:
                out.points.push_back(forecast_ave(y, horizon).point);
                break;
        }
    }

    if (layout.llmcpi_bj) out.intervals.push_back(bj_interval(*joint_point, *joint, grid.alpha));
    if (layout.llmcpi_boot) {
        BootstrapConfig cfg;
        cfg.B = grid.B;
        cfg.seed = boot_seed;
        const BootstrapDraws draws = bootstrap_errors(*joint, history, future, horizon, cfg);
        out.intervals.push_back(boot_interval(*joint_point, draws, grid.alpha, cfg.quantile_rule));
    }
    if (layout.ar_bj) out.intervals.push_back(bj_interval(*ar_point, *ar_fit, grid.alpha));
    return out;
}

double guarded(double (*metric)(const MatrixXd&, const MatrixXd&, const MatrixXd&),
               const MatrixXd& f, const MatrixXd& truth, const MatrixXd& base) {
    try {
        return metric(f, truth, base);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::BaselineDegenerate) throw;
        return std::numeric_limits<double>::quiet_NaN();
    }
}

}  // namespace

double spectral_radius(const MatrixXd& m) {
    if (m.size() == 0) return 0.0;
    Eigen::EigenSolver<MatrixXd> solver(m, false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

void validate(const DgpSpec& spec) {
    const Index k = spec.periods();
    const Index p = spec.beta.size();
    const Index d = spec.theta.size();
    if (spec.alpha.size() < 1 || spec.A.empty()) {
        throw Error(ErrorCode::InvalidArgument, "both equations need at least one lag");
    }
    if (spec.B.cols() != p || spec.x_gen.columns != p || spec.z_gen.columns != d) {
        throw Error(ErrorCode::InvalidArgument, "exogenous dimensions disagree");
    }
    for (const MatrixXd& a : spec.A) {
        if (a.rows() != k || a.cols() != k) {
            throw Error(ErrorCode::InvalidArgument, "surrogate lag matrices must be K x K");
        }
    }
    if (spec.sigma.rows() != k + 1 || spec.sigma.cols() != k + 1) {
        throw Error(ErrorCode::InvalidArgument, "innovation covariance must be (1 + K) square");
    }
    if (std::abs(spec.x_gen.phi) >= 1.0 || std::abs(spec.z_gen.phi) >= 1.0) {
        throw Error(ErrorCode::NonStationarySpec, "exogenous AR(1) coefficient must satisfy |phi| < 1");
    }
    if (spec.error_kind == ErrorKind::StudentT && !(spec.df > 2.0)) {
        throw Error(ErrorCode::InvalidArgument, "Student-t errors need df > 2");
    }
    if (spec.T < 1 || spec.burn_in < 0) throw Error(ErrorCode::InvalidArgument, "T must be positive");

    const double target_radius = spectral_radius(companion_matrix(spec.alpha));
    if (target_radius >= 1.0) {
        throw Error(ErrorCode::NonStationarySpec,
                    "target companion spectral radius " + format_number(target_radius) + " >= 1");
    }
    const double surrogate_radius = spectral_radius(surrogate_companion(spec.A));
    if (surrogate_radius >= 1.0) {
        throw Error(ErrorCode::NonStationarySpec,
                    "surrogate companion spectral radius " + format_number(surrogate_radius) + " >= 1");
    }
    if (!spec.sigma.isApprox(spec.sigma.transpose(), 1e-12)) {
        throw Error(ErrorCode::InvalidCovariance, "innovation covariance is not symmetric");
    }
    Eigen::LLT<MatrixXd> llt(spec.sigma);
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::InvalidCovariance, "innovation covariance is not positive definite");
    }
}

SimulatedData generate(const DgpSpec& spec) {
    Rng rng = make_rng(spec.seed, {});
    return generate(spec, rng);
}

SimulatedData generate(const DgpSpec& spec, Rng& rng) {
    validate(spec);
    const Index k = spec.periods();
    const Index p = spec.beta.size();
    const Index d = spec.theta.size();
    const Index q1 = spec.alpha.size();
    const auto q2 = static_cast<Index>(spec.A.size());
    const Index total = spec.burn_in + spec.T;
    const MatrixXd chol = Eigen::LLT<MatrixXd>(spec.sigma).matrixL();

    std::normal_distribution<double> normal(0.0, 1.0);
    std::chi_squared_distribution<double> chi2(spec.error_kind == ErrorKind::StudentT ? spec.df : 1.0);

    VectorXd y = VectorXd::Zero(total);
    MatrixXd ys = MatrixXd::Zero(total, k);
    MatrixXd x = MatrixXd::Zero(total, p);
    MatrixXd z = MatrixXd::Zero(total, d);
    MatrixXd eps(total, k + 1);
    VectorXd g(k + 1);

    for (Index t = 0; t < total; ++t) {
        for (Index j = 0; j < p; ++j) {
            x(t, j) = ar1_step(t > 0 ? x(t - 1, j) : 0.0, spec.x_gen.phi, normal(rng));
        }
        for (Index j = 0; j < d; ++j) {
            z(t, j) = ar1_step(t > 0 ? z(t - 1, j) : 0.0, spec.z_gen.phi, normal(rng));
        }
        for (Index j = 0; j <= k; ++j) g(j) = normal(rng);
        VectorXd e = chol * g;
        if (spec.error_kind == ErrorKind::StudentT) {
            // Scale mixture with covariance exactly sigma.
            e *= std::sqrt((spec.df - 2.0) / chi2(rng));
        }
        eps.row(t) = e.transpose();

        VectorXd s = e.tail(k);
        if (p > 0) s += spec.B * x.row(t).transpose();
        for (Index l = 1; l <= q2 && t - l >= 0; ++l) {
            s += spec.A[static_cast<std::size_t>(l - 1)] * ys.row(t - l).transpose();
        }
        ys.row(t) = s.transpose();

        double v = e(0);
        if (p > 0) v += x.row(t).dot(spec.beta);
        if (d > 0) v += z.row(t).dot(spec.theta);
        for (Index l = 1; l <= q1 && t - l >= 0; ++l) v += spec.alpha(l - 1) * y(t - l);
        y(t) = v;
    }

    auto months = month_range(kFirstMonth, spec.T);
    return SimulatedData{
        MonthlyPanel(months, y.tail(spec.T), z.bottomRows(spec.T), x.bottomRows(spec.T)),
        SurrogatePanel(months, ys.bottomRows(spec.T)),
        eps.bottomRows(spec.T),
    };
}

MatrixXd equicorrelated_sigma(double rho, Index periods) {
    MatrixXd s = MatrixXd::Constant(periods + 1, periods + 1, rho);
    s.diagonal().setOnes();
    return s;
}

MatrixXd isotropic_surrogate_sigma(double rho, Index periods) {
    MatrixXd s = MatrixXd::Identity(periods + 1, periods + 1);
    s.block(0, 1, 1, periods).setConstant(rho);
    s.block(1, 0, periods, 1).setConstant(rho);
    return s;
}

DgpSpec reference_dgp(double rho, Index T, ErrorKind kind) {
    DgpSpec spec;
    spec.alpha = (VectorXd(2) << 0.5, -0.3).finished();
    spec.theta = VectorXd(0);
    spec.beta = (VectorXd(2) << 0.7, -0.2).finished();
    MatrixXd a(3, 3);
    a << 0.2, 0.2, 0.2,
        -0.2, -0.2, -0.2,
        -0.1, -0.1, -0.1;
    spec.A = {a};
    spec.B.resize(3, 2);
    spec.B << 0.1, 0.1,
        -0.1, -0.1,
        -0.3, -0.3;
    spec.sigma = equicorrelated_sigma(rho, 3);
    spec.error_kind = kind;
    spec.df = 10.0;
    spec.T = T;
    return spec;
}

double rpmse(const MatrixXd& forecasts, const MatrixXd& truths, const MatrixXd& baseline) {
    if (forecasts.size() == 0 || forecasts.rows() != truths.rows() ||
        forecasts.cols() != truths.cols() || baseline.rows() != truths.rows() ||
        baseline.cols() != truths.cols()) {
        throw Error(ErrorCode::InvalidArgument, "forecast, truth and baseline shapes differ");
    }
    const double base = (baseline - truths).squaredNorm();
    if (!(base > 0.0)) throw Error(ErrorCode::BaselineDegenerate, "baseline has zero squared error");
    return std::sqrt((forecasts - truths).squaredNorm() / base);
}

double rsign(const MatrixXd& forecasts, const MatrixXd& truths, const MatrixXd& baseline) {
    if (forecasts.size() == 0 || forecasts.rows() != truths.rows() ||
        forecasts.cols() != truths.cols() || baseline.rows() != truths.rows() ||
        baseline.cols() != truths.cols()) {
        throw Error(ErrorCode::InvalidArgument, "forecast, truth and baseline shapes differ");
    }
    auto misses = [&](const MatrixXd& f) {
        Index n = 0;
        for (Index i = 0; i < f.size(); ++i) n += (f.data()[i] >= 0.0) != (truths.data()[i] >= 0.0);
        return static_cast<double>(n);
    };
    const double base = misses(baseline);
    if (base == 0.0) throw Error(ErrorCode::BaselineDegenerate, "baseline never misses a sign");
    return misses(forecasts) / base;
}

CoverageLength coverage_length(const MatrixXd& lower, const MatrixXd& upper, const MatrixXd& truths) {
    if (lower.size() == 0 || lower.rows() != truths.rows() || lower.cols() != truths.cols() ||
        upper.rows() != truths.rows() || upper.cols() != truths.cols()) {
        throw Error(ErrorCode::InvalidArgument, "interval and truth shapes differ");
    }
    const auto n = static_cast<double>(truths.size());
    const double inside =
        ((truths.array() >= lower.array()) && (truths.array() <= upper.array())).cast<double>().sum();
    return {inside / n, (upper - lower).cwiseAbs().sum() / n};
}

std::string to_string(Variant variant) {
    switch (variant) {
        case Variant::Base: return "base";
        case Variant::Omitted: return "omitted";
        case Variant::Overfit: return "overfit";
        case Variant::StudentT: return "student-t";
    }
    return "base";
}

std::optional<Variant> parse_variant(std::string_view text) {
    for (Variant v : {Variant::Base, Variant::Omitted, Variant::Overfit, Variant::StudentT}) {
        if (text == to_string(v)) return v;
    }
    return std::nullopt;
}

Index ExperimentGrid::train_length_for(int horizon) const {
    return train_length ? *train_length : total_months - horizon;
}

std::optional<double> SimulationReport::find(double rho, int horizon, std::string_view method,
                                             std::string_view metric) const {
    for (const ReportRow& r : rows) {
        if (std::abs(r.rho - rho) < 1e-12 && r.horizon == horizon && r.method == method &&
            r.metric == metric) {
            return r.value;
        }
    }
    return std::nullopt;
}

SimulationReport run_experiment(const ExperimentGrid& grid, int Q, std::uint64_t seed,
                                unsigned threads) {
    if (Q < 1) throw Error(ErrorCode::InvalidArgument, "Q must be >= 1");
    if (grid.rhos.empty() || grid.horizons.empty() || grid.methods.empty()) {
        throw Error(ErrorCode::InvalidArgument, "grid needs rho values, horizons and methods");
    }
    if (!(grid.alpha > 0.0 && grid.alpha < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1)");
    }
    if (grid.variant == Variant::Omitted && grid.x_gen.columns < 2) {
        throw Error(ErrorCode::InvalidArgument, "omitted-predictor variant needs two embedding columns");
    }
    Index needed = 0;
    for (int h : grid.horizons) {
        if (h < 1) throw Error(ErrorCode::InvalidArgument, "horizons must be >= 1");
        const Index train = grid.train_length_for(h);
        if (train < 1) throw Error(ErrorCode::InvalidArgument, "training window is empty");
        needed = std::max(needed, train + h);
    }

    const CellLayout layout = make_layout(grid);
    const std::vector<std::string> interval_names = layout.interval_names();
    const std::size_t n_rho = grid.rhos.size();
    const std::size_t n_h = grid.horizons.size();

    std::vector<CellStore> cells(n_rho * n_h);
    for (std::size_t r = 0; r < n_rho; ++r) {
        for (std::size_t hi = 0; hi < n_h; ++hi) {
            const int h = grid.horizons[hi];
            CellStore& cell = cells[r * n_h + hi];
            cell.truth.resize(Q, h);
            cell.points.assign(layout.point_methods.size(), MatrixXd(Q, h));
            cell.intervals.assign(interval_names.size(), IntervalStore{MatrixXd(Q, h), MatrixXd(Q, h)});
        }
    }

    parallel_for(static_cast<std::size_t>(Q), threads, [&](std::size_t rep) {
        const auto rep_id = static_cast<std::uint64_t>(rep);
        MatrixXd nuisance;
        if (grid.variant == Variant::Overfit) {
            Rng rng = make_rng(seed, {rep_id, kNuisanceStream});
            std::normal_distribution<double> normal(0.0, 1.0);
            nuisance.resize(needed, grid.overfit_columns);
            for (Index i = 0; i < nuisance.size(); ++i) nuisance.data()[i] = normal(rng);
        }
        for (std::size_t r = 0; r < n_rho; ++r) {
            const double rho = grid.rhos[r];
            DgpSpec spec = reference_dgp(rho, needed,
                                         grid.variant == Variant::StudentT ? ErrorKind::StudentT
                                                                           : ErrorKind::Gaussian);
            spec.df = grid.student_df;
            spec.burn_in = grid.burn_in;
            spec.x_gen.phi = grid.x_gen.phi;
            // Same stream at every rho: common random numbers across the grid.
            Rng rng = make_rng(seed, {rep_id});
            const SimulatedData sim = generate(spec, rng);

            RepData data;
            data.z = sim.monthly.z();
            data.ys = sim.surrogate.ys();
            data.x = sim.monthly.x();
            if (grid.variant == Variant::Omitted) data.x = drop_column(data.x, 1);
            data.xs = grid.variant == Variant::Overfit ? hcat(data.x, nuisance) : data.x;

            for (std::size_t hi = 0; hi < n_h; ++hi) {
                const int h = grid.horizons[hi];
                const Index train = grid.train_length_for(h);
                CellStore& cell = cells[r * n_h + hi];
                const VectorXd& y_true = sim.monthly.y();
                data.y = y_true.head(train + h);
                if (grid.poison_holdout) {
                    data.y.tail(h).setConstant(std::numeric_limits<double>::quiet_NaN());
                }
                cell.truth.row(static_cast<Index>(rep)) = y_true.segment(train, h).transpose();

                const std::uint64_t boot_seed =
                    derive_seed(seed, {rep_id, static_cast<std::uint64_t>(r),
                                       static_cast<std::uint64_t>(hi), kBootstrapStream});
                CellForecasts result;
                try {
                    result = evaluate_cell(data, train, h, grid, layout, boot_seed);
                } catch (const Error& e) {
                    throw Error(e.code(), e.detail() + " (rho=" + format_number(rho) +
                                              ", H=" + std::to_string(h) + ", rep=" +
                                              std::to_string(rep) + ", seed=" +
                                              std::to_string(seed) + ")");
                }
                for (std::size_t m = 0; m < result.points.size(); ++m) {
                    cell.points[m].row(static_cast<Index>(rep)) = result.points[m].transpose();
                }
                for (std::size_t i = 0; i < result.intervals.size(); ++i) {
                    cell.intervals[i].lower.row(static_cast<Index>(rep)) = result.intervals[i].lower.transpose();
                    cell.intervals[i].upper.row(static_cast<Index>(rep)) = result.intervals[i].upper.transpose();
                }
            }
        }
    });

    const auto baseline_pos = static_cast<std::size_t>(
        std::find(layout.point_methods.begin(), layout.point_methods.end(), Method::AR) -
        layout.point_methods.begin());
    const std::string variant = to_string(grid.variant);
    SimulationReport report;
    report.Q = Q;
    for (std::size_t r = 0; r < n_rho; ++r) {
        for (std::size_t hi = 0; hi < n_h; ++hi) {
            const CellStore& cell = cells[r * n_h + hi];
            const double rho = grid.rhos[r];
            const int h = grid.horizons[hi];
            const MatrixXd& base = cell.points[baseline_pos];
            for (std::size_t m = 0; m < layout.point_methods.size(); ++m) {
                const std::string name(to_string(layout.point_methods[m]));
                report.rows.push_back({variant, rho, h, name, "rpmse",
                                       guarded(&rpmse, cell.points[m], cell.truth, base)});
                report.rows.push_back({variant, rho, h, name, "rsign",
                                       guarded(&rsign, cell.points[m], cell.truth, base)});
            }
            for (std::size_t i = 0; i < interval_names.size(); ++i) {
                const CoverageLength cl =
                    coverage_length(cell.intervals[i].lower, cell.intervals[i].upper, cell.truth);
                report.rows.push_back({variant, rho, h, interval_names[i], "coverage", cl.coverage});
                report.rows.push_back({variant, rho, h, interval_names[i], "length", cl.length});
            }
        }
    }
    return report;
}

void write_report_csv(const SimulationReport& report, std::ostream& out) {
    out << "variant,rho,H,method,metric,value\n";
    for (const ReportRow& r : report.rows) {
        out << r.variant << ',' << format_number(r.rho) << ',' << r.horizon << ',' << r.method << ','
            << r.metric << ',' << format_number(r.value) << '\n';
    }
}

EfficiencyStudy efficiency_study(const DgpSpec& spec, int q1, int q2, int Q, Index eval_points,
                                 std::uint64_t seed, unsigned threads) {
    if (Q < 1 || eval_points < 1) {
        throw Error(ErrorCode::InvalidArgument, "efficiency study needs Q >= 1 and eval_points >= 1");
    }
    validate(spec);
    const Index k = spec.periods();
    const double sigma_tt = spec.sigma(0, 0);
    const VectorXd sigma_ts = spec.sigma.block(1, 0, k, 1);
    const MatrixXd sigma_ss = spec.sigma.block(1, 1, k, k);

    EfficiencyStudy out;
    out.theoretical = efficiency_gain(sigma_tt, sigma_ts, sigma_ss);

    std::vector<double> joint_sse(static_cast<std::size_t>(Q), 0.0);
    std::vector<double> arx_sse(static_cast<std::size_t>(Q), 0.0);
    DgpSpec full = spec;
    full.T = spec.T + eval_points;

    parallel_for(static_cast<std::size_t>(Q), threads, [&](std::size_t rep) {
        Rng rng = make_rng(seed, {static_cast<std::uint64_t>(rep)});
        const SimulatedData sim = generate(full, rng);
        const VectorXd& y = sim.monthly.y();
        const MatrixXd exog = hcat(sim.monthly.z(), sim.monthly.x());
        const MatrixXd& ys = sim.surrogate.ys();

        const JointFit joint = fit_joint(sim.monthly.head(spec.T), sim.surrogate.head(spec.T), q1, q2);
        const ArxFit arx = fit_arx(y.head(spec.T), exog.topRows(spec.T), q1);

        double js = 0.0;
        double as = 0.0;
        for (Index o = 0; o < eval_points; ++o) {
            const Index t = spec.T + o;
            double jp = joint.gamma.dot(d_residual(ys, joint.surrogate, t));
            if (joint.theta.size() > 0) jp += sim.monthly.z().row(t).dot(joint.theta);
            if (joint.delta.size() > 0) jp += sim.monthly.x().row(t).dot(joint.delta);
            for (int l = 1; l <= q1; ++l) jp += joint.alpha(l - 1) * y(t - l);
            double ap = exog.cols() > 0 ? exog.row(t).dot(arx.beta) : 0.0;
            for (int l = 1; l <= q1; ++l) ap += arx.alpha(l - 1) * y(t - l);
            js += (y(t) - jp) * (y(t) - jp);
            as += (y(t) - ap) * (y(t) - ap);
        }
        joint_sse[rep] = js;
        arx_sse[rep] = as;
    });

    double js = 0.0;
    double as = 0.0;
    for (std::size_t r = 0; r < joint_sse.size(); ++r) {
        js += joint_sse[r];
        as += arx_sse[r];
    }
    out.errors = static_cast<Index>(Q) * eval_points;
    out.monte_carlo = as / js;
    return out;
}

}  // namespace surrox
