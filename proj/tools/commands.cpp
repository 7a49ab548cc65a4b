#include "commands.hpp"

#include "surrox/csv_io.hpp"
#include "surrox/errors.hpp"
#include "surrox/estimator.hpp"
#include "surrox/fit_io.hpp"
#include "surrox/forecaster.hpp"
#include "surrox/inference.hpp"
#include "surrox/model_select.hpp"
#include "surrox/panel.hpp"
#include "surrox/simulation.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace surrox::cli {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

int exit_code(ErrorCode code) {
    switch (category(code)) {
        case ErrorCategory::Usage: return 2;
        case ErrorCategory::Data: return 3;
        case ErrorCategory::Numerical: return 4;
    }
    return 3;
}

void error_line(std::ostream& err, std::string_view code, const std::string& detail) {
    nlohmann::json j;
    j["code"] = code;
    j["detail"] = detail;
    err << j.dump() << '\n';
}

[[noreturn]] void usage(const std::string& detail) { throw Error(ErrorCode::InvalidArgument, detail); }

/// Writes to `path` when given, otherwise to the fallback stream.
void emit(const std::optional<std::string>& path, std::ostream& fallback,
          const std::function<void(std::ostream&)>& body) {
    if (!path) {
        body(fallback);
        return;
    }
    std::ofstream file(*path, std::ios::binary);
    if (!file) throw Error(ErrorCode::ParseError, "cannot write '" + *path + "'");
    body(file);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            usage(std::string("cannot parse ") + what + " entry '" + item + "'");
        }
    }
    if (out.empty()) usage(std::string(what) + " is empty");
    return out;
}

Method method_from(std::string text) {
    for (char& c : text) c = c == '-' ? '_' : c;
    auto m = parse_method(text);
    if (!m) usage("unknown method '" + text + "'");
    return *m;
}

FitDocument load_fit(const std::string& path) { return fit_from_json(slurp(path)); }

/// Future rows must start the month after the fit's last month.
void check_future_months(const FitDocument& doc, const FutureTable& future) {
    if (doc.months.empty() || future.times.empty()) return;
    const Month expected = doc.months.back() + std::chrono::months{1};
    if (future.times.front() != expected) {
        throw Error(ErrorCode::PanelMismatch, "future file starts at " + format_month(future.times.front()) +
                                                  ", expected " + format_month(expected));
    }
}

void write_points(std::ostream& out, const VectorXd& point) {
    out << "h,point\n";
    for (Index h = 0; h < point.size(); ++h) out << (h + 1) << ',' << format_double(point(h)) << '\n';
}

IntervalResult make_interval(const FitDocument& doc, const FutureExogenous& future, Index horizon,
                             const std::string& method, double alpha, const BootstrapConfig& cfg,
                             const ForecastResult& point) {
    if (method == "bj") return bj_interval(point, doc.fit, alpha);
    if (method == "boot") {
        if (cfg.B < 100) usage("bootstrap intervals need --B >= 100");
        const BootstrapDraws draws = bootstrap_errors(doc.fit, doc.history, future, horizon, cfg);
        return boot_interval(point, draws, alpha, cfg.quantile_rule);
    }
    usage("interval method must be bj or boot, got '" + method + "'");
}

// --- subcommand option blocks ------------------------------------------------

struct FitOpts {
    std::string monthly, surrogate;
    int q1 = 2, q2 = 1;
    std::optional<std::string> out, residuals;
};

struct ForecastOpts {
    std::string fit, future;
    int H = 1;
    std::string method = "llmcpi";
    int ar_max_order = 4;
    std::optional<std::string> out;
};

struct IntervalOpts {
    std::string fit, future;
    int H = 1;
    std::string method = "bj";
    std::string model = "llmcpi";
    double alpha = 0.05;
    int B = 500;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string quantile = "type1";
    bool burn_in = false;
    int ar_max_order = 4;
    std::optional<std::string> out;
};

struct PipelineOpts {
    std::string fit, future;
    int H = 1;
    std::string methods = "bj,boot";
    double alpha = 0.05;
    int B = 500;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::optional<std::string> out;
};

struct SelectOpts {
    std::string monthly;
    int q_max = 4;
    bool rank_once = false;
    std::optional<Index> train;
    std::optional<std::string> out;
};

struct SimulateOpts {
    std::string rho_grid = "0.1,0.2,0.3,0.4";
    std::string h_grid = "8,9,10,11,12,13,14,15";
    int Q = 500;
    std::uint64_t seed = 0;
    std::string variant = "base";
    std::string methods = "llmcpi,ar,rw,ave,text_arx";
    int B = 500;
    double alpha = 0.05;
    Index total_months = 60;
    std::optional<Index> train_length;
    bool no_boot = false;
    bool no_bj = false;
    unsigned threads = 1;
    std::optional<std::string> out;
};

struct EfficiencyOpts {
    double sigma_tt = 1.0;
    std::optional<std::string> sigma_ts, sigma_ss;
    std::optional<double> rho;
    Index K = 3;
    bool monte_carlo = false;
    Index T = 2000;
    int Q = 500;
    Index eval_points = 20;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct AggregateOpts {
    std::string daily;
    int periods = 3;
    std::optional<std::string> out;
};

struct StandardizeOpts {
    std::string input;
    std::string column = "y";
    std::string mode = "cpi";
    double base = 100.0;
    std::optional<std::size_t> holdout;
    bool full_window = false;
    std::optional<std::string> out;
};

// --- subcommand bodies -------------------------------------------------------

void cmd_fit(const FitOpts& o, std::ostream& out) {
    const MonthlyPanel monthly = read_monthly_csv(o.monthly);
    const SurrogatePanel surrogate = read_surrogate_csv(o.surrogate);
    require_aligned(monthly, surrogate);
    FitDocument doc{fit_joint(monthly, surrogate, o.q1, o.q2), monthly.times(),
                    History::from(monthly, surrogate)};
    const std::string text = to_json(doc);
    emit(o.out, out, [&](std::ostream& s) { s << text; });
    if (o.residuals) {
        emit(o.residuals, out, [&](std::ostream& s) {
            s << "month,period,target_residual,surrogate_residual\n";
            for (const ResidualPair& p : residual_pairs(doc.fit)) {
                s << format_month(doc.months[static_cast<std::size_t>(p.month)]) << ',' << (p.period + 1)
                  << ',' << format_double(p.target) << ',' << format_double(p.surrogate) << '\n';
            }
        });
    }
}

ForecastResult point_forecast(const FitDocument& doc, const FutureExogenous& future, Index horizon,
                              Method method, int ar_max_order, std::optional<ArxFit>* ar_fit = nullptr) {
    const History& h = doc.history;
    switch (method) {
        case Method::LLMCPI: return forecast_joint(doc.fit, h, future, horizon);
        case Method::AR: {
            ArxFit fit = fit_arx(h.y, MatrixXd(h.y.size(), 0), select_ar_order(h.y, ar_max_order));
            ForecastResult r = forecast_arx(fit, h.y, MatrixXd(horizon, 0), horizon, Method::AR);
            if (ar_fit) *ar_fit = std::move(fit);
            return r;
        }
        case Method::ARX: {
            const ArxFit fit = fit_arx(h.y, h.z, doc.fit.q1);
            return forecast_arx(fit, h.y, future.z, horizon, Method::ARX);
        }
        case Method::TEXT_ARX: {
            MatrixXd exog(h.y.size(), h.z.cols() + h.x.cols());
            exog << h.z, h.x;
            const ArxFit fit = fit_arx(h.y, exog, doc.fit.q1);
            if (future.z.cols() != h.z.cols() || future.x.cols() != h.x.cols() ||
                (exog.cols() > 0 && (future.z.rows() < horizon && h.z.cols() > 0)) ||
                (h.x.cols() > 0 && future.x.rows() < horizon)) {
                throw Error(ErrorCode::MissingExogenous, "future file lacks the fitted z/x columns");
            }
            MatrixXd fut(horizon, exog.cols());
            if (h.z.cols() > 0) fut.leftCols(h.z.cols()) = future.z.topRows(horizon);
            if (h.x.cols() > 0) fut.rightCols(h.x.cols()) = future.x.topRows(horizon);
            return forecast_arx(fit, h.y, fut, horizon, Method::TEXT_ARX);
        }
        case Method::RW: return forecast_rw(h.y, horizon);
        case Method::AVE: return forecast_ave(h.y, horizon);
    }
    usage("unsupported method");
}

void cmd_forecast(const ForecastOpts& o, std::ostream& out) {
    const FitDocument doc = load_fit(o.fit);
    const FutureTable future = read_future_csv(o.future);
    check_future_months(doc, future);
    const ForecastResult r = point_forecast(doc, future.values, o.H, method_from(o.method), o.ar_max_order);
    emit(o.out, out, [&](std::ostream& s) { write_points(s, r.point); });
}

QuantileRule quantile_from(const std::string& text) {
    if (text == "type1") return QuantileRule::Type1;
    if (text == "type7") return QuantileRule::Type7;
    usage("quantile rule must be type1 or type7");
}

void cmd_interval(const IntervalOpts& o, std::ostream& out) {
    const FitDocument doc = load_fit(o.fit);
    const FutureTable future = read_future_csv(o.future);
    check_future_months(doc, future);
    BootstrapConfig cfg;
    cfg.B = o.B;
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    cfg.burn_in = o.burn_in;
    cfg.quantile_rule = quantile_from(o.quantile);

    IntervalResult interval;
    ForecastResult point;
    if (o.model == "ar") {
        if (o.method != "bj") usage("the AR baseline only has the normal-theory interval (--method bj)");
        std::optional<ArxFit> ar;
        point = point_forecast(doc, future.values, o.H, Method::AR, o.ar_max_order, &ar);
        interval = bj_interval(point, *ar, o.alpha);
    } else if (o.model == "llmcpi") {
        point = forecast_joint(doc.fit, doc.history, future.values, o.H);
        interval = make_interval(doc, future.values, o.H, o.method, o.alpha, cfg, point);
    } else {
        usage("--model must be llmcpi or ar");
    }
    emit(o.out, out, [&](std::ostream& s) {
        s << "h,point,lower,upper\n";
        for (Index h = 0; h < point.horizon(); ++h) {
            s << (h + 1) << ',' << format_double(point.point(h)) << ',' << format_double(interval.lower(h))
              << ',' << format_double(interval.upper(h)) << '\n';
        }
    });
}

void cmd_pipeline(const PipelineOpts& o, std::ostream& out) {
    const FitDocument doc = load_fit(o.fit);
    const FutureTable future = read_future_csv(o.future);
    check_future_months(doc, future);
    BootstrapConfig cfg;
    cfg.B = o.B;
    cfg.seed = o.seed;
    cfg.threads = o.threads;

    std::vector<std::string> methods;
    std::stringstream ss(o.methods);
    for (std::string m; std::getline(ss, m, ',');) methods.push_back(m);
    if (methods.empty()) usage("--methods is empty");

    const ForecastResult point = forecast_joint(doc.fit, doc.history, future.values, o.H);
    std::vector<IntervalResult> intervals;
    for (const auto& m : methods) intervals.push_back(make_interval(doc, future.values, o.H, m, o.alpha, cfg, point));
    emit(o.out, out, [&](std::ostream& s) {
        s << "h,point,lower,upper,method\n";
        for (std::size_t i = 0; i < methods.size(); ++i) {
            for (Index h = 0; h < point.horizon(); ++h) {
                s << (h + 1) << ',' << format_double(point.point(h)) << ','
                  << format_double(intervals[i].lower(h)) << ',' << format_double(intervals[i].upper(h))
                  << ',' << methods[i] << '\n';
            }
        }
    });
}

void cmd_select(const SelectOpts& o, std::ostream& out) {
    const MonthlyPanel panel = read_monthly_csv(o.monthly);
    Index n = panel.length();
    if (o.train) {
        if (*o.train < 1 || *o.train > n) usage("--train must lie in 1..T");
        n = *o.train;
    }
    SelectionConfig cfg;
    cfg.q_max = o.q_max;
    cfg.rerank = !o.rank_once;
    const SelectionResult r = correlation_pursuit(panel.y().head(n), panel.x().topRows(n), cfg);

    // Step 0 is the AR baseline before any column enters.
    emit(o.out, out, [&](std::ostream& s) {
        s << "step,column,aic\n";
        s << "0,," << format_double(r.aic_path.front()) << '\n';
        for (std::size_t i = 0; i < r.chosen.size(); ++i) {
            s << (i + 1) << ",x_" << (r.chosen[i] + 1) << ',' << format_double(r.aic_path[i + 1]) << '\n';
        }
    });
}

void cmd_simulate(const SimulateOpts& o, std::ostream& out) {
    ExperimentGrid grid;
    grid.rhos = parse_list(o.rho_grid, "--rho-grid");
    grid.horizons.clear();
    for (double h : parse_list(o.h_grid, "--H-grid")) {
        if (h != static_cast<int>(h)) usage("--H-grid entries must be integers");
        grid.horizons.push_back(static_cast<int>(h));
    }
    auto variant = parse_variant(o.variant);
    if (!variant) usage("--variant must be base, omitted, overfit or student-t");
    grid.variant = *variant;
    grid.methods.clear();
    std::stringstream ss(o.methods);
    for (std::string m; std::getline(ss, m, ',');) grid.methods.push_back(method_from(m));
    grid.B = o.B;
    grid.alpha = o.alpha;
    grid.total_months = o.total_months;
    grid.train_length = o.train_length;
    grid.boot_intervals = !o.no_boot;
    grid.bj_intervals = !o.no_bj;
    if (grid.boot_intervals && grid.B < 100) usage("bootstrap intervals need --B >= 100");
    const SimulationReport report = run_experiment(grid, o.Q, o.seed, o.threads);
    emit(o.out, out, [&](std::ostream& s) { write_report_csv(report, s); });
}

MatrixXd parse_matrix(const std::string& text, Index k) {
    MatrixXd m(k, k);
    std::stringstream rows(text);
    Index i = 0;
    for (std::string row; std::getline(rows, row, ';'); ++i) {
        const auto vals = parse_list(row, "--sigma-ss");
        if (i >= k || static_cast<Index>(vals.size()) != k) usage("--sigma-ss must be K rows of K values");
        for (Index j = 0; j < k; ++j) m(i, j) = vals[static_cast<std::size_t>(j)];
    }
    if (i != k) usage("--sigma-ss must be K rows of K values");
    return m;
}

void cmd_efficiency(const EfficiencyOpts& o, std::ostream& out) {
    VectorXd ts;
    MatrixXd ss;
    if (o.rho) {
        if (o.sigma_ts || o.sigma_ss) usage("give either --rho or explicit covariance blocks");
        ts = VectorXd::Constant(o.K, *o.rho);
        ss = MatrixXd::Identity(o.K, o.K);
    } else {
        if (!o.sigma_ts) usage("need --rho or --sigma-ts");
        const auto v = parse_list(*o.sigma_ts, "--sigma-ts");
        ts = Eigen::Map<const VectorXd>(v.data(), static_cast<Index>(v.size()));
        ss = o.sigma_ss ? parse_matrix(*o.sigma_ss, ts.size()) : MatrixXd::Identity(ts.size(), ts.size());
    }
    out << "quantity,value\n";
    out << "theoretical," << format_double(efficiency_gain(o.sigma_tt, ts, ss)) << '\n';
    if (o.monte_carlo) {
        DgpSpec spec = reference_dgp(0.0, o.T);
        if (ts.size() != spec.periods()) usage("the Monte Carlo check uses the reference design with K = 3");
        spec.sigma.resize(ts.size() + 1, ts.size() + 1);
        spec.sigma(0, 0) = o.sigma_tt;
        spec.sigma.block(1, 0, ts.size(), 1) = ts;
        spec.sigma.block(0, 1, 1, ts.size()) = ts.transpose();
        spec.sigma.block(1, 1, ts.size(), ts.size()) = ss;
        const EfficiencyStudy st = efficiency_study(spec, 2, 1, o.Q, o.eval_points, o.seed, o.threads);
        out << "monte_carlo," << format_double(st.monte_carlo) << '\n';
        out << "errors," << st.errors << '\n';
    }
}

void cmd_aggregate(const AggregateOpts& o, std::ostream& out) {
    const SurrogatePanel panel = aggregate_daily(read_daily_csv(o.daily), o.periods);
    emit(o.out, out, [&](std::ostream& s) { write_surrogate_csv(panel, s); });
}

void cmd_standardize(const StandardizeOpts& o, std::ostream& out) {
    std::ifstream in(o.input);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + o.input + "'");
    const std::vector<double> raw = read_column_csv(in, o.column);
    std::optional<std::size_t> window;
    if (!o.full_window) {
        const std::size_t hold = o.holdout.value_or(0);
        if (hold >= raw.size()) usage("--holdout leaves no training rows");
        window = raw.size() - hold;
    } else if (o.holdout) {
        usage("--full-window and --holdout are exclusive");
    }
    Standardized s;
    if (o.mode == "cpi") s = standardize_cpi(raw, o.base, window);
    else if (o.mode == "z") s = standardize_z(raw, window);
    else usage("--mode must be cpi or z");
    emit(o.out, out, [&](std::ostream& f) {
        f << "row,raw,standardized,center,scale\n";
        for (std::size_t i = 0; i < raw.size(); ++i) {
            f << (i + 1) << ',' << format_double(raw[i]) << ',' << format_double(s.values(static_cast<Index>(i)))
              << ',' << format_double(s.center) << ',' << format_double(s.scale) << '\n';
        }
    });
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Surrogate-assisted forecasting with prediction intervals."};
    app.name("surrox");
    app.require_subcommand(1);

    FitOpts fit;
    auto* s_fit = app.add_subcommand("fit", "Two-step fit: surrogate VARX by least squares, then the target ARX with surrogate innovations as regressors.");
    s_fit->add_option("--monthly", fit.monthly, "Monthly panel CSV: month,y,z_*,x_*")->required();
    s_fit->add_option("--surrogate", fit.surrogate, "Surrogate panel CSV: month,ys_1..ys_K over the same months")->required();
    s_fit->add_option("--q1", fit.q1, "Autoregressive order of the target equation")->capture_default_str();
    s_fit->add_option("--q2", fit.q2, "Autoregressive order of the surrogate equation; must not exceed q1")->capture_default_str();
    s_fit->add_option("--out", fit.out, "Write the JSON fit document here instead of stdout");
    s_fit->add_option("--residuals", fit.residuals, "Also write paired target/surrogate residuals as CSV");

    ForecastOpts fc;
    auto* s_fc = app.add_subcommand("forecast", "Rolling H-step point forecasts from a fit document.");
    s_fc->add_option("--fit", fc.fit, "JSON fit document produced by 'fit'")->required();
    s_fc->add_option("--future", fc.future, "Future exogenous CSV: month,z_*,x_*,ys_* for the months after the fit")->required();
    s_fc->add_option("--H", fc.H, "Number of months ahead")->required()->check(CLI::PositiveNumber);
    s_fc->add_option("--method", fc.method, "llmcpi (joint model), ar, arx (macro covariates), text-arx (macro plus embeddings), rw or ave")->capture_default_str();
    s_fc->add_option("--ar-max-order", fc.ar_max_order, "Largest order tried when the AR baseline picks its lag by corrected AIC")->capture_default_str();
    s_fc->add_option("--out", fc.out, "Write CSV h,point here instead of stdout");

    IntervalOpts iv;
    auto* s_iv = app.add_subcommand("interval", "Point forecasts with prediction intervals.");
    s_iv->add_option("--fit", iv.fit, "JSON fit document produced by 'fit'")->required();
    s_iv->add_option("--future", iv.future, "Future exogenous CSV for the months after the fit")->required();
    s_iv->add_option("--H", iv.H, "Number of months ahead")->required()->check(CLI::PositiveNumber);
    s_iv->add_option("--method", iv.method, "bj: normal quantile times the accumulated companion weights times the residual scale; boot: quantiles of residual-bootstrap forecast errors")->capture_default_str();
    s_iv->add_option("--model", iv.model, "llmcpi (joint model) or ar (baseline, bj only)")->capture_default_str();
    s_iv->add_option("--alpha", iv.alpha, "Miscoverage level; intervals target 1 - alpha coverage")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    s_iv->add_option("--B", iv.B, "Bootstrap replicates (at least 100)")->capture_default_str();
    s_iv->add_option("--seed", iv.seed, "Seed of the bootstrap resampling streams")->capture_default_str();
    s_iv->add_option("--threads", iv.threads, "Worker threads for bootstrap replicates; output does not depend on it")->capture_default_str();
    s_iv->add_option("--quantile", iv.quantile, "Empirical quantile rule for bootstrap errors: type1 (order statistic) or type7 (interpolated)")->capture_default_str();
    s_iv->add_flag("--burn-in", iv.burn_in, "Start each bootstrap path from a warmed-up autoregression instead of raw resampled residuals");
    s_iv->add_option("--ar-max-order", iv.ar_max_order, "Largest order tried by the AR baseline")->capture_default_str();
    s_iv->add_option("--out", iv.out, "Write CSV h,point,lower,upper here instead of stdout");

    PipelineOpts pl;
    auto* s_pl = app.add_subcommand("pipeline", "Joint-model forecasts with one or more interval constructions in a single table.");
    s_pl->add_option("--fit", pl.fit, "JSON fit document produced by 'fit'")->required();
    s_pl->add_option("--future", pl.future, "Future exogenous CSV for the months after the fit")->required();
    s_pl->add_option("--H", pl.H, "Number of months ahead")->required()->check(CLI::PositiveNumber);
    s_pl->add_option("--methods", pl.methods, "Comma list of interval constructions, from bj and boot")->capture_default_str();
    s_pl->add_option("--alpha", pl.alpha, "Miscoverage level; intervals target 1 - alpha coverage")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    s_pl->add_option("--B", pl.B, "Bootstrap replicates (at least 100)")->capture_default_str();
    s_pl->add_option("--seed", pl.seed, "Seed of the bootstrap resampling streams")->capture_default_str();
    s_pl->add_option("--threads", pl.threads, "Worker threads for bootstrap replicates")->capture_default_str();
    s_pl->add_option("--out", pl.out, "Write CSV h,point,lower,upper,method here instead of stdout");

    SelectOpts sel;
    auto* s_sel = app.add_subcommand("select", "Correlation pursuit: forward selection of embedding columns stopped by the corrected AIC.");
    s_sel->add_option("--monthly", sel.monthly, "Monthly panel CSV; candidates are its x_* columns")->required();
    s_sel->add_option("--q-max", sel.q_max, "Largest autoregressive order tried for the baseline model")->capture_default_str();
    s_sel->add_flag("--rank-once", sel.rank_once, "Rank candidates once against the AR residuals instead of re-ranking after each accepted column");
    s_sel->add_option("--train", sel.train, "Use only the first N months (the training window)");
    s_sel->add_option("--out", sel.out, "Write CSV step,column,aic here instead of stdout; step 0 is the AR baseline");

    SimulateOpts sim;
    auto* s_sim = app.add_subcommand("simulate", "Monte Carlo study on the synthetic reference design.");
    s_sim->add_option("--rho-grid", sim.rho_grid, "Comma list of correlations between target and surrogate innovations")->capture_default_str();
    s_sim->add_option("--H-grid", sim.h_grid, "Comma list of forecast horizons; the last H months are held out")->capture_default_str();
    s_sim->add_option("--Q", sim.Q, "Monte Carlo repetitions per cell")->capture_default_str()->check(CLI::PositiveNumber);
    s_sim->add_option("--seed", sim.seed, "Master seed; every repetition and bootstrap stream derives from it")->capture_default_str();
    s_sim->add_option("--variant", sim.variant, "base, omitted (drop the second embedding column when fitting), overfit (extra noise columns in the surrogate equation) or student-t (t errors with 10 df)")->capture_default_str();
    s_sim->add_option("--methods", sim.methods, "Comma list of point methods; AR is always run as the baseline")->capture_default_str();
    s_sim->add_option("--B", sim.B, "Bootstrap replicates per interval")->capture_default_str();
    s_sim->add_option("--alpha", sim.alpha, "Miscoverage level of the intervals")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    s_sim->add_option("--total-months", sim.total_months, "Months per sample path; training length is this minus H")->capture_default_str();
    s_sim->add_option("--train-length", sim.train_length, "Fixed training length for every horizon");
    s_sim->add_flag("--no-boot", sim.no_boot, "Skip bootstrap intervals");
    s_sim->add_flag("--no-bj", sim.no_bj, "Skip normal-theory intervals");
    s_sim->add_option("--threads", sim.threads, "Worker threads over repetitions; the report does not depend on it")->capture_default_str();
    s_sim->add_option("--out", sim.out, "Write the report CSV (variant,rho,H,method,metric,value) here instead of stdout");

    EfficiencyOpts eff;
    auto* s_eff = app.add_subcommand("efficiency", "Prediction-error variance ratio without versus with the surrogate.");
    s_eff->add_option("--sigma-tt", eff.sigma_tt, "Variance of the target innovation")->capture_default_str();
    s_eff->add_option("--sigma-ts", eff.sigma_ts, "Comma list: covariance of the target innovation with each surrogate innovation");
    s_eff->add_option("--sigma-ss", eff.sigma_ss, "Surrogate innovation covariance, rows separated by ';' (default identity)");
    s_eff->add_option("--rho", eff.rho, "Shorthand: identity surrogate covariance and equal covariance rho with the target");
    s_eff->add_option("--K", eff.K, "Surrogate dimension used with --rho")->capture_default_str();
    s_eff->add_flag("--monte-carlo", eff.monte_carlo, "Also estimate the ratio by simulation with one-step forecasts");
    s_eff->add_option("--T", eff.T, "Training months per simulated path")->capture_default_str();
    s_eff->add_option("--Q", eff.Q, "Simulated paths")->capture_default_str();
    s_eff->add_option("--eval-points", eff.eval_points, "One-step forecast origins scored per path")->capture_default_str();
    s_eff->add_option("--seed", eff.seed, "Simulation seed")->capture_default_str();
    s_eff->add_option("--threads", eff.threads, "Worker threads over paths")->capture_default_str();

    AggregateOpts agg;
    auto* s_agg = app.add_subcommand("aggregate-daily", "Average a daily index into K blocks per month.");
    s_agg->add_option("--daily", agg.daily, "Daily CSV: date,score")->required();
    s_agg->add_option("--periods", agg.periods, "Blocks per month; 3 gives days 1-10, 11-20 and 21-end")->capture_default_str()->check(CLI::PositiveNumber);
    s_agg->add_option("--out", agg.out, "Write the surrogate CSV here instead of stdout");

    StandardizeOpts st;
    auto* s_st = app.add_subcommand("standardize", "Center and scale one column of a CSV.");
    s_st->add_option("--input", st.input, "CSV file to read")->required();
    s_st->add_option("--column", st.column, "Column to transform")->capture_default_str();
    s_st->add_option("--mode", st.mode, "cpi: subtract --base then divide by the sd; z: subtract the mean then divide by the sd")->capture_default_str();
    s_st->add_option("--base", st.base, "Reference level subtracted in cpi mode")->capture_default_str();
    s_st->add_option("--holdout", st.holdout, "Trailing rows excluded when computing the center and scale (avoids look-ahead)");
    s_st->add_flag("--full-window", st.full_window, "Compute the scale on every row, including any test period");
    s_st->add_option("--out", st.out, "Write CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        // Help requested on a subcommand surfaces here too.
        if (e.get_exit_code() == 0) {
            for (auto* sub : app.get_subcommands()) out << sub->help();
            if (app.get_subcommands().empty()) out << app.help();
            return 0;
        }
        error_line(err, "InvalidArgument", e.what());
        return 2;
    }

    try {
        if (s_fit->parsed()) cmd_fit(fit, out);
        else if (s_fc->parsed()) cmd_forecast(fc, out);
        else if (s_iv->parsed()) cmd_interval(iv, out);
        else if (s_pl->parsed()) cmd_pipeline(pl, out);
        else if (s_sel->parsed()) cmd_select(sel, out);
        else if (s_sim->parsed()) cmd_simulate(sim, out);
        else if (s_eff->parsed()) cmd_efficiency(eff, out);
        else if (s_agg->parsed()) cmd_aggregate(agg, out);
        else if (s_st->parsed()) cmd_standardize(st, out);
    } catch (const Error& e) {
        error_line(err, to_string(e.code()), e.detail());
        return exit_code(e.code());
    } catch (const std::exception& e) {
        error_line(err, "InternalError", e.what());
        return 4;
    }
    return 0;
}

}  // namespace surrox::cli
