#include "surrox/inference.hpp"
#include "surrox/simulation.hpp"

#include "support.hpp"

using namespace surrox;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST(CompanionWeight, FirstStepIsOne) {
    EXPECT_DOUBLE_EQ(companion_weight((VectorXd(3) << 0.9, -0.4, 0.2).finished(), 1), 1.0);
}

TEST(CompanionWeight, SecondOrderByHand) {
    const VectorXd a = (VectorXd(2) << 0.5, -0.3).finished();
    EXPECT_NEAR(test::companion_power_11(a, 2), -0.05, 1e-15);
    EXPECT_NEAR(companion_weight(a, 3), std::sqrt(1.0 + 0.25 + 0.0025), 1e-12);
    EXPECT_NEAR(companion_weight(a, 3), 1.11916, 1e-5);
}

TEST(CompanionWeight, ZeroCoefficients) {
    for (int h = 1; h <= 6; ++h) EXPECT_DOUBLE_EQ(companion_weight(VectorXd::Zero(3), h), 1.0);
}

TEST(CompanionWeight, AgreesWithDensePowers) {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    for (int rep = 0; rep < 200; ++rep) {
        const int q = 1 + rep % 5;
        VectorXd a(q);
        do {
            for (int i = 0; i < q; ++i) a(i) = u(rng) / q;
        } while (spectral_radius(companion_matrix(a)) >= 1.0);
        for (int h = 1; h <= 20; ++h) EXPECT_NEAR(companion_weight(a, h), test::dense_companion_weight(a, h), 1e-10);
    }
}

TEST(CompanionWeight, RejectsZeroHorizon) {
    EXPECT_SURROX_ERROR(companion_weight(VectorXd::Zero(1), 0), ErrorCode::InvalidArgument);
}

TEST(NormalQuantile, KnownValues) {
    EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-12);
    EXPECT_NEAR(normal_quantile(0.5), 0.0, 1e-15);
    EXPECT_NEAR(normal_quantile(0.05), -1.6448536269514722, 1e-12);
}

TEST(BjInterval, UnitScaleFirstStepWidth) {
    const ForecastResult f{Method::LLMCPI, VectorXd::Zero(1)};
    const IntervalResult r = bj_interval(f, VectorXd::Constant(1, 0.3), 1.0, 0.05);
    EXPECT_NEAR(r.upper(0) - r.lower(0), 3.91993, 1e-5);
    EXPECT_EQ(r.kind, IntervalKind::BJ);
}

TEST(BjInterval, ZeroScaleCollapsesToPoint) {
    const ForecastResult f{Method::LLMCPI, (VectorXd(3) << 1, 2, 3).finished()};
    const IntervalResult r = bj_interval(f, VectorXd::Constant(2, 0.3), 0.0, 0.05);
    EXPECT_EQ(r.lower, f.point);
    EXPECT_EQ(r.upper, f.point);
}

TEST(BjInterval, WidthsProportionalToCompanionWeight) {
    const VectorXd a = (VectorXd(2) << 0.5, -0.3).finished();
    const ForecastResult f{Method::LLMCPI, VectorXd::Zero(8)};
    const IntervalResult r = bj_interval(f, a, 0.7, 0.1);
    const double c = r.length()(0);
    for (int h = 1; h <= 8; ++h) {
        EXPECT_NEAR(r.length()(h - 1), c * companion_weight(a, h), 1e-12);
        EXPECT_NEAR(0.5 * (r.lower(h - 1) + r.upper(h - 1)), 0.0, 1e-12);
    }
}

TEST(BjInterval, RejectsBadAlpha) {
    const ForecastResult f{Method::LLMCPI, VectorXd::Zero(1)};
    EXPECT_SURROX_ERROR(bj_interval(f, VectorXd::Zero(1), 1.0, 1.0), ErrorCode::InvalidArgument);
}

TEST(EmpiricalQuantile, TypeOneOrderStatistics) {
    std::vector<double> v(500);
    for (int i = 0; i < 500; ++i) v[static_cast<std::size_t>(i)] = 500 - i;  // 1..500 reversed
    EXPECT_DOUBLE_EQ(empirical_quantile(v, 0.025, QuantileRule::Type1), 13.0);
    EXPECT_DOUBLE_EQ(empirical_quantile(v, 0.975, QuantileRule::Type1), 488.0);
    EXPECT_DOUBLE_EQ(empirical_quantile({3.0, 1.0, 2.0}, 0.5, QuantileRule::Type7), 2.0);
    EXPECT_DOUBLE_EQ(empirical_quantile({1.0, 2.0}, 0.25, QuantileRule::Type7), 1.25);
}

namespace {

struct Scenario {
    JointFit fit;
    History history;
    FutureExogenous future;
};

Scenario simulated_setup(std::uint64_t seed, Index t_len = 60, Index horizon = 4, double rho = 0.3) {
    DgpSpec spec = reference_dgp(rho, t_len + horizon);
    spec.seed = seed;
    const SimulatedData sim = generate(spec);
    Scenario s;
    const MonthlyPanel m = sim.monthly.head(t_len);
    const SurrogatePanel sp = sim.surrogate.head(t_len);
    s.fit = fit_joint(m, sp, 2, 1);
    s.history = History::from(m, sp);
    s.future = {sim.monthly.z().bottomRows(horizon), sim.monthly.x().bottomRows(horizon),
                sim.surrogate.ys().bottomRows(horizon)};
    return s;
}

}  // namespace

TEST(Bootstrap, DeterministicForSeedAndThreadCount) {
    const Scenario s = simulated_setup(1);
    BootstrapConfig cfg;
    cfg.B = 200;
    cfg.seed = 42;
    const BootstrapDraws one = bootstrap_errors(s.fit, s.history, s.future, 4, cfg);
    cfg.threads = 4;
    const BootstrapDraws four = bootstrap_errors(s.fit, s.history, s.future, 4, cfg);
    EXPECT_EQ(one.errors, four.errors);
    const IntervalResult a = boot_interval(s.fit, s.history, s.future, 4, cfg, 0.05);
    const IntervalResult b = boot_interval(s.fit, s.history, s.future, 4, cfg, 0.05);
    EXPECT_EQ(a.lower, b.lower);
    EXPECT_EQ(a.upper, b.upper);
    cfg.seed = 43;
    const IntervalResult c = boot_interval(s.fit, s.history, s.future, 4, cfg, 0.05);
    EXPECT_NE(a.lower, c.lower);
}

TEST(Bootstrap, NestedAcrossAlpha) {
    const Scenario s = simulated_setup(2);
    BootstrapConfig cfg;
    cfg.B = 300;
    const ForecastResult point = forecast_joint(s.fit, s.history, s.future, 4);
    const BootstrapDraws draws = bootstrap_errors(s.fit, s.history, s.future, 4, cfg);
    for (QuantileRule rule : {QuantileRule::Type1, QuantileRule::Type7}) {
        const IntervalResult wide = boot_interval(point, draws, 0.05, rule);
        const IntervalResult narrow = boot_interval(point, draws, 0.10, rule);
        for (Index h = 0; h < 4; ++h) {
            EXPECT_LE(wide.lower(h), narrow.lower(h));
            EXPECT_GE(wide.upper(h), narrow.upper(h));
            EXPECT_LE(narrow.lower(h), narrow.upper(h));
        }
    }
}

TEST(Bootstrap, NoiselessDataGivesZeroWidth) {
    // Exact ARX data: the fitted residuals are zero, so every replicate
    // reproduces the original series and forecast.
    DgpSpec spec = reference_dgp(0.0, 44);
    spec.sigma = MatrixXd::Identity(4, 4);
    spec.seed = 3;
    SimulatedData sim = generate(spec);
    const Index t_len = 40;
    std::mt19937_64 rng(5);
    const MatrixXd ys = test::gaussian(44, 3, rng);
    VectorXd y = sim.monthly.y();
    const MatrixXd& x = sim.monthly.x();
    const SurrogateFit sfit = fit_surrogate(ys.topRows(t_len), x.topRows(t_len), 1);
    for (Index t = 2; t < 44; ++t) {
        y(t) = 0.5 * y(t - 1) - 0.3 * y(t - 2) + 0.7 * x(t, 0) - 0.2 * x(t, 1) +
               0.4 * d_residual(ys, sfit, t)(0);
    }
    JointData data{y.head(t_len), MatrixXd(t_len, 0), x.topRows(t_len), ys.topRows(t_len), x.topRows(t_len)};
    const JointFit fit = fit_joint(data, 2, 1);
    ASSERT_LT(fit.residuals.cwiseAbs().maxCoeff(), 1e-9);
    const History hist{data.y, data.z, data.x, data.ys};
    const FutureExogenous fut{MatrixXd(4, 0), x.bottomRows(4), ys.bottomRows(4)};
    BootstrapConfig cfg;
    cfg.B = 100;
    const IntervalResult r = boot_interval(fit, hist, fut, 4, cfg, 0.05);
    EXPECT_LT(r.length().cwiseAbs().maxCoeff(), 1e-7);
}

TEST(Bootstrap, BurnInOptionRuns) {
    const Scenario s = simulated_setup(4);
    BootstrapConfig cfg;
    cfg.B = 100;
    cfg.burn_in = true;
    const IntervalResult r = boot_interval(s.fit, s.history, s.future, 4, cfg, 0.05);
    for (Index h = 0; h < 4; ++h) EXPECT_LT(r.lower(h), r.upper(h));
}

TEST(Bootstrap, RequiresAtLeastOneHundredReplicates) {
    const Scenario s = simulated_setup(5);
    BootstrapConfig cfg;
    cfg.B = 99;
    EXPECT_SURROX_ERROR(boot_interval(s.fit, s.history, s.future, 4, cfg, 0.05), ErrorCode::InvalidArgument);
}

TEST(EfficiencyGain, NoCorrelationNoGain) {
    EXPECT_DOUBLE_EQ(efficiency_gain(1.0, VectorXd::Zero(3), MatrixXd::Identity(3, 3)), 1.0);
}

TEST(EfficiencyGain, ThreeIndependentSurrogates) {
    EXPECT_NEAR(efficiency_gain(1.0, VectorXd::Constant(3, 0.4), MatrixXd::Identity(3, 3)), 1.0 / (1.0 - 0.48), 1e-12);
    EXPECT_NEAR(efficiency_gain(1.0, VectorXd::Constant(3, 0.4), MatrixXd::Identity(3, 3)), 1.92308, 1e-5);
}

TEST(EfficiencyGain, BoundaryIsInvalid) {
    EXPECT_SURROX_ERROR(efficiency_gain(1.0, VectorXd::Ones(1), MatrixXd::Identity(1, 1)), ErrorCode::InvalidCovariance);
    EXPECT_SURROX_ERROR(efficiency_gain(1.0, VectorXd::Zero(2), -MatrixXd::Identity(2, 2)), ErrorCode::InvalidCovariance);
}

TEST(EfficiencyGain, MonotoneInCorrelation) {
    double prev = 1.0;
    for (double rho = 0.0; rho < 0.57; rho += 0.01) {
        const double g = efficiency_gain(1.0, VectorXd::Constant(3, rho), MatrixXd::Identity(3, 3));
        EXPECT_GE(g, prev);
        prev = g;
    }
}
