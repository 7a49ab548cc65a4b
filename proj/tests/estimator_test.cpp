#include "surrox/estimator.hpp"
#include "surrox/forecaster.hpp"
#include "surrox/linalg.hpp"
#include "surrox/simulation.hpp"

#include "support.hpp"

using namespace surrox;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST(Ols, IdentityDesign) {
    const MatrixXd coef = ols_solve(MatrixXd::Identity(3, 3), (VectorXd(3) << 1, 2, 3).finished());
    EXPECT_NEAR(coef(0), 1.0, 1e-14);
    EXPECT_NEAR(coef(1), 2.0, 1e-14);
    EXPECT_NEAR(coef(2), 3.0, 1e-14);
}

TEST(Ols, ColumnOfOnesGivesMean) {
    const MatrixXd coef = ols_solve(MatrixXd::Ones(4, 1), (VectorXd(4) << 1, 2, 3, 4).finished());
    EXPECT_NEAR(coef(0, 0), 2.5, 1e-14);
}

TEST(Ols, DuplicatedColumnIsRankDeficient) {
    std::mt19937_64 rng(3);
    MatrixXd x = test::gaussian(20, 3, rng);
    x.col(2) = x.col(0);
    try {
        ols_solve(x, test::gaussian(20, 1, rng));
        FAIL() << "expected RankDeficient";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RankDeficient);
        EXPECT_NE(e.detail().find('0'), std::string::npos);
        EXPECT_NE(e.detail().find('2'), std::string::npos);
    }
}

TEST(Ols, AgreesWithNormalEquations) {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 25; ++rep) {
        const MatrixXd x = test::gaussian(40, 6, rng);
        const MatrixXd y = test::gaussian(40, 2, rng);
        EXPECT_LT((ols_solve(x, y) - test::normal_equations(x, y)).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(Ols, TooFewRows) {
    EXPECT_SURROX_ERROR(ols_solve(MatrixXd::Ones(2, 3), VectorXd::Ones(2)), ErrorCode::InsufficientSample);
}

TEST(FitSurrogate, NoiselessScalarRecursionRecoversCoefficient) {
    VectorXd ys(10);
    ys(0) = 1.0;
    for (Index t = 1; t < 10; ++t) ys(t) = 0.2 * ys(t - 1);
    const SurrogateFit fit = fit_surrogate(MatrixXd(ys), MatrixXd(10, 0), 1);
    EXPECT_NEAR(fit.A[0](0, 0), 0.2, 1e-10);
}

TEST(FitSurrogate, TooShortSample) {
    EXPECT_SURROX_ERROR(fit_surrogate(MatrixXd::Ones(2, 3), MatrixXd(2, 0), 1), ErrorCode::InsufficientSample);
}

TEST(FitSurrogate, ResidualIdentityHoldsExactly) {
    std::mt19937_64 rng(5);
    const MatrixXd ys = test::gaussian(50, 3, rng);
    const MatrixXd x = test::gaussian(50, 2, rng);
    const SurrogateFit fit = fit_surrogate(ys, x, 2);
    for (Index t = 2; t < 50; ++t) {
        VectorXd r = ys.row(t).transpose() - fit.B * x.row(t).transpose();
        for (int l = 1; l <= 2; ++l) r -= fit.A[static_cast<std::size_t>(l - 1)] * ys.row(t - l).transpose();
        EXPECT_LT((r - fit.residuals.row(t - 2).transpose()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

SurrogateFit scalar_fit(double a) {
    SurrogateFit f;
    f.A = {MatrixXd::Constant(1, 1, a)};
    f.B = MatrixXd(1, 0);
    f.q2 = 1;
    return f;
}

TEST(DResidual, ZeroLagMatrixReturnsObservation) {
    const MatrixXd ys = (MatrixXd(3, 1) << 0.4, 1.5, -2.0).finished();
    EXPECT_DOUBLE_EQ(d_residual(ys, scalar_fit(0.0), 2)(0), -2.0);
}

TEST(DResidual, HandArithmetic) {
    const MatrixXd ys = (MatrixXd(2, 1) << 2.0, 3.0).finished();
    EXPECT_DOUBLE_EQ(d_residual(ys, scalar_fit(0.5), 1)(0), 2.0);
}

TEST(DResidual, NeedsLags) {
    const MatrixXd ys = (MatrixXd(2, 1) << 2.0, 3.0).finished();
    EXPECT_SURROX_ERROR(d_residual(ys, scalar_fit(0.5), 0), ErrorCode::IndexError);
}

TEST(DResidual, KeepsExogenousTerm) {
    std::mt19937_64 rng(9);
    const MatrixXd ys = test::gaussian(40, 2, rng);
    const MatrixXd x = test::gaussian(40, 1, rng);
    const SurrogateFit fit = fit_surrogate(ys, x, 1);
    const VectorXd d = d_residual(ys, fit, 10);
    const VectorXd with_b = fit.residuals.row(9).transpose() + fit.B * x.row(10).transpose();
    EXPECT_LT((d - with_b).cwiseAbs().maxCoeff(), 1e-12);
}

JointData random_joint(Index t_len, std::uint64_t seed, double rho = 0.3) {
    DgpSpec spec = reference_dgp(rho, t_len);
    spec.seed = seed;
    const SimulatedData sim = generate(spec);
    return JointData::from(sim.monthly, sim.surrogate);
}

TEST(FitJoint, CompanionAndVarianceConventions) {
    const JointData data = random_joint(80, 1);
    const JointFit fit = fit_joint(data, 2, 1);
    EXPECT_EQ(fit.companion, companion_matrix(fit.alpha));
    EXPECT_DOUBLE_EQ(fit.companion(1, 0), 1.0);
    EXPECT_DOUBLE_EQ(fit.companion(1, 1), 0.0);
    EXPECT_EQ(fit.residuals.size(), 78);
    EXPECT_EQ(fit.d_hat.rows(), 79);
    EXPECT_NEAR(fit.sigma_e * fit.sigma_e, fit.residuals.squaredNorm() / 78.0, 1e-14);
}

TEST(FitJoint, TargetDesignIsOrthogonalToResiduals) {
    const JointData data = random_joint(90, 2);
    const JointFit fit = fit_joint(data, 2, 1);
    const Index rows = 88;
    MatrixXd design(rows, 2 + 2 + 3);
    for (Index i = 0; i < rows; ++i) {
        const Index t = 2 + i;
        design(i, 0) = data.y(t - 1);
        design(i, 1) = data.y(t - 2);
        design.block(i, 2, 1, 2) = data.x.row(t);
        design.block(i, 4, 1, 3) = d_residual(data.ys, fit.surrogate, t).transpose();
    }
    EXPECT_LT((design.transpose() * fit.residuals).cwiseAbs().maxCoeff(), 1e-8);

    MatrixXd sdesign(89, 3 + 2);
    for (Index i = 0; i < 89; ++i) {
        sdesign.block(i, 0, 1, 3) = data.ys.row(i);
        sdesign.block(i, 3, 1, 2) = data.x.row(i + 1);
    }
    EXPECT_LT((sdesign.transpose() * fit.surrogate.residuals).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(FitJoint, MatchesNormalEquationOracle) {
    const JointData data = random_joint(70, 3);
    const JointFit fit = fit_joint(data, 2, 1);
    // Surrogate stage.
    MatrixXd s_design(69, 5);
    for (Index i = 0; i < 69; ++i) {
        s_design.block(i, 0, 1, 3) = data.ys.row(i);
        s_design.block(i, 3, 1, 2) = data.x.row(i + 1);
    }
    const MatrixXd s_coef = test::normal_equations(s_design, data.ys.bottomRows(69));
    EXPECT_LT((s_coef.topRows(3).transpose() - fit.surrogate.A[0]).cwiseAbs().maxCoeff(), 1e-9);
    // Target stage with D built from the oracle's own lag matrix.
    const MatrixXd a_hat = s_coef.topRows(3).transpose();
    MatrixXd t_design(68, 7);
    for (Index i = 0; i < 68; ++i) {
        const Index t = 2 + i;
        t_design(i, 0) = data.y(t - 1);
        t_design(i, 1) = data.y(t - 2);
        t_design.block(i, 2, 1, 2) = data.x.row(t);
        t_design.block(i, 4, 1, 3) = (data.ys.row(t).transpose() - a_hat * data.ys.row(t - 1).transpose()).transpose();
    }
    const VectorXd coef = test::normal_equations(t_design, data.y.tail(68));
    EXPECT_LT((coef.head(2) - fit.alpha).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((coef.segment(2, 2) - fit.delta).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((coef.tail(3) - fit.gamma).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(FitJoint, SurrogateOrderMayNotExceedTargetOrder) {
    const JointData data = random_joint(60, 4);
    EXPECT_SURROX_ERROR(fit_joint(data, 1, 2), ErrorCode::InvalidArgument);
}

TEST(FitJoint, MisalignedPanels) {
    DgpSpec spec = reference_dgp(0.2, 40);
    const SimulatedData sim = generate(spec);
    const SurrogatePanel shifted(test::months(40, 2030), sim.surrogate.ys());
    EXPECT_SURROX_ERROR(fit_joint(sim.monthly, shifted, 2, 1), ErrorCode::PanelMismatch);
}

TEST(FitJoint, TooFewObservations) {
    const JointData data = random_joint(8, 5);
    EXPECT_SURROX_ERROR(fit_joint(data, 2, 1), ErrorCode::InsufficientSample);
}

TEST(FitJoint, ScalingAnEmbeddingColumnRescalesItsCoefficients) {
    JointData data = random_joint(100, 6);
    const JointFit base = fit_joint(data, 2, 1);
    const double c = -3.5;
    data.x.col(1) *= c;
    data.surrogate_x = data.x;
    const JointFit scaled = fit_joint(data, 2, 1);
    EXPECT_NEAR(scaled.delta(1), base.delta(1) / c, 1e-8);
    EXPECT_LT((scaled.surrogate.B.col(1) - base.surrogate.B.col(1) / c).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LT((scaled.residuals - base.residuals).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_NEAR(scaled.sigma_e, base.sigma_e, 1e-8);

    MatrixXd fx(3, 2);
    fx << 0.1, 0.2, -0.3, 0.4, 0.5, -0.6;
    const MatrixXd fys = (MatrixXd(3, 3) << 0.1, 0.2, 0.3, 0.0, -0.1, 0.2, 0.3, 0.3, -0.3).finished();
    History hb{data.y, data.z, data.x, data.ys};
    hb.x.col(1) /= c;
    const History hs{data.y, data.z, data.x, data.ys};
    MatrixXd fx_scaled = fx;
    fx_scaled.col(1) *= c;
    const VectorXd pb = forecast_joint(base, hb, {MatrixXd(3, 0), fx, fys}, 3).point;
    const VectorXd ps = forecast_joint(scaled, hs, {MatrixXd(3, 0), fx_scaled, fys}, 3).point;
    EXPECT_LT((pb - ps).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(ResidualPairs, CardinalityAndAlignment) {
    // K = 1, T - q1 = 5.
    std::mt19937_64 rng(12);
    JointData data;
    data.y = test::gaussian(7, 1, rng).col(0);
    data.z = MatrixXd(7, 0);
    data.x = MatrixXd(7, 0);
    data.ys = test::gaussian(7, 1, rng);
    data.surrogate_x = MatrixXd(7, 0);
    const JointFit fit = fit_joint(data, 2, 1);
    const auto pairs = residual_pairs(fit);
    ASSERT_EQ(pairs.size(), 5u);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        EXPECT_EQ(pairs[i].month, static_cast<Index>(2 + i));
        const double implied = fit.residuals(static_cast<Index>(i)) +
                               fit.gamma(0) * fit.surrogate.residuals(static_cast<Index>(i + 1), 0);
        EXPECT_DOUBLE_EQ(pairs[i].target, implied);
        EXPECT_DOUBLE_EQ(pairs[i].surrogate, fit.surrogate.residuals(static_cast<Index>(i + 1), 0));
    }
}

TEST(FitArx, MatchesNormalEquations) {
    std::mt19937_64 rng(8);
    const VectorXd y = test::gaussian(60, 1, rng).col(0);
    const MatrixXd x = test::gaussian(60, 2, rng);
    const ArxFit fit = fit_arx(y, x, 3);
    MatrixXd design(57, 5);
    for (Index i = 0; i < 57; ++i) {
        const Index t = i + 3;
        design(i, 0) = y(t - 1);
        design(i, 1) = y(t - 2);
        design(i, 2) = y(t - 3);
        design.block(i, 3, 1, 2) = x.row(t);
    }
    const VectorXd coef = test::normal_equations(design, y.tail(57));
    EXPECT_LT((coef.head(3) - fit.alpha).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((coef.tail(2) - fit.beta).cwiseAbs().maxCoeff(), 1e-10);
}
