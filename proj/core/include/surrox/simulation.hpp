#pragma once

#include "surrox/forecaster.hpp"
#include "surrox/panel.hpp"
#include "surrox/rng.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace surrox {

enum class ErrorKind { Gaussian, StudentT };

/// Stationary AR(1) columns scaled to unit variance; phi = 0 gives iid N(0, 1).
struct ExogenousGenerator {
    Index columns = 2;
    double phi = 0.5;
};

/// Joint data-generating process for the target and surrogate series.
struct DgpSpec {
    Eigen::VectorXd alpha;           ///< target AR coefficients
    Eigen::VectorXd theta;           ///< macro coefficients (d)
    Eigen::VectorXd beta;            ///< embedding coefficients (p)
    std::vector<Eigen::MatrixXd> A;  ///< surrogate lag matrices, K x K each
    Eigen::MatrixXd B;               ///< K x p
    Eigen::MatrixXd sigma;           ///< (1 + K) x (1 + K) innovation covariance, target first
    ErrorKind error_kind = ErrorKind::Gaussian;
    double df = 10.0;                ///< Student-t degrees of freedom
    ExogenousGenerator x_gen{};
    ExogenousGenerator z_gen{0, 0.5};
    Index T = 60;
    Index burn_in = 200;
    std::uint64_t seed = 0;

    Index periods() const noexcept { return B.rows(); }
};

struct SimulatedData {
    MonthlyPanel monthly;
    SurrogatePanel surrogate;
    Eigen::MatrixXd innovations;  ///< T x (1 + K): target innovation, then surrogate ones
};

/// Throws NonStationarySpec or InvalidCovariance when the design is unusable.
void validate(const DgpSpec& spec);

/// Draws one sample path using the stream derived from spec.seed.
SimulatedData generate(const DgpSpec& spec);
/// Draws one sample path from a caller-owned stream.
SimulatedData generate(const DgpSpec& spec, Rng& rng);

double spectral_radius(const Eigen::MatrixXd& m);

/// Unit variances with every off-diagonal equal to rho.
Eigen::MatrixXd equicorrelated_sigma(double rho, Index periods);
/// Unit variances, independent surrogate innovations, target covariance rho with each.
Eigen::MatrixXd isotropic_surrogate_sigma(double rho, Index periods);

/// Reference design: alpha = (0.5, -0.3), beta = (0.7, -0.2), theta = 0,
/// one surrogate lag with K = 3, two AR(1) embedding columns.
DgpSpec reference_dgp(double rho, Index T, ErrorKind kind = ErrorKind::Gaussian);

/// sqrt(mean PMSE of method / mean PMSE of baseline). Inputs are Q x H.
double rpmse(const Eigen::MatrixXd& forecasts, const Eigen::MatrixXd& truths,
             const Eigen::MatrixXd& baseline);
/// Ratio of sign-error rates; sign(0) counts as positive.
double rsign(const Eigen::MatrixXd& forecasts, const Eigen::MatrixXd& truths,
             const Eigen::MatrixXd& baseline);

struct CoverageLength {
    double coverage = 0.0;
    double length = 0.0;
};

/// Pooled coverage and mean length over all repetitions and steps.
CoverageLength coverage_length(const Eigen::MatrixXd& lower, const Eigen::MatrixXd& upper,
                               const Eigen::MatrixXd& truths);

enum class Variant { Base, Omitted, Overfit, StudentT };

std::string to_string(Variant variant);
std::optional<Variant> parse_variant(std::string_view text);

struct ExperimentGrid {
    std::vector<double> rhos{0.1, 0.2, 0.3, 0.4};
    std::vector<int> horizons{8, 9, 10, 11, 12, 13, 14, 15};
    std::vector<Method> methods{Method::LLMCPI, Method::AR, Method::RW, Method::AVE,
                                Method::TEXT_ARX};
    bool bj_intervals = true;
    bool boot_intervals = true;
    Variant variant = Variant::Base;

    Index total_months = 60;            ///< training length is total_months - H ...
    std::optional<Index> train_length;  ///< ... unless fixed here
    int q1 = 2;
    int q2 = 1;
    int ar_max_order = 2;
    double alpha = 0.05;
    int B = 500;
    Index burn_in = 200;
    ExogenousGenerator x_gen{};
    Index overfit_columns = 2;
    double student_df = 10.0;
    /// Replace held-out targets with NaN before any model sees the data.
    bool poison_holdout = false;

    Index train_length_for(int horizon) const;
};

struct ReportRow {
    std::string variant;
    double rho = 0.0;
    int horizon = 0;
    std::string method;
    std::string metric;
    double value = 0.0;
};

struct SimulationReport {
    std::vector<ReportRow> rows;
    int Q = 0;

    std::optional<double> find(double rho, int horizon, std::string_view method,
                               std::string_view metric) const;
};

/**
 * Monte Carlo evaluation over (rho, H). Repetition r draws its sample path
 * from the stream (seed, r) so all cells share common random numbers; the
 * bootstrap stream is keyed by (seed, r, cell). Reports are identical for
 * any thread count.
 */
SimulationReport run_experiment(const ExperimentGrid& grid, int Q, std::uint64_t seed,
                                unsigned threads = 1);

/// CSV with columns variant,rho,H,method,metric,value.
void write_report_csv(const SimulationReport& report, std::ostream& out);

struct EfficiencyStudy {
    double theoretical = 0.0;  ///< sigma_tt / (sigma_tt - S_ts S_ss^{-1} S_st)
    double monte_carlo = 0.0;  ///< mean squared one-step error, ARX-only over joint
    Index errors = 0;          ///< number of one-step errors per model
};

/**
 * Fits both the joint model and an ARX model without the surrogate on
 * spec.T months, then scores one-step forecasts at `eval_points` origins
 * past the training window (true history, no refit). Repeated Q times.
 */
EfficiencyStudy efficiency_study(const DgpSpec& spec, int q1, int q2, int Q, Index eval_points,
                                 std::uint64_t seed, unsigned threads = 1);

}  // namespace surrox
