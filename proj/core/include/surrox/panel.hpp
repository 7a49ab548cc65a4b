#pragma once

#include <Eigen/Dense>

#include <chrono>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace surrox {

using Month = std::chrono::year_month;
using Date = std::chrono::year_month_day;
using Index = Eigen::Index;

/// Parses "YYYY-MM"; returns nullopt on malformed input.
std::optional<Month> parse_month(std::string_view text);
/// Parses "YYYY-MM-DD"; returns nullopt on malformed or impossible dates.
std::optional<Date> parse_date(std::string_view text);
std::string format_month(Month m);
std::string format_date(Date d);

/// Consecutive month labels starting at `first`.
std::vector<Month> month_range(Month first, Index count);

/**
 * Monthly target series with macro covariates z (T x d) and embedding
 * covariates x (T x p). Months are consecutive, values finite.
 */
class MonthlyPanel {
public:
    MonthlyPanel(std::vector<Month> times, Eigen::VectorXd y, Eigen::MatrixXd z,
                 Eigen::MatrixXd x);

    const std::vector<Month>& times() const noexcept { return times_; }
    const Eigen::VectorXd& y() const noexcept { return y_; }
    const Eigen::MatrixXd& z() const noexcept { return z_; }
    const Eigen::MatrixXd& x() const noexcept { return x_; }

    Index length() const noexcept { return y_.size(); }
    Index macro_dim() const noexcept { return z_.cols(); }
    Index embedding_dim() const noexcept { return x_.cols(); }

    /// First n months. Used to cut training windows.
    MonthlyPanel head(Index n) const;
    /// Same months and target with a different embedding matrix.
    MonthlyPanel with_embeddings(Eigen::MatrixXd x) const;

private:
    std::vector<Month> times_;
    Eigen::VectorXd y_;
    Eigen::MatrixXd z_;
    Eigen::MatrixXd x_;
};

/// K surrogate values per month (T x K).
class SurrogatePanel {
public:
    SurrogatePanel(std::vector<Month> times, Eigen::MatrixXd ys);

    const std::vector<Month>& times() const noexcept { return times_; }
    const Eigen::MatrixXd& ys() const noexcept { return ys_; }
    Index length() const noexcept { return ys_.rows(); }
    Index periods() const noexcept { return ys_.cols(); }

    SurrogatePanel head(Index n) const;

private:
    std::vector<Month> times_;
    Eigen::MatrixXd ys_;
};

/// Daily surrogate scores, strictly increasing dates.
class DailyIndex {
public:
    DailyIndex(std::vector<Date> dates, std::vector<double> scores);

    const std::vector<Date>& dates() const noexcept { return dates_; }
    const std::vector<double>& scores() const noexcept { return scores_; }
    std::size_t size() const noexcept { return dates_.size(); }

private:
    std::vector<Date> dates_;
    std::vector<double> scores_;
};

/// Throws PanelMismatch unless both panels cover the same months.
void require_aligned(const MonthlyPanel& monthly, const SurrogatePanel& surrogate);

struct Standardized {
    Eigen::VectorXd values;
    double center = 0.0;
    double scale = 1.0;

    /// Maps standardized values back to the raw scale.
    Eigen::VectorXd restore(const Eigen::VectorXd& standardized) const;
};

/**
 * (raw - base) / sd(raw - base), sd with denominator n - 1.
 *
 * When `window` is set, the standard deviation is computed on the first
 * `window` entries only (a training window), and applied to the whole series.
 */
Standardized standardize_cpi(std::span<const double> raw, double base,
                             std::optional<std::size_t> window = std::nullopt);

/// (raw - mean) / sd; mean and sd taken over `window` when set.
Standardized standardize_z(std::span<const double> raw,
                           std::optional<std::size_t> window = std::nullopt);

/// 1-based inclusive day range of block k (0-based) when a month of
/// `days_in_month` days is split into `periods` blocks.
std::pair<int, int> period_bounds(int days_in_month, int periods, int k);

/**
 * Averages daily scores into `periods` blocks per month. With three periods
 * the blocks are days 1-10, 11-20 and 21-end; other counts use near-equal
 * contiguous blocks. Any empty block raises MissingPeriod.
 */
SurrogatePanel aggregate_daily(const DailyIndex& index, int periods = 3);

}  // namespace surrox
