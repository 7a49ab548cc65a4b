#include "surrox/panel.hpp"

#include "surrox/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>

namespace surrox {

namespace {

std::optional<int> parse_fixed_int(std::string_view text) {
    if (text.empty()) return std::nullopt;
    for (char c : text) {
        if (c < '0' || c > '9') return std::nullopt;
    }
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

void require_finite(const Eigen::MatrixXd& m, const char* what) {
    if (!m.allFinite()) {
        throw Error(ErrorCode::ParseError, std::string(what) + " contains non-finite values");
    }
}

void require_consecutive(const std::vector<Month>& times) {
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (times[i] != times[i - 1] + std::chrono::months{1}) {
            throw Error(ErrorCode::ParseError,
                        "months must be consecutive: " + format_month(times[i - 1]) +
                            " is followed by " + format_month(times[i]));
        }
    }
}

struct Moments {
    double mean;
    double sd;
};

Moments sample_moments(std::span<const double> values) {
    const auto n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0))};
}

Standardized standardize_about(std::span<const double> raw, std::optional<double> base,
                               std::optional<std::size_t> window) {
    const std::size_t fit_len = window.value_or(raw.size());
    if (fit_len < 2 || fit_len > raw.size()) {
        throw Error(ErrorCode::InsufficientSample,
                    "standardization needs a window of at least 2 observations within the series");
    }
    for (double v : raw) {
        if (!std::isfinite(v)) throw Error(ErrorCode::ParseError, "series contains non-finite values");
    }
    const Moments mom = sample_moments(raw.first(fit_len));
    // sd(raw - base) == sd(raw); shifting by a constant leaves the spread unchanged.
    if (!(mom.sd > 0.0) || mom.sd <= 1e-14 * std::max(1.0, std::abs(mom.mean))) {
        throw Error(ErrorCode::DegenerateSeries, "series has zero sample variance");
    }
    Standardized out;
    out.center = base.value_or(mom.mean);
    out.scale = mom.sd;
    out.values.resize(static_cast<Index>(raw.size()));
    for (std::size_t i = 0; i < raw.size(); ++i) {
        out.values(static_cast<Index>(i)) = (raw[i] - out.center) / out.scale;
    }
    return out;
}

}  // namespace

std::optional<Month> parse_month(std::string_view text) {
    if (text.size() != 7 || text[4] != '-') return std::nullopt;
    auto year = parse_fixed_int(text.substr(0, 4));
    auto month = parse_fixed_int(text.substr(5, 2));
    if (!year || !month || *month < 1 || *month > 12) return std::nullopt;
    return Month{std::chrono::year{*year}, std::chrono::month{static_cast<unsigned>(*month)}};
}

std::optional<Date> parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    auto month = parse_month(text.substr(0, 7));
    auto day = parse_fixed_int(text.substr(8, 2));
    if (!month || !day) return std::nullopt;
    Date d{month->year(), month->month(), std::chrono::day{static_cast<unsigned>(*day)}};
    if (!d.ok()) return std::nullopt;
    return d;
}

std::string format_month(Month m) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u", static_cast<int>(m.year()),
                  static_cast<unsigned>(m.month()));
    return buf;
}

std::string format_date(Date d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

std::vector<Month> month_range(Month first, Index count) {
    std::vector<Month> out;
    out.reserve(static_cast<std::size_t>(count));
    for (Index i = 0; i < count; ++i) out.push_back(first + std::chrono::months{i});
    return out;
}

MonthlyPanel::MonthlyPanel(std::vector<Month> times, Eigen::VectorXd y, Eigen::MatrixXd z,
                           Eigen::MatrixXd x)
    : times_(std::move(times)), y_(std::move(y)), z_(std::move(z)), x_(std::move(x)) {
    const auto t = static_cast<Index>(times_.size());
    if (t < 1) throw Error(ErrorCode::InsufficientSample, "monthly panel is empty");
    if (y_.size() != t || z_.rows() != t || x_.rows() != t) {
        throw Error(ErrorCode::PanelMismatch, "monthly panel columns differ in length");
    }
    require_consecutive(times_);
    require_finite(y_, "target y");
    require_finite(z_, "macro covariates z");
    require_finite(x_, "embedding covariates x");
}

MonthlyPanel MonthlyPanel::head(Index n) const {
    if (n < 1 || n > length()) throw Error(ErrorCode::IndexError, "head length out of range");
    return MonthlyPanel({times_.begin(), times_.begin() + n}, y_.head(n), z_.topRows(n),
                        x_.topRows(n));
}

MonthlyPanel MonthlyPanel::with_embeddings(Eigen::MatrixXd x) const {
    return MonthlyPanel(times_, y_, z_, std::move(x));
}

SurrogatePanel::SurrogatePanel(std::vector<Month> times, Eigen::MatrixXd ys)
    : times_(std::move(times)), ys_(std::move(ys)) {
    if (times_.empty()) throw Error(ErrorCode::InsufficientSample, "surrogate panel is empty");
    if (ys_.rows() != static_cast<Index>(times_.size())) {
        throw Error(ErrorCode::PanelMismatch, "surrogate rows differ from month count");
    }
    if (ys_.cols() < 1) throw Error(ErrorCode::InvalidArgument, "surrogate panel needs K >= 1");
    require_consecutive(times_);
    require_finite(ys_, "surrogate values");
}

SurrogatePanel SurrogatePanel::head(Index n) const {
    if (n < 1 || n > length()) throw Error(ErrorCode::IndexError, "head length out of range");
    return SurrogatePanel({times_.begin(), times_.begin() + n}, ys_.topRows(n));
}

DailyIndex::DailyIndex(std::vector<Date> dates, std::vector<double> scores)
    : dates_(std::move(dates)), scores_(std::move(scores)) {
    if (dates_.size() != scores_.size()) {
        throw Error(ErrorCode::ParseError, "daily index dates and scores differ in length");
    }
    if (dates_.empty()) throw Error(ErrorCode::InsufficientSample, "daily index is empty");
    for (std::size_t i = 0; i < scores_.size(); ++i) {
        if (!std::isfinite(scores_[i])) {
            throw Error(ErrorCode::ParseError, "non-finite score on " + format_date(dates_[i]));
        }
        if (i > 0 && !(std::chrono::sys_days{dates_[i - 1]} < std::chrono::sys_days{dates_[i]})) {
            throw Error(ErrorCode::ParseError,
                        "dates must be strictly increasing at " + format_date(dates_[i]));
        }
    }
}

void require_aligned(const MonthlyPanel& monthly, const SurrogatePanel& surrogate) {
    if (monthly.times() != surrogate.times()) {
        throw Error(ErrorCode::PanelMismatch,
                    "monthly panel (" + format_month(monthly.times().front()) + ".." +
                        format_month(monthly.times().back()) + ") and surrogate panel (" +
                        format_month(surrogate.times().front()) + ".." +
                        format_month(surrogate.times().back()) + ") cover different months");
    }
}

Eigen::VectorXd Standardized::restore(const Eigen::VectorXd& standardized) const {
    return (standardized.array() * scale + center).matrix();
}

Standardized standardize_cpi(std::span<const double> raw, double base,
                             std::optional<std::size_t> window) {
    return standardize_about(raw, base, window);
}

Standardized standardize_z(std::span<const double> raw, std::optional<std::size_t> window) {
    return standardize_about(raw, std::nullopt, window);
}

std::pair<int, int> period_bounds(int days_in_month, int periods, int k) {
    if (periods < 1 || k < 0 || k >= periods || days_in_month < periods) {
        throw Error(ErrorCode::InvalidArgument, "invalid period split");
    }
    if (periods == 3) {
        static constexpr int starts[] = {1, 11, 21};
        const int last = k == 2 ? days_in_month : starts[k + 1] - 1;
        return {starts[k], last};
    }
    const int first = k * days_in_month / periods + 1;
    const int last = (k + 1) * days_in_month / periods;
    return {first, last};
}

SurrogatePanel aggregate_daily(const DailyIndex& index, int periods) {
    if (periods < 1 || periods > 28) {
        throw Error(ErrorCode::InvalidArgument, "periods per month must be in [1, 28]");
    }
    using namespace std::chrono;
    const Month first{index.dates().front().year(), index.dates().front().month()};
    const Month last{index.dates().back().year(), index.dates().back().month()};
    const auto count = static_cast<Index>((last - first).count()) + 1;
    const auto months = month_range(first, count);

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(count, periods);
    Eigen::MatrixXi hits = Eigen::MatrixXi::Zero(count, periods);
    for (std::size_t i = 0; i < index.size(); ++i) {
        const Date& d = index.dates()[i];
        const Month m{d.year(), d.month()};
        const auto row = static_cast<Index>((m - first).count());
        const int days = static_cast<int>(static_cast<unsigned>((m / std::chrono::last).day()));
        const int day = static_cast<int>(static_cast<unsigned>(d.day()));
        for (int k = 0; k < periods; ++k) {
            auto [lo, hi] = period_bounds(days, periods, k);
            if (day >= lo && day <= hi) {
                sums(row, k) += index.scores()[i];
                hits(row, k) += 1;
                break;
            }
        }
    }
    for (Index t = 0; t < count; ++t) {
        for (int k = 0; k < periods; ++k) {
            if (hits(t, k) == 0) {
                const int days = static_cast<int>(
                    static_cast<unsigned>((months[static_cast<std::size_t>(t)] / std::chrono::last).day()));
                auto [lo, hi] = period_bounds(days, periods, k);
                throw Error(ErrorCode::MissingPeriod,
                            "month " + format_month(months[static_cast<std::size_t>(t)]) +
                                " block " + std::to_string(k + 1) + " (days " +
                                std::to_string(lo) + "-" + std::to_string(hi) + ") has no data");
            }
            sums(t, k) /= hits(t, k);
        }
    }
    return SurrogatePanel(months, sums);
}

}  // namespace surrox
