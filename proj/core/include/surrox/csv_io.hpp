#pragma once

#include "surrox/forecaster.hpp"
#include "surrox/panel.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace surrox {

/// Reads `month,y,z_1..z_d,x_1..x_p`. z and x columns are recognized by prefix
/// and may appear in any count, including zero.
MonthlyPanel read_monthly_csv(std::istream& in);
/// Reads `month,ys_1..ys_K`.
SurrogatePanel read_surrogate_csv(std::istream& in);
/// Reads `date,score`.
DailyIndex read_daily_csv(std::istream& in);

/// Future exogenous rows: `month` followed by any z_*, x_* and ys_* columns.
struct FutureTable {
    std::vector<Month> times;
    FutureExogenous values;
};
FutureTable read_future_csv(std::istream& in);

/// Single numeric column by name (used for standardization input).
std::vector<double> read_column_csv(std::istream& in, const std::string& column);

MonthlyPanel read_monthly_csv(const std::string& path);
SurrogatePanel read_surrogate_csv(const std::string& path);
DailyIndex read_daily_csv(const std::string& path);
FutureTable read_future_csv(const std::string& path);

void write_surrogate_csv(const SurrogatePanel& panel, std::ostream& out);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace surrox
