#include "surrox/csv_io.hpp"

#include "surrox/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace surrox {

namespace {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;
};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

Table read_table(std::istream& in) {
    Table t;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (trim(line).empty()) continue;
        if (t.header.empty()) {
            t.header = split(line);
            continue;
        }
        auto cells = split(line);
        if (cells.size() != t.header.size()) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(number) + ": expected " +
                                                   std::to_string(t.header.size()) + " fields, got " +
                                                   std::to_string(cells.size()));
        }
        t.rows.push_back(std::move(cells));
        t.line_numbers.push_back(number);
    }
    if (t.header.empty()) throw Error(ErrorCode::ParseError, "empty input");
    if (t.rows.empty()) throw Error(ErrorCode::ParseError, "no data rows");
    return t;
}

double parse_number(const std::string& text, std::size_t line, const std::string& column) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + column +
                                               ": not a number: '" + text + "'");
    }
    if (!std::isfinite(v)) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + column +
                                               ": non-finite value rejected");
    }
    return v;
}

Month parse_month_cell(const std::string& text, std::size_t line) {
    auto m = parse_month(text);
    if (!m) throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": bad month '" + text + "'");
    return *m;
}

void require_first(const Table& t, const char* name) {
    if (t.header.front() != name) {
        throw Error(ErrorCode::ParseError, std::string("first column must be '") + name + "'");
    }
}

std::vector<std::size_t> columns_with_prefix(const Table& t, std::string_view prefix) {
    std::vector<std::size_t> out;
    for (std::size_t c = 1; c < t.header.size(); ++c) {
        if (t.header[c].rfind(prefix, 0) == 0) out.push_back(c);
    }
    return out;
}

Eigen::MatrixXd gather(const Table& t, const std::vector<std::size_t>& cols) {
    Eigen::MatrixXd m(static_cast<Index>(t.rows.size()), static_cast<Index>(cols.size()));
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            m(static_cast<Index>(r), static_cast<Index>(j)) =
                parse_number(t.rows[r][cols[j]], t.line_numbers[r], t.header[cols[j]]);
        }
    }
    return m;
}

std::vector<Month> months_of(const Table& t) {
    std::vector<Month> out;
    out.reserve(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) out.push_back(parse_month_cell(t.rows[r][0], t.line_numbers[r]));
    return out;
}

void reject_unknown(const Table& t, std::initializer_list<std::string_view> prefixes) {
    for (std::size_t c = 1; c < t.header.size(); ++c) {
        bool known = false;
        for (auto p : prefixes) known = known || t.header[c] == p || (p.back() == '_' && t.header[c].rfind(p, 0) == 0);
        if (!known) throw Error(ErrorCode::ParseError, "unexpected column '" + t.header[c] + "'");
    }
}

std::ifstream open(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    return in;
}

}  // namespace

MonthlyPanel read_monthly_csv(std::istream& in) {
    const Table t = read_table(in);
    require_first(t, "month");
    if (t.header.size() < 2 || t.header[1] != "y") throw Error(ErrorCode::ParseError, "second column must be 'y'");
    reject_unknown(t, {"y", "z_", "x_"});
    const Eigen::MatrixXd y = gather(t, {1});
    return MonthlyPanel(months_of(t), y.col(0), gather(t, columns_with_prefix(t, "z_")),
                        gather(t, columns_with_prefix(t, "x_")));
}

SurrogatePanel read_surrogate_csv(std::istream& in) {
    const Table t = read_table(in);
    require_first(t, "month");
    reject_unknown(t, {"ys_"});
    const auto cols = columns_with_prefix(t, "ys_");
    if (cols.empty()) throw Error(ErrorCode::ParseError, "surrogate file has no ys_ columns");
    return SurrogatePanel(months_of(t), gather(t, cols));
}

DailyIndex read_daily_csv(std::istream& in) {
    const Table t = read_table(in);
    require_first(t, "date");
    if (t.header.size() != 2 || t.header[1] != "score") {
        throw Error(ErrorCode::ParseError, "daily file must have columns date,score");
    }
    std::vector<Date> dates;
    std::vector<double> scores;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        auto d = parse_date(t.rows[r][0]);
        if (!d) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(t.line_numbers[r]) +
                                                   ": bad date '" + t.rows[r][0] + "'");
        }
        dates.push_back(*d);
        scores.push_back(parse_number(t.rows[r][1], t.line_numbers[r], "score"));
    }
    return DailyIndex(std::move(dates), std::move(scores));
}

FutureTable read_future_csv(std::istream& in) {
    const Table t = read_table(in);
    require_first(t, "month");
    reject_unknown(t, {"z_", "x_", "ys_"});
    FutureTable out;
    out.times = months_of(t);
    for (std::size_t i = 1; i < out.times.size(); ++i) {
        if (out.times[i] != out.times[i - 1] + std::chrono::months{1}) {
            throw Error(ErrorCode::ParseError, "future months must be consecutive");
        }
    }
    out.values.z = gather(t, columns_with_prefix(t, "z_"));
    out.values.x = gather(t, columns_with_prefix(t, "x_"));
    out.values.ys = gather(t, columns_with_prefix(t, "ys_"));
    return out;
}

std::vector<double> read_column_csv(std::istream& in, const std::string& column) {
    const Table t = read_table(in);
    for (std::size_t c = 0; c < t.header.size(); ++c) {
        if (t.header[c] != column) continue;
        std::vector<double> out;
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            out.push_back(parse_number(t.rows[r][c], t.line_numbers[r], column));
        }
        return out;
    }
    throw Error(ErrorCode::ParseError, "no column named '" + column + "'");
}

MonthlyPanel read_monthly_csv(const std::string& path) {
    auto in = open(path);
    return read_monthly_csv(in);
}

SurrogatePanel read_surrogate_csv(const std::string& path) {
    auto in = open(path);
    return read_surrogate_csv(in);
}

DailyIndex read_daily_csv(const std::string& path) {
    auto in = open(path);
    return read_daily_csv(in);
}

FutureTable read_future_csv(const std::string& path) {
    auto in = open(path);
    return read_future_csv(in);
}

void write_surrogate_csv(const SurrogatePanel& panel, std::ostream& out) {
    out << "month";
    for (Index k = 0; k < panel.periods(); ++k) out << ",ys_" << (k + 1);
    out << '\n';
    for (Index t = 0; t < panel.length(); ++t) {
        out << format_month(panel.times()[static_cast<std::size_t>(t)]);
        for (Index k = 0; k < panel.periods(); ++k) out << ',' << format_double(panel.ys()(t, k));
        out << '\n';
    }
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace surrox
