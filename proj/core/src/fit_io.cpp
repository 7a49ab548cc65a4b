#include "surrox/fit_io.hpp"

#include "surrox/errors.hpp"

#include <nlohmann/json.hpp>

namespace surrox {

using nlohmann::json;

namespace {

json vec(const Eigen::VectorXd& v) {
    return json(std::vector<double>(v.data(), v.data() + v.size()));
}

json mat(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        std::vector<double> row(static_cast<std::size_t>(m.cols()));
        for (Index j = 0; j < m.cols(); ++j) row[static_cast<std::size_t>(j)] = m(i, j);
        rows.push_back(row);
    }
    return rows;
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw Error(ErrorCode::ParseError, std::string("fit document lacks '") + key + "'");
    }
    return j.at(key);
}

Eigen::VectorXd to_vec(const json& j) {
    const auto v = j.get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Index>(v.size()));
}

Eigen::MatrixXd to_mat(const json& j, Index cols) {
    const auto rows = j.get<std::vector<std::vector<double>>>();
    Eigen::MatrixXd m(static_cast<Index>(rows.size()), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (static_cast<Index>(rows[i].size()) != cols) {
            throw Error(ErrorCode::ParseError, "ragged matrix in fit document");
        }
        for (Index c = 0; c < cols; ++c) m(static_cast<Index>(i), c) = rows[i][static_cast<std::size_t>(c)];
    }
    return m;
}

}  // namespace

std::string to_json(const FitDocument& doc) {
    const JointFit& f = doc.fit;
    json lags = json::array();
    for (const auto& a : f.surrogate.A) lags.push_back(mat(a));
    std::vector<std::string> months;
    for (Month m : doc.months) months.push_back(format_month(m));

    json j;
    j["schema"] = kFitSchema;
    j["version"] = kFitSchemaVersion;
    j["dims"] = {{"T", doc.history.y.size()},
                 {"K", f.periods()},
                 {"d", f.theta.size()},
                 {"p", f.delta.size()},
                 {"p_surrogate", f.surrogate.B.cols()},
                 {"q1", f.q1},
                 {"q2", f.q2}};
    j["target"] = {{"alpha", vec(f.alpha)},
                   {"theta", vec(f.theta)},
                   {"delta", vec(f.delta)},
                   {"gamma", vec(f.gamma)},
                   {"sigma_e", f.sigma_e},
                   {"residuals", vec(f.residuals)},
                   {"companion", mat(f.companion)}};
    j["surrogate"] = {{"A", lags},
                      {"B", mat(f.surrogate.B)},
                      {"residuals", mat(f.surrogate.residuals)},
                      {"d_hat", mat(f.d_hat)}};
    j["data"] = {{"months", months},
                 {"y", vec(doc.history.y)},
                 {"z", mat(doc.history.z)},
                 {"x", mat(doc.history.x)},
                 {"ys", mat(doc.history.ys)}};
    return j.dump(2) + "\n";
}

FitDocument fit_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("fit document is not JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("schema") || j["schema"] != kFitSchema) {
        throw Error(ErrorCode::SchemaMismatch, "expected schema '" + std::string(kFitSchema) + "'");
    }
    if (!j.contains("version") || j["version"] != kFitSchemaVersion) {
        throw Error(ErrorCode::SchemaMismatch,
                    "unsupported fit document version; expected " + std::to_string(kFitSchemaVersion));
    }
    try {
        const json& dims = field(j, "dims");
        const auto t_len = field(dims, "T").get<Index>();
        const auto k = field(dims, "K").get<Index>();
        const auto d = field(dims, "d").get<Index>();
        const auto p = field(dims, "p").get<Index>();
        const auto ps = field(dims, "p_surrogate").get<Index>();
        const int q1 = field(dims, "q1").get<int>();
        const int q2 = field(dims, "q2").get<int>();

        FitDocument doc;
        JointFit& f = doc.fit;
        f.q1 = q1;
        f.q2 = q2;
        const json& target = field(j, "target");
        f.alpha = to_vec(field(target, "alpha"));
        f.theta = to_vec(field(target, "theta"));
        f.delta = to_vec(field(target, "delta"));
        f.gamma = to_vec(field(target, "gamma"));
        f.sigma_e = field(target, "sigma_e").get<double>();
        f.residuals = to_vec(field(target, "residuals"));
        f.companion = companion_matrix(f.alpha);

        const json& sur = field(j, "surrogate");
        f.surrogate.q2 = q2;
        for (const json& a : field(sur, "A")) f.surrogate.A.push_back(to_mat(a, k));
        f.surrogate.B = to_mat(field(sur, "B"), ps);
        f.surrogate.residuals = to_mat(field(sur, "residuals"), k);
        f.d_hat = to_mat(field(sur, "d_hat"), k);

        const json& data = field(j, "data");
        for (const json& m : field(data, "months")) {
            auto parsed = parse_month(m.get<std::string>());
            if (!parsed) throw Error(ErrorCode::ParseError, "bad month in fit document");
            doc.months.push_back(*parsed);
        }
        doc.history.y = to_vec(field(data, "y"));
        doc.history.z = to_mat(field(data, "z"), d);
        doc.history.x = to_mat(field(data, "x"), p);
        doc.history.ys = to_mat(field(data, "ys"), k);
        if (doc.history.z.rows() == 0) doc.history.z.resize(t_len, 0);
        if (doc.history.x.rows() == 0) doc.history.x.resize(t_len, 0);

        const bool consistent =
            f.alpha.size() == q1 && f.theta.size() == d && f.delta.size() == p && f.gamma.size() == k &&
            static_cast<int>(f.surrogate.A.size()) == q2 && f.surrogate.B.rows() == k &&
            doc.history.y.size() == t_len && doc.history.ys.rows() == t_len &&
            doc.history.z.rows() == t_len && doc.history.x.rows() == t_len &&
            static_cast<Index>(doc.months.size()) == t_len;
        if (!consistent) throw Error(ErrorCode::ParseError, "fit document dimensions disagree");
        return doc;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed fit document: ") + e.what());
    }
}

}  // namespace surrox
