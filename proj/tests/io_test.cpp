#include "surrox/csv_io.hpp"
#include "surrox/fit_io.hpp"
#include "surrox/simulation.hpp"

#include "support.hpp"

#include <sstream>

using namespace surrox;
using Eigen::MatrixXd;

TEST(CsvIo, MonthlyPanelColumnsByPrefix) {
    std::istringstream in("month,y,z_1,x_1,x_2\n2020-01,0.5,1,2,3\n2020-02,-0.5,4,5,6\n");
    const MonthlyPanel p = read_monthly_csv(in);
    EXPECT_EQ(p.length(), 2);
    EXPECT_EQ(p.macro_dim(), 1);
    EXPECT_EQ(p.embedding_dim(), 2);
    EXPECT_DOUBLE_EQ(p.x()(1, 1), 6.0);
}

TEST(CsvIo, RejectsNonFinite) {
    std::istringstream nan_in("month,y\n2020-01,nan\n");
    EXPECT_SURROX_ERROR(read_monthly_csv(nan_in), ErrorCode::ParseError);
    std::istringstream inf_in("month,ys_1\n2020-01,inf\n");
    EXPECT_SURROX_ERROR(read_surrogate_csv(inf_in), ErrorCode::ParseError);
}

TEST(CsvIo, RejectsMalformedRows) {
    std::istringstream short_row("month,y,x_1\n2020-01,1\n");
    EXPECT_SURROX_ERROR(read_monthly_csv(short_row), ErrorCode::ParseError);
    std::istringstream bad_month("month,y\n2020-1,1\n");
    EXPECT_SURROX_ERROR(read_monthly_csv(bad_month), ErrorCode::ParseError);
    std::istringstream unknown("month,y,w\n2020-01,1,2\n");
    EXPECT_SURROX_ERROR(read_monthly_csv(unknown), ErrorCode::ParseError);
}

TEST(CsvIo, DailyAndSurrogateRoundTrip) {
    std::istringstream in("date,score\n2021-01-01,0.1\n2021-01-15,0.2\n2021-01-25,0.3\n");
    const SurrogatePanel p = aggregate_daily(read_daily_csv(in));
    std::ostringstream out;
    write_surrogate_csv(p, out);
    EXPECT_EQ(out.str(), "month,ys_1,ys_2,ys_3\n2021-01,0.1,0.2,0.3\n");
    std::istringstream back(out.str());
    EXPECT_EQ(read_surrogate_csv(back).ys(), p.ys());
}

TEST(CsvIo, FutureTable) {
    std::istringstream in("month,x_1,ys_1,ys_2\n2024-01,1,2,3\n2024-02,4,5,6\n");
    const FutureTable f = read_future_csv(in);
    EXPECT_EQ(f.values.horizon(), 2);
    EXPECT_EQ(f.values.z.cols(), 0);
    EXPECT_EQ(f.values.x.cols(), 1);
    EXPECT_EQ(f.values.ys.cols(), 2);
}

TEST(CsvIo, ShortestRoundTripFormatting) {
    for (double v : {0.1, -2.5e-17, 1.0 / 3.0, 123456789.0}) {
        EXPECT_EQ(std::stod(format_double(v)), v);
    }
}

TEST(FitIo, RoundTripPreservesEveryField) {
    DgpSpec spec = reference_dgp(0.3, 40);
    spec.seed = 2;
    const SimulatedData sim = generate(spec);
    FitDocument doc{fit_joint(sim.monthly, sim.surrogate, 2, 1), sim.monthly.times(),
                    History::from(sim.monthly, sim.surrogate)};
    const std::string text = to_json(doc);
    const FitDocument back = fit_from_json(text);
    EXPECT_EQ(back.fit.alpha, doc.fit.alpha);
    EXPECT_EQ(back.fit.gamma, doc.fit.gamma);
    EXPECT_EQ(back.fit.delta, doc.fit.delta);
    EXPECT_EQ(back.fit.sigma_e, doc.fit.sigma_e);
    EXPECT_EQ(back.fit.surrogate.A[0], doc.fit.surrogate.A[0]);
    EXPECT_EQ(back.fit.surrogate.B, doc.fit.surrogate.B);
    EXPECT_EQ(back.fit.d_hat, doc.fit.d_hat);
    EXPECT_EQ(back.history.ys, doc.history.ys);
    EXPECT_EQ(back.months, doc.months);
    EXPECT_EQ(to_json(back), text);
}

TEST(FitIo, SchemaIsChecked) {
    EXPECT_SURROX_ERROR(fit_from_json(R"({"schema":"other","version":1})"), ErrorCode::SchemaMismatch);
    EXPECT_SURROX_ERROR(fit_from_json(R"({"schema":"surrox.joint-fit","version":99})"), ErrorCode::SchemaMismatch);
    EXPECT_SURROX_ERROR(fit_from_json(R"({"schema":"surrox.joint-fit","version":1})"), ErrorCode::ParseError);
    EXPECT_SURROX_ERROR(fit_from_json("not json"), ErrorCode::ParseError);
}
