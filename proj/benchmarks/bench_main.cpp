#include "surrox/estimator.hpp"
#include "surrox/forecaster.hpp"
#include "surrox/inference.hpp"
#include "surrox/simulation.hpp"

#include <benchmark/benchmark.h>

using namespace surrox;

namespace {

SimulatedData sample(Index t_len) {
    DgpSpec spec = reference_dgp(0.3, t_len);
    spec.seed = 1;
    return generate(spec);
}

void BM_FitJoint(benchmark::State& state) {
    const SimulatedData sim = sample(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(fit_joint(sim.monthly, sim.surrogate, 2, 1));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FitJoint)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_CompanionWeight(benchmark::State& state) {
    const Eigen::VectorXd alpha = (Eigen::VectorXd(4) << 0.4, -0.2, 0.1, 0.05).finished();
    for (auto _ : state) benchmark::DoNotOptimize(companion_weight(alpha, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CompanionWeight)->Arg(1)->Arg(8)->Arg(64);

void BM_Bootstrap(benchmark::State& state) {
    const Index horizon = 8, t_len = 52;
    const SimulatedData sim = sample(t_len + horizon);
    const MonthlyPanel m = sim.monthly.head(t_len);
    const SurrogatePanel sp = sim.surrogate.head(t_len);
    const JointFit fit = fit_joint(m, sp, 2, 1);
    const History hist = History::from(m, sp);
    const FutureExogenous fut{Eigen::MatrixXd(horizon, 0), sim.monthly.x().bottomRows(horizon),
                              sim.surrogate.ys().bottomRows(horizon)};
    BootstrapConfig cfg;
    cfg.B = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(boot_interval(fit, hist, fut, horizon, cfg, 0.05));
}
BENCHMARK(BM_Bootstrap)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_RunExperiment(benchmark::State& state) {
    ExperimentGrid g;
    g.rhos = {0.1};
    g.horizons = {8};
    g.boot_intervals = false;
    for (auto _ : state) benchmark::DoNotOptimize(run_experiment(g, static_cast<int>(state.range(0)), 5));
}
BENCHMARK(BM_RunExperiment)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
