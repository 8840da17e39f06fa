#include <benchmark/benchmark.h>

#include "algocool/analytics.hpp"
#include "algocool/channels.hpp"
#include "algocool/protocols.hpp"
#include "algocool/thermo.hpp"

using namespace algocool;

namespace {

void BM_SortCompression(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const DiagonalState reg = thermal_qubit_register(n, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sort_compression(reg));
    }
}
BENCHMARK(BM_SortCompression)->Arg(5)->Arg(8)->Arg(11);

void BM_Round(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ProtocolPlan plan = ProtocolPlan::ppa(n, 1.0);
    DiagonalState cur = plan.initial_state();
    for (auto _ : state) {
        for (const Step& s : round_steps(plan, cur)) cur = s.op.apply(cur);
        benchmark::DoNotOptimize(cur);
    }
}
BENCHMARK(BM_Round)->Arg(4)->Arg(6)->Arg(9);

void BM_Run50Rounds(benchmark::State& state) {
    const ProtocolPlan plan = ProtocolPlan::ppa(4, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run(plan, 50, std::nullopt, false));
    }
}
BENCHMARK(BM_Run50Rounds);

void BM_QMax(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(q_max(n, 0.7));
    }
}
BENCHMARK(BM_QMax)->Arg(5)->Arg(20)->Arg(50);

void BM_AsymptoticState(benchmark::State& state) {
    const ProtocolPlan plan = ProtocolPlan::ppa(4, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(asymptotic_state(plan, 1e-10, 10000));
    }
}
BENCHMARK(BM_AsymptoticState);

void BM_EfficiencyReports(benchmark::State& state) {
    const CoolingTrace trace = run(ProtocolPlan::ppa(4, 1.0), 50);
    for (auto _ : state) {
        benchmark::DoNotOptimize(efficiency_reports(trace));
    }
}
BENCHMARK(BM_EfficiencyReports);

} // namespace

BENCHMARK_MAIN();
