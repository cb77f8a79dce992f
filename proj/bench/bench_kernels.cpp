// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>

#include "lgqho/bohm.hpp"
#include "lgqho/scan.hpp"
#include "lgqho/wigner.hpp"

using namespace lgqho;

namespace {

Execution exec_of(const benchmark::State& st) { return st.range(0) ? Execution::parallel : Execution::serial; }

void BM_WignerGrid(benchmark::State& st) {
    const CoherentState s{0.55, -1.925};
    for (auto _ : st) benchmark::DoNotOptimize(qp_via_wigner(s, -1, 1, 0.555, {801, 6.0, 1e-3}, exec_of(st)));
}

void BM_QuadrantScan(benchmark::State& st) {
    const ScanGrid g{0.0, 1.0, 0.1, 1.5, 2.5, 0.1, 360};
    for (auto _ : st) benchmark::DoNotOptimize(quadrant_scan(g, 2, SeriesOptions::truncated(), exec_of(st)));
}

void BM_BohmBundle(benchmark::State& st) {
    std::vector<double> q, times;
    for (int k = 1; k < 16; ++k) q.push_back(k / 16.0);
    for (int k = 0; k <= 50; ++k) times.push_back(1.5 * k / 50);
    const ChoppedState cs{{0.55, -1.925}, 1};
    for (auto _ : st) benchmark::DoNotOptimize(bohm_trajectories(cs, q, times, exec_of(st)));
}

}  // namespace

BENCHMARK(BM_WignerGrid)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_QuadrantScan)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BohmBundle)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
