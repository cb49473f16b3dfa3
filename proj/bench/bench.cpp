// Serial reference kernels against their OpenMP versions. Both paths return
// bit-identical results; only wall time differs.

#include <benchmark/benchmark.h>

#include "qnr/qrange.hpp"
#include "qnr/radii.hpp"
#include "qnr/random.hpp"

using namespace qnr;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(1) ? Exec::Parallel : Exec::Serial; }

CMat operand(const benchmark::State& st) {
    return sample_ensemble(Ensemble::Random, static_cast<std::size_t>(st.range(0)), 17);
}

void BM_PencilScan(benchmark::State& st) {
    const CMat t = operand(st);
    for (auto _ : st) benchmark::DoNotOptimize(pencil_scan(t, 720, exec_of(st)));
}

void BM_OmegaQ(benchmark::State& st) {
    const CMat t = operand(st);
    SphereOptions opt;
    opt.exec = exec_of(st);
    for (auto _ : st) benchmark::DoNotOptimize(omega_q(t, 0.6, opt).value);
}

void BM_SupportTable(benchmark::State& st) {
    const CMat t = operand(st);
    const auto grid = theta_grid(90);
    TableOptions opt;
    opt.exec = exec_of(st);
    for (auto _ : st) benchmark::DoNotOptimize(support_table(t, Complex(0.5, 0.2), grid, opt));
}

void args(benchmark::internal::Benchmark* b) {
    b->ArgNames({"dim", "parallel"})->Unit(benchmark::kMillisecond);
    for (int n : {4, 8, 16})
        for (int p : {0, 1}) b->Args({n, p});
}

}  // namespace

BENCHMARK(BM_PencilScan)->Apply(args);
BENCHMARK(BM_OmegaQ)->Apply(args);
BENCHMARK(BM_SupportTable)->Apply(args);

BENCHMARK_MAIN();
