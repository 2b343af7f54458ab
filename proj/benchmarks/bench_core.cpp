#include <benchmark/benchmark.h>

#include <cmath>

#include "hardylab/hardy.hpp"
#include "hardylab/seminorms.hpp"

using namespace hardylab;

namespace {
const double kE = std::exp(1.0);
}

static void BM_EvalChain(benchmark::State& state) {
    const WeightChain chain(static_cast<int>(state.range(0)), kE);
    double t = 1e-6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_chain(chain, t));
        t = (t < 1.0) ? t * 1.0000001 : 1e-6;
    }
}
BENCHMARK(BM_EvalChain)->Arg(2)->Arg(8);

static void BM_ChainCascadeQuadrature(benchmark::State& state) {
    const WeightChain chain(static_cast<int>(state.range(0)), kE);
    for (auto _ : state) benchmark::DoNotOptimize(chain_over_t_quadrature(chain, 1.0, 1e-7));
}
BENCHMARK(BM_ChainCascadeQuadrature)->Arg(2)->Arg(5);

static void BM_Gagliardo1D(benchmark::State& state) {
    const TestFunction u = TestFunction::smooth_bump(0.5, 0.25, 1.0);
    const double s = state.range(0) / 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(gagliardo_1d(u, 0.0, 1.0, s).value);
}
BENCHMARK(BM_Gagliardo1D)->Arg(5)->Arg(9);

static void BM_GagliardoMC(benchmark::State& state) {
    const TestFunction u = TestFunction::coordinate();
    const Domain sq = Domain::unit_square();
    for (auto _ : state) benchmark::DoNotOptimize(gagliardo_nd(u, sq, 0.5, state.range(0), 42).value);
}
BENCHMARK(BM_GagliardoMC)->Arg(50000)->Arg(400000);

static void BM_WeightedLhs1D(benchmark::State& state) {
    const TestFunction u = TestFunction::smooth_bump(1.0, 0.4, 1.0);
    const Domain omega = Domain::interval(1.0);
    HardyCase c(u, omega, WeightChain(static_cast<int>(state.range(0)), kE));
    for (auto _ : state) benchmark::DoNotOptimize(weighted_lhs(c));
}
BENCHMARK(BM_WeightedLhs1D)->Arg(2)->Arg(8);

static void BM_WeightedLhs2D(benchmark::State& state) {
    const TestFunction u = TestFunction::tensor(TestFunction::smooth_bump(0.5, 0.3, 1.0));
    const Domain sq = Domain::unit_square();
    HardyCase c(u, sq, WeightChain(static_cast<int>(state.range(0)), kE));
    for (auto _ : state) benchmark::DoNotOptimize(weighted_lhs(c));
}
BENCHMARK(BM_WeightedLhs2D)->Arg(2);

BENCHMARK_MAIN();
