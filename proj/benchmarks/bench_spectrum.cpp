#include <benchmark/benchmark.h>

#include "qorth/spectrum.hpp"

namespace {

const qorth::RecurrenceCoefficients& family() {
    static const auto c = qorth::make_example_family(0.3, 0.25);
    return c;
}

void BM_TruncatedZeros(benchmark::State& state) {
    const auto N = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(qorth::truncated_zeros(family(), N));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TruncatedZeros)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_Quadrature(benchmark::State& state) {
    const auto N = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(qorth::quadrature(family(), N));
}
BENCHMARK(BM_Quadrature)->RangeMultiplier(2)->Range(8, 256);

void BM_Measure(benchmark::State& state) {
    const auto K = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(qorth::measure(family(), K));
}
BENCHMARK(BM_Measure)->Arg(10)->Arg(30)->Arg(60)->Arg(120);

}  // namespace
