#include <benchmark/benchmark.h>

#include <cmath>

#include "qorth/analysis.hpp"

namespace {

const qorth::RecurrenceCoefficients& family() {
    static const auto c = qorth::make_example_family(0.3, 0.25);
    return c;
}

const qorth::SupportBasis& basis() {
    static const qorth::SupportBasis b(qorth::measure(family(), 60), family(), 40);
    return b;
}

void BM_SupportBasis(benchmark::State& state) {
    const auto mu = qorth::measure(family(), 60);
    for (auto _ : state) benchmark::DoNotOptimize(qorth::SupportBasis(mu, family(), 40));
}
BENCHMARK(BM_SupportBasis);

void BM_LebesgueConstant(benchmark::State& state) {
    basis();  // build outside the timed loop
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(qorth::lebesgue_constant(basis(), n));
}
BENCHMARK(BM_LebesgueConstant)->Arg(5)->Arg(20)->Arg(40);

void BM_PartialSum(benchmark::State& state) {
    const auto f = basis().sample([](double y) { return std::sqrt(y); });
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(qorth::partial_sum(basis(), f, n));
}
BENCHMARK(BM_PartialSum)->Arg(5)->Arg(40);

void BM_Linearization(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(qorth::linearization(family(), n, n));
}
BENCHMARK(BM_Linearization)->Arg(6)->Arg(25);

}  // namespace
