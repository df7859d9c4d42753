#include <benchmark/benchmark.h>

#include "sbparity/bath.hpp"
#include "sbparity/fockspace.hpp"
#include "sbparity/sectors.hpp"

using namespace sbparity;

namespace {

bath::DiscretizedBath make_bath(int modes) {
    return bath::discretize({0.5, 0.1, 1.0, 1e-3}, {2.0, modes - 1});
}

void BM_TunnelingMatrix(benchmark::State& state) {
    const int modes = static_cast<int>(state.range(0));
    const int n_max = static_cast<int>(state.range(1));
    const auto b = make_bath(modes);
    const auto basis = fock::enumerate_basis(static_cast<std::size_t>(modes), n_max);
    for (auto _ : state) benchmark::DoNotOptimize(fock::tunneling_matrix(b, basis));
    state.counters["dim"] = static_cast<double>(basis.dim());
}
BENCHMARK(BM_TunnelingMatrix)->Args({1, 40})->Args({2, 12})->Args({3, 8})->Args({4, 6})->Unit(benchmark::kMillisecond);

void BM_GroundState(benchmark::State& state) {
    const int modes = static_cast<int>(state.range(0));
    const int n_max = static_cast<int>(state.range(1));
    const auto b = make_bath(modes);
    const auto basis = fock::enumerate_basis(static_cast<std::size_t>(modes), n_max);
    for (auto _ : state) benchmark::DoNotOptimize(sectors::solve_sectors(b, {0.2, 0.0}, basis));
    state.counters["dim"] = static_cast<double>(basis.dim());
}
BENCHMARK(BM_GroundState)->Args({2, 12})->Args({3, 10})->Args({4, 8})->Unit(benchmark::kMillisecond);

void BM_Beta2(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(bath::beta2(0.1, 2.0, N));
}
BENCHMARK(BM_Beta2)->Arg(10)->Arg(40)->Arg(200);

void BM_Beta2Exact(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(bath::beta2_exact(Rational(1), Rational(2), N));
}
BENCHMARK(BM_Beta2Exact)->Arg(10)->Arg(40);

}  // namespace
BENCHMARK_MAIN();
