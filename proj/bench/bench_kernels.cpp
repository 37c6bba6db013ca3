// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

// Serial reference against the OpenMP kernels.

#include <txpack/equilibrium.h>
#include <txpack/game.h>
#include <txpack/kernels.h>
#include <txpack/rng.h>
#include <txpack/simulator.h>

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

using namespace txpack;

namespace {

Mempool make_mempool(std::size_t n, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<Transaction> txs;
    txs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) txs.push_back({static_cast<TxId>(i), std::exp(10.0 * rng.uniform() - 5.0), 1.0});
    return Mempool(std::move(txs));
}

std::vector<double> make_raw(std::size_t n)
{
    Rng rng(n);
    std::vector<double> raw(n);
    for (auto& x : raw) x = 6.0 * rng.uniform() - 3.0;
    return raw;
}

template <Execution E>
void BM_SolveEquilibrium(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const Mempool m = make_mempool(n, 1);
    const GameParams params{static_cast<double>(n / 10), 1.0};
    for (auto _ : state) benchmark::DoNotOptimize(solve_equilibrium(m, params, SizeMode::fixed, E));
    state.SetComplexityN(state.range(0));
}

void BM_ClampedMassSerial(benchmark::State& state)
{
    const auto raw = make_raw(static_cast<std::size_t>(state.range(0)));
    const std::vector<double> sizes(raw.size(), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(reference::clamped_mass(raw, sizes, 0.25));
}

void BM_ClampedMassParallel(benchmark::State& state)
{
    const auto raw = make_raw(static_cast<std::size_t>(state.range(0)));
    const std::vector<double> sizes(raw.size(), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::clamped_mass(raw, sizes, 0.25));
}

template <Execution E>
void BM_RunTrials(benchmark::State& state)
{
    const Mempool m = make_mempool(200, 2);
    const GameParams params{20.0, 2.0};
    const auto source = make_block_source(StrategyKind::equilibrium, m, params, SizeMode::fixed);
    for (auto _ : state) benchmark::DoNotOptimize(run_trials(m, *source, params, 1, state.range(0), 0, E));
}

template <Execution E>
void BM_BruteForce(benchmark::State& state)
{
    const Mempool m = make_mempool(static_cast<std::size_t>(state.range(0)), 3);
    const GameParams params{5.0, 1.0};
    const auto eq = solve_equilibrium(m, params, SizeMode::fixed);
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_check(m, params, eq.profile.values, 1e-8, E));
}

} // namespace

BENCHMARK(BM_SolveEquilibrium<Execution::serial>)->RangeMultiplier(10)->Range(10'000, 1'000'000)->Complexity(benchmark::oNLogN);
BENCHMARK(BM_SolveEquilibrium<Execution::parallel>)->RangeMultiplier(10)->Range(10'000, 1'000'000)->Complexity(benchmark::oNLogN);
BENCHMARK(BM_ClampedMassSerial)->Arg(1'000'000);
BENCHMARK(BM_ClampedMassParallel)->Arg(1'000'000);
BENCHMARK(BM_RunTrials<Execution::serial>)->Arg(10'000);
BENCHMARK(BM_RunTrials<Execution::parallel>)->Arg(10'000);
BENCHMARK(BM_BruteForce<Execution::serial>)->Arg(16);
BENCHMARK(BM_BruteForce<Execution::parallel>)->Arg(16);

BENCHMARK_MAIN();
