// Copyright 2026 The quantgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qg/fixtures.hpp"
#include "qg/oracle.hpp"
#include "qg/reductions.hpp"
#include "qg/solvers.hpp"
#include "qg/strategies.hpp"
#include "qg/tradeoff.hpp"

namespace {

qg::Arena weighted(size_t n, uint64_t seed) {
  qg::oracle::GenParams p;
  p.vertices = n;
  p.edge_density = 4.0 / static_cast<double>(n);
  p.max_weight = 8;
  return qg::oracle::random_arena(p, seed);
}

qg::Arena recharge(size_t n, uint64_t seed) {
  qg::oracle::GenParams p;
  p.vertices = n;
  p.edge_density = 4.0 / static_cast<double>(n);
  p.max_weight = 4;
  p.recharge_mode = true;
  return qg::oracle::random_arena(p, seed);
}

void BM_MeanPayoffValues(benchmark::State& state) {
  qg::Arena a = weighted(static_cast<size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(qg::mean_payoff_values(a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MeanPayoffValues)->RangeMultiplier(2)->Range(16, 128)->Complexity();

void BM_Parity3(benchmark::State& state) {
  qg::Arena a = recharge(static_cast<size_t>(state.range(0)), 2);
  qg::ParityReduction r = qg::reduce_exists_cap_to_parity(a);
  for (auto _ : state) benchmark::DoNotOptimize(qg::solve_parity3(r.product.arena, r.coloring));
}
BENCHMARK(BM_Parity3)->RangeMultiplier(2)->Range(16, 512);

void BM_ExistsCapRecharge(benchmark::State& state) {
  qg::Arena a = recharge(static_cast<size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(qg::exists_cap_recharge(a));
}
BENCHMARK(BM_ExistsCapRecharge)->RangeMultiplier(2)->Range(8, 128);

void BM_EnergyLU(benchmark::State& state) {
  qg::Arena a = weighted(32, 4);
  for (auto _ : state) benchmark::DoNotOptimize(qg::solve_energy_lu(a, state.range(0)));
}
BENCHMARK(BM_EnergyLU)->RangeMultiplier(4)->Range(4, 256);

void BM_AvgRechargeReduction(benchmark::State& state) {
  qg::Arena a = qg::fixtures::tradeoff();
  for (auto _ : state) {
    benchmark::DoNotOptimize(qg::solve_objective(a, qg::obj::AvgRecharge{state.range(0), qg::Rational(1)}));
  }
}
BENCHMARK(BM_AvgRechargeReduction)->DenseRange(1, 7, 2);

void BM_SweepCapacity(benchmark::State& state) {
  qg::Arena a = qg::fixtures::tradeoff();
  for (auto _ : state) benchmark::DoNotOptimize(qg::sweep_capacity(a, 1, 7, 1));
}
BENCHMARK(BM_SweepCapacity);

void BM_SweepMemory(benchmark::State& state) {
  qg::Arena a = qg::fixtures::memlb();
  for (auto _ : state) benchmark::DoNotOptimize(qg::sweep_memory(a, 4, 1, state.range(0), 1));
}
BENCHMARK(BM_SweepMemory)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
