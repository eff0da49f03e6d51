/*
 * Copyright 2026 The mst Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// Serial reference against the OpenMP Monte Carlo driver.

#include <benchmark/benchmark.h>

#include "mst/asymptotics.hpp"
#include "mst/random.hpp"

namespace {

void BM_MonteCarloSerial(benchmark::State& state) {
  const auto m = static_cast<unsigned>(state.range(0));
  const auto n = static_cast<std::uint64_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mst::monte_carlo_serial(m, n, 16, mst::kDefaultSeed));
  }
  state.SetItemsProcessed(state.iterations() * 16 * state.range(1));
}

void BM_MonteCarloParallel(benchmark::State& state) {
  const auto m = static_cast<unsigned>(state.range(0));
  const auto n = static_cast<std::uint64_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mst::monte_carlo(m, n, 16, mst::kDefaultSeed));
  }
  state.SetItemsProcessed(state.iterations() * 16 * state.range(1));
}

void BM_CltProbeSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(mst::clt_probe_serial(10, 20000, 32, mst::kDefaultSeed));
  }
}

void BM_CltProbeParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(mst::clt_probe(10, 20000, 32, mst::kDefaultSeed));
  }
}

}  // namespace

BENCHMARK(BM_MonteCarloSerial)->Args({3, 10000})->Args({10, 100000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Args({3, 10000})->Args({10, 100000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CltProbeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CltProbeParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
