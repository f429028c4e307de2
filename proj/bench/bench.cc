// Copyright 2026 The clusterstate Authors
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


// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "clusterstate/ensemble.h"
#include "clusterstate/oracle.h"

using namespace clusterstate;

namespace {

EnsembleTask chain_bench_task(int n) {
    ProtocolParams params;
    params.p = 0.25;
    return chain_task(n, params);
}

void BM_EnsembleChain(benchmark::State &state) {
    auto task = chain_bench_task(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto r = run_ensemble(task, {256, 7, 0, false});
        benchmark::DoNotOptimize(r.stats.time.mean);
    }
}

void BM_EnsembleChainSerial(benchmark::State &state) {
    auto task = chain_bench_task(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto r = run_ensemble_serial(task, {256, 7, 1, false});
        benchmark::DoNotOptimize(r.stats.time.mean);
    }
}

void BM_VerifySweep(benchmark::State &state) {
    for (auto _ : state) {
        auto s = verify_sweep(static_cast<std::size_t>(state.range(0)));
        benchmark::DoNotOptimize(s.cases);
    }
}

void BM_VerifySweepSerial(benchmark::State &state) {
    for (auto _ : state) {
        auto s = verify_sweep_serial(static_cast<std::size_t>(state.range(0)));
        benchmark::DoNotOptimize(s.cases);
    }
}

}  // namespace

BENCHMARK(BM_EnsembleChain)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnsembleChainSerial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifySweep)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifySweepSerial)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
