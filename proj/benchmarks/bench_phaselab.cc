// Copyright 2026 The qdeco Authors
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

#include "qdeco/phaselab.h"

namespace {

namespace pl = qdeco::phaselab;

void BM_Dynamics(benchmark::State &state) {
    const auto topology = state.range(1) ? pl::Topology::kLine : pl::Topology::kRandom;
    qdeco::Rng rng(7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pl::run_dynamics(static_cast<int>(state.range(0)), 200, 0.6, topology, rng));
    }
}
BENCHMARK(BM_Dynamics)->ArgsProduct({{500, 2000, 8000}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_BranchingTail(benchmark::State &state) {
    qdeco::Rng rng(8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pl::branching_tail_check({static_cast<double>(state.range(0)), {}, 1000000}, 10000, rng));
    }
}
BENCHMARK(BM_BranchingTail)->Arg(10)->Arg(30)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
