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

#include <vector>

#include "qdeco/clustersim.h"
#include "qdeco/generators.h"

namespace {

// One full trial of the cluster sampler; range(0) is the horizon and
// range(1) the per-site rate in percent.
void BM_SequentialTrial(benchmark::State &state) {
    qdeco::Rng gen(3);
    const int horizon = static_cast<int>(state.range(0));
    const double eta = static_cast<double>(state.range(1)) / 100;
    const qdeco::Medium m = qdeco::sequential_circuit({30, horizon, eta, {}, {}}, gen);
    const std::vector<int> input(30, 0);
    qdeco::Rng rng(4);
    double entries = 0;
    for (auto _ : state) {
        const auto r = qdeco::run_trial(m, m.fault, input, rng);
        entries += static_cast<double>(r.stats.entries_written);
    }
    state.counters["entries"] = benchmark::Counter(entries, benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_SequentialTrial)->ArgsProduct({{50, 100, 200}, {10, 30}})->Unit(benchmark::kMillisecond);

void BM_RandomMatchingTrial(benchmark::State &state) {
    qdeco::Rng gen(5);
    const qdeco::Medium m = qdeco::random_matching_circuit({40, 100, 0.97, {}, {}}, gen);
    const std::vector<int> input(40, 0);
    qdeco::Rng rng(6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qdeco::run_trial(m, m.fault, input, rng));
    }
}
BENCHMARK(BM_RandomMatchingTrial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
