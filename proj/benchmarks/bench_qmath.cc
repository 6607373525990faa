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

#include <numeric>
#include <vector>

#include "qdeco/density_matrix.h"
#include "qdeco/gates.h"

namespace {

using qdeco::DensityMatrix;

DensityMatrix mixed_state(int n) {
    std::vector<int> bits(static_cast<std::size_t>(n), 0);
    DensityMatrix rho = DensityMatrix::basis_state(bits);
    for (int q = 0; q < n; q++) {
        const int t[] = {q};
        rho = qdeco::apply_unitary(std::move(rho), qdeco::gates::hadamard(), t);
    }
    return rho;
}

void BM_ApplyTwoQubitGate(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    DensityMatrix rho = mixed_state(n);
    const auto u = qdeco::gates::entangler();
    const int targets[] = {0, n - 1};
    for (auto _ : state) {
        rho = qdeco::apply_unitary(std::move(rho), u, targets);
        benchmark::DoNotOptimize(rho);
    }
    state.SetComplexityN(static_cast<int64_t>(rho.dim() * rho.dim()));
}
BENCHMARK(BM_ApplyTwoQubitGate)->DenseRange(2, 12, 2)->Complexity(benchmark::oN);

void BM_ReduceToHalf(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const DensityMatrix rho = mixed_state(n);
    std::vector<int> keep(static_cast<std::size_t>(n / 2));
    std::iota(keep.begin(), keep.end(), 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qdeco::reduce(rho, keep));
    }
}
BENCHMARK(BM_ReduceToHalf)->DenseRange(2, 12, 2);

void BM_Tensor(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const DensityMatrix a = mixed_state(n);
    const DensityMatrix b = mixed_state(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qdeco::tensor(a, b));
    }
}
BENCHMARK(BM_Tensor)->DenseRange(1, 6);

}  // namespace

BENCHMARK_MAIN();
