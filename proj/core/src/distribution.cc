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

#include "qdeco/distribution.h"

#include <cmath>

namespace qdeco {

double tv_distance(const Distribution &a, const Distribution &b) {
    double sum = 0;
    for (const auto &[key, p] : a) {
        auto it = b.find(key);
        sum += std::abs(p - (it == b.end() ? 0.0 : it->second));
    }
    for (const auto &[key, p] : b) {
        if (!a.contains(key)) {
            sum += std::abs(p);
        }
    }
    return sum / 2;
}

double total_probability(const Distribution &d) {
    double sum = 0;
    for (const auto &[key, p] : d) {
        sum += p;
    }
    return sum;
}

Distribution marginal_distribution(const DensityMatrix &rho, std::span<const int> positions) {
    detail::check_positions(positions, rho.num_qubits(), "marginal_distribution");
    const int n = rho.num_qubits();
    Distribution out;
    std::string key(positions.size(), '0');
    for (std::size_t idx = 0; idx < rho.dim(); idx++) {
        const double p = rho(idx, idx).real();
        if (p <= 0) {
            continue;
        }
        for (std::size_t a = 0; a < positions.size(); a++) {
            key[a] = ((idx >> (n - 1 - positions[a])) & 1) ? '1' : '0';
        }
        out[key] += p;
    }
    return out;
}

}  // namespace qdeco
