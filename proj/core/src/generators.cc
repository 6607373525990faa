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

#include "qdeco/generators.h"

#include <numeric>
#include <stdexcept>

#include "qdeco/gates.h"

namespace qdeco {

namespace {

Medium empty_medium(const GeneratorOptions &options) {
    if (options.num_qubits < 2) {
        throw std::invalid_argument("circuit generators need at least two qubits");
    }
    if (options.horizon < 0) {
        throw std::invalid_argument("circuit generators need a non-negative horizon");
    }
    Medium m;
    m.num_qubits = options.num_qubits;
    m.lifetimes.assign(static_cast<std::size_t>(options.num_qubits), Lifetime{0, options.horizon});
    m.eta = options.eta;
    m.fault = options.fault;
    m.result_qubits.resize(static_cast<std::size_t>(options.num_qubits));
    std::iota(m.result_qubits.begin(), m.result_qubits.end(), 0);
    return m;
}

class GatePicker {
   public:
    explicit GatePicker(const GeneratorOptions &options) : set_(options.gate_set) {
        if (set_.empty()) {
            set_.push_back(gates::entangler());
        }
        for (const auto &g : set_) {
            if (g.qubit_count() != 2 || !g.is_unitary(1e-10)) {
                throw std::invalid_argument("generator gate sets must hold two-qubit unitaries");
            }
        }
    }

    const ComplexMatrix &pick(Rng &rng) const { return set_.size() == 1 ? set_[0] : set_[rng.below(set_.size())]; }

   private:
    std::vector<ComplexMatrix> set_;
};

void add_gate(Medium &m, const ComplexMatrix &u, int a, int b, int t) {
    m.gates.push_back(GateSpec{GateKind::kUnitary, u, {a, b}, t});
}

}  // namespace

Medium random_matching_circuit(const GeneratorOptions &options, Rng &rng) {
    Medium m = empty_medium(options);
    const GatePicker picker(options);
    std::vector<int> order(static_cast<std::size_t>(options.num_qubits));
    for (int t = 0; t <= options.horizon; t++) {
        std::iota(order.begin(), order.end(), 0);
        for (std::size_t i = order.size() - 1; i > 0; i--) {
            std::swap(order[i], order[rng.below(i + 1)]);
        }
        for (std::size_t i = 0; i + 1 < order.size(); i += 2) {
            add_gate(m, picker.pick(rng), order[i], order[i + 1], t);
        }
    }
    return m;
}

Medium nearest_neighbor_circuit(const GeneratorOptions &options, Rng &rng) {
    Medium m = empty_medium(options);
    const GatePicker picker(options);
    for (int t = 0; t <= options.horizon; t++) {
        for (int a = t % 2; a + 1 < options.num_qubits; a += 2) {
            add_gate(m, picker.pick(rng), a, a + 1, t);
        }
    }
    return m;
}

Medium sequential_circuit(const GeneratorOptions &options, Rng &rng) {
    Medium m = empty_medium(options);
    const GatePicker picker(options);
    const auto n = static_cast<uint64_t>(options.num_qubits);
    for (int t = 0; t <= options.horizon; t++) {
        const auto a = static_cast<int>(rng.below(n));
        auto b = static_cast<int>(rng.below(n - 1));
        if (b >= a) {
            b++;
        }
        add_gate(m, picker.pick(rng), a, b, t);
    }
    return m;
}

}  // namespace qdeco
