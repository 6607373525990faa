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

#ifndef QDECO_GENERATORS_H_
#define QDECO_GENERATORS_H_

#include <vector>

#include "qdeco/complex_matrix.h"
#include "qdeco/medium.h"
#include "qdeco/rng.h"

namespace qdeco {

/// Shared parameters of the built-in circuit families. Every qubit lives for
/// steps [0, horizon], gates are placed at every step, and all qubits are
/// result qubits.
struct GeneratorOptions {
    int num_qubits = 2;
    int horizon = 0;
    double eta = 0;
    FaultSpec fault;
    /// Two-qubit gates to draw from, uniformly per gate. Empty means
    /// {gates::entangler()}.
    std::vector<ComplexMatrix> gate_set;
};

/// Each step pairs the qubits by a uniformly random perfect matching (one
/// random qubit idle when n is odd) and puts a gate on every pair.
Medium random_matching_circuit(const GeneratorOptions &options, Rng &rng);

/// Qubits on a line; even steps pair (2i, 2i+1), odd steps (2i+1, 2i+2).
Medium nearest_neighbor_circuit(const GeneratorOptions &options, Rng &rng);

/// One gate per step on a uniformly random pair of distinct qubits.
Medium sequential_circuit(const GeneratorOptions &options, Rng &rng);

}  // namespace qdeco

#endif
