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

#ifndef QDECO_GATES_H_
#define QDECO_GATES_H_

#include "qdeco/complex_matrix.h"

/// Standard gate matrices. Two-qubit gates use the first target as the most
/// significant bit (for cnot(), the control).
namespace qdeco::gates {

ComplexMatrix identity();
ComplexMatrix hadamard();
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix phase_s();
ComplexMatrix phase_t();
ComplexMatrix rx(double theta);
ComplexMatrix ry(double theta);
ComplexMatrix rz(double theta);

ComplexMatrix cnot();
ComplexMatrix cz();
ComplexMatrix swap();
/// |0><0| (x) I + |1><1| (x) u.
ComplexMatrix controlled(const ComplexMatrix &u);

/// CNOT preceded by a Hadamard on the control, as one two-qubit unitary.
/// Maps |00> to a Bell pair; the default gate of the circuit generators.
ComplexMatrix entangler();

}  // namespace qdeco::gates

#endif
