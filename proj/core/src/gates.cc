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

#include "qdeco/gates.h"

#include <cmath>

namespace qdeco::gates {

namespace {
const Complex kI{0, 1};
const double kInvSqrt2 = 1 / std::sqrt(2.0);
}  // namespace

ComplexMatrix identity() {
    return ComplexMatrix::identity(2);
}

ComplexMatrix hadamard() {
    return ComplexMatrix{{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}};
}

ComplexMatrix pauli_x() {
    return ComplexMatrix{{0, 1}, {1, 0}};
}

ComplexMatrix pauli_y() {
    return ComplexMatrix{{0, -kI}, {kI, 0}};
}

ComplexMatrix pauli_z() {
    return ComplexMatrix{{1, 0}, {0, -1}};
}

ComplexMatrix phase_s() {
    return ComplexMatrix{{1, 0}, {0, kI}};
}

ComplexMatrix phase_t() {
    return ComplexMatrix{{1, 0}, {0, std::exp(kI * (M_PI / 4))}};
}

ComplexMatrix rx(double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    return ComplexMatrix{{c, -kI * s}, {-kI * s, c}};
}

ComplexMatrix ry(double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    return ComplexMatrix{{c, -s}, {s, c}};
}

ComplexMatrix rz(double theta) {
    return ComplexMatrix{{std::exp(-kI * (theta / 2)), 0}, {0, std::exp(kI * (theta / 2))}};
}

ComplexMatrix cnot() {
    return controlled(pauli_x());
}

ComplexMatrix cz() {
    return controlled(pauli_z());
}

ComplexMatrix swap() {
    return ComplexMatrix{
        {1, 0, 0, 0},
        {0, 0, 1, 0},
        {0, 1, 0, 0},
        {0, 0, 0, 1},
    };
}

ComplexMatrix controlled(const ComplexMatrix &u) {
    ComplexMatrix out = ComplexMatrix::identity(2 * u.rows());
    for (std::size_t r = 0; r < u.rows(); r++) {
        for (std::size_t c = 0; c < u.cols(); c++) {
            out(u.rows() + r, u.cols() + c) = u(r, c);
        }
    }
    return out;
}

ComplexMatrix entangler() {
    return cnot() * kron(hadamard(), identity());
}

}  // namespace qdeco::gates
