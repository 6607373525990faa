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

#ifndef QDECO_OBSERVABLE_H_
#define QDECO_OBSERVABLE_H_

#include <span>
#include <vector>

#include "qdeco/complex_matrix.h"

namespace qdeco {

/// One eigenvalue of an observable together with the projector onto its
/// eigenspace.
struct Eigenspace {
    double eigenvalue;
    ComplexMatrix projector;

    bool operator==(const Eigenspace &other) const = default;
};

/// A hermitian operator on k qubits stored with its spectral decomposition.
///
/// Eigenspaces are sorted by ascending eigenvalue and degenerate eigenvalues
/// share a single projector, so the outcome index of a measurement is the
/// index into `eigenspaces()`.
class Observable {
   public:
    /// Decomposes a hermitian 2^k x 2^k matrix. The 2x2 case is closed form;
    /// larger matrices go through a self-adjoint eigensolver. `matrix()`
    /// returns `h` unchanged.
    static Observable from_hermitian(const ComplexMatrix &h);

    /// Builds an observable from explicit eigenspaces. Projectors must be
    /// hermitian, idempotent, mutually orthogonal and sum to the identity.
    static Observable from_eigenspaces(std::vector<Eigenspace> spaces);

    /// diag(0, 1): outcome eigenvalue equals the measured bit.
    static Observable computational_basis();
    static Observable pauli_z();
    static Observable pauli_x();
    static Observable pauli_y();

    int num_qubits() const { return num_qubits_; }
    const ComplexMatrix &matrix() const { return matrix_; }
    std::span<const Eigenspace> eigenspaces() const { return spaces_; }
    std::size_t num_outcomes() const { return spaces_.size(); }

    /// True when every projector is rank one (a complete basis measurement).
    bool is_nondegenerate() const;

    /// Checks the projector invariants; throws std::invalid_argument.
    void validate(double tol = 1e-10) const;

    bool operator==(const Observable &other) const = default;

   private:
    static std::vector<Eigenspace> closed_form_spaces(const ComplexMatrix &h);
    Observable(int num_qubits, ComplexMatrix matrix, std::vector<Eigenspace> spaces);

    int num_qubits_ = 0;
    ComplexMatrix matrix_;
    std::vector<Eigenspace> spaces_;
};

/// Closed-form eigendecomposition of a 2x2 hermitian matrix. A multiple of
/// the identity yields a single eigenspace with projector I.
Observable eigendecompose_1q(const ComplexMatrix &h);

}  // namespace qdeco

#endif
