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

#ifndef QDECO_DENSITY_MATRIX_H_
#define QDECO_DENSITY_MATRIX_H_

#include <cstdint>
#include <span>
#include <vector>

#include "qdeco/complex_matrix.h"
#include "qdeco/observable.h"

namespace qdeco {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPositivityTol = 1e-9;
/// Measurement outcomes with probability below this are dropped.
inline constexpr double kZeroProbability = 1e-12;

/// Hermitian, trace-one matrix over an ordered list of qubit positions.
///
/// Position 0 is the most significant bit of the row/column index, so for
/// three qubits index 0b110 means position 0 and 1 are |1> and position 2 is
/// |0>. A zero-qubit matrix is the scalar [[1]].
class DensityMatrix {
   public:
    DensityMatrix();

    /// Validates hermiticity and unit trace, throws std::invalid_argument.
    static DensityMatrix from_matrix(ComplexMatrix m);
    /// Takes ownership without the O(4^n) validation. For kernels whose
    /// result is hermitian and trace one by construction.
    static DensityMatrix adopt(ComplexMatrix m);

    /// |b_0 b_1 ... ><b_0 b_1 ...| for the given bits (position order).
    static DensityMatrix basis_state(std::span<const int> bits);
    static DensityMatrix basis_state(int bit);
    static DensityMatrix maximally_mixed(int num_qubits);
    /// |psi><psi| for a normalized amplitude vector of length 2^n.
    static DensityMatrix from_pure(std::span<const Complex> amplitudes);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return matrix_.rows(); }
    const ComplexMatrix &matrix() const { return matrix_; }
    Complex operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }
    double trace() const { return matrix_.trace().real(); }
    ComplexMatrix release() && { return std::move(matrix_); }

    double max_abs_diff(const DensityMatrix &other) const { return matrix_.max_abs_diff(other.matrix_); }
    bool approx_equal(const DensityMatrix &other, double tol) const {
        return num_qubits_ == other.num_qubits_ && matrix_.approx_equal(other.matrix_, tol);
    }

    /// Smallest eigenvalue >= -tol. Full eigensolve; meant for tests.
    bool is_positive_semidefinite(double tol = kPositivityTol) const;

    /// Diagonal of the matrix: the computational-basis distribution.
    std::vector<double> diagonal() const;

   private:
    explicit DensityMatrix(ComplexMatrix m);

    int num_qubits_ = 0;
    ComplexMatrix matrix_;
};

/// a (x) b; the result's positions are a's followed by b's.
DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);

/// Reorders qubit positions: result position p holds source position
/// `source_of[p]`. `source_of` must be a permutation of 0..n-1.
DensityMatrix permute_qubits(const DensityMatrix &rho, std::span<const int> source_of);

/// U~ rho U~^dagger with U~ = u on `targets` (targets[0] is u's most
/// significant bit) and identity elsewhere. Never forms U~ explicitly.
DensityMatrix apply_unitary(DensityMatrix rho, const ComplexMatrix &u, std::span<const int> targets);

/// Partial trace keeping the positions in `keep`, in that order.
DensityMatrix reduce(const DensityMatrix &rho, std::span<const int> keep);

/// Pr(outcome s) = tr(P~_s rho) for every eigenspace of `obs`, including
/// zero-probability ones, indexed like `obs.eigenspaces()`.
std::vector<double> outcome_probabilities(const DensityMatrix &rho, const Observable &obs, std::span<const int> targets);

/// P~_s rho P~_s / p_s. Throws if p_s < kZeroProbability.
DensityMatrix condition_on_outcome(
    const DensityMatrix &rho, const Observable &obs, std::size_t outcome, std::span<const int> targets);

struct MeasurementOutcome {
    std::size_t outcome;  // index into obs.eigenspaces()
    double eigenvalue;
    double probability;
    DensityMatrix state;
};

/// Every outcome with probability >= kZeroProbability, with its conditioned
/// post-measurement state.
std::vector<MeasurementOutcome> measure_conditioned(
    const DensityMatrix &rho, const Observable &obs, std::span<const int> targets);

/// sum_s P~_s rho P~_s.
DensityMatrix measure_unconditioned(const DensityMatrix &rho, const Observable &obs, std::span<const int> targets);

namespace detail {

/// op~ m op~^dagger on a 2^n x 2^n matrix, op acting on `targets`.
ComplexMatrix sandwich(const ComplexMatrix &m, int num_qubits, const ComplexMatrix &op, std::span<const int> targets);

/// Checks positions are distinct and within [0, num_qubits).
void check_positions(std::span<const int> positions, int num_qubits, const char *what);

}  // namespace detail

}  // namespace qdeco

#endif
