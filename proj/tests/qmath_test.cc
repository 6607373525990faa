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

#include <cmath>
#include <numeric>

#include "gtest/gtest.h"
#include "qdeco/complex_matrix.h"
#include "qdeco/density_matrix.h"
#include "qdeco/gates.h"
#include "qdeco/observable.h"
#include "test_support.h"

namespace qdeco {
namespace {

using testing::random_density;
using testing::random_hermitian;
using testing::random_unitary;

const double kInvSqrt2 = 1 / std::sqrt(2.0);

DensityMatrix plus_state() {
    return DensityMatrix::from_matrix({{0.5, 0.5}, {0.5, 0.5}});
}

DensityMatrix bell_state() {
    const int targets[] = {0, 1};
    DensityMatrix rho = tensor(plus_state(), DensityMatrix::basis_state(0));
    return apply_unitary(std::move(rho), gates::cnot(), targets);
}

TEST(ComplexMatrix, ShapeAndEntries) {
    ComplexMatrix m(2, 3);
    EXPECT_EQ(m.size(), 6u);
    EXPECT_FALSE(m.is_square());
    EXPECT_THROW(ComplexMatrix(2, 2, std::vector<Complex>(3)), std::invalid_argument);
    EXPECT_EQ(ComplexMatrix::identity(4).qubit_count(), 2);
    EXPECT_EQ(ComplexMatrix::identity(3).qubit_count(), -1);
}

TEST(ComplexMatrix, ProductAndAdjoint) {
    const ComplexMatrix y = gates::pauli_y();
    EXPECT_TRUE((y * y).approx_equal(ComplexMatrix::identity(2), 1e-15));
    EXPECT_EQ(y.adjoint(), y);
    const ComplexMatrix s = gates::phase_s();
    EXPECT_TRUE((s * s).approx_equal(gates::pauli_z(), 1e-15));
    EXPECT_FALSE(s.is_hermitian(1e-10));
    EXPECT_TRUE(s.is_unitary(1e-10));
}

TEST(ComplexMatrix, KronPutsFirstFactorInHighBits) {
    const ComplexMatrix k = kron(gates::pauli_x(), ComplexMatrix::identity(2));
    // X on the high bit maps |00> to |10>.
    EXPECT_EQ(k(2, 0), Complex(1));
    EXPECT_EQ(k(1, 0), Complex(0));
}

TEST(Gates, AllUnitary) {
    for (const auto &g : {gates::identity(), gates::hadamard(), gates::pauli_x(), gates::pauli_y(), gates::pauli_z(),
                          gates::phase_s(), gates::phase_t(), gates::rx(0.3), gates::ry(1.7), gates::rz(-2.1),
                          gates::cnot(), gates::cz(), gates::swap(), gates::entangler(),
                          gates::controlled(gates::hadamard())}) {
        EXPECT_TRUE(g.is_unitary(1e-12)) << g.str();
    }
}

TEST(DensityMatrix, ValidationOnConstruction) {
    EXPECT_THROW(DensityMatrix::from_matrix({{0.5, 0.1}, {0.2, 0.5}}), std::invalid_argument);
    EXPECT_THROW(DensityMatrix::from_matrix({{0.5, 0}, {0, 0.4}}), std::invalid_argument);
    EXPECT_THROW(DensityMatrix::from_matrix(ComplexMatrix(2, 4)), std::invalid_argument);
    EXPECT_NO_THROW(DensityMatrix::from_matrix({{0.5, Complex(0, 0.5)}, {Complex(0, -0.5), 0.5}}));
}

TEST(DensityMatrix, Constructors) {
    const int bits[] = {1, 0, 1};
    const DensityMatrix b = DensityMatrix::basis_state(bits);
    EXPECT_EQ(b.num_qubits(), 3);
    EXPECT_EQ(b(5, 5), Complex(1));
    EXPECT_DOUBLE_EQ(DensityMatrix::maximally_mixed(2)(3, 3).real(), 0.25);
    const Complex amps[] = {kInvSqrt2, kInvSqrt2};
    EXPECT_TRUE(DensityMatrix::from_pure(amps).approx_equal(plus_state(), 1e-15));
}

TEST(Tensor, BasisStateProduct) {
    const DensityMatrix r = tensor(DensityMatrix::basis_state(0), DensityMatrix::basis_state(1));
    EXPECT_EQ(r.num_qubits(), 2);
    for (std::size_t i = 0; i < 4; i++) {
        for (std::size_t j = 0; j < 4; j++) {
            EXPECT_EQ(r(i, j), Complex(i == 1 && j == 1 ? 1 : 0));
        }
    }
}

TEST(Tensor, MaximallyMixedProduct) {
    const DensityMatrix r = tensor(DensityMatrix::maximally_mixed(1), DensityMatrix::maximally_mixed(1));
    EXPECT_TRUE(r.approx_equal(DensityMatrix::maximally_mixed(2), 0));
}

TEST(Tensor, RoundTripThroughReduce) {
    Rng rng(11);
    const DensityMatrix rho = random_density(2, rng);
    const int keep[] = {0, 1};
    EXPECT_TRUE(reduce(tensor(rho, DensityMatrix::basis_state(0)), keep).approx_equal(rho, 1e-15));
}

TEST(ApplyUnitary, SpecExamples) {
    Rng rng(3);
    const DensityMatrix rho = random_density(2, rng);
    const int t0[] = {0};
    EXPECT_TRUE(apply_unitary(rho, gates::identity(), t0).approx_equal(rho, 1e-15));
    EXPECT_TRUE(apply_unitary(DensityMatrix::basis_state(0), gates::pauli_x(), t0)
                    .approx_equal(DensityMatrix::basis_state(1), 0));
    EXPECT_TRUE(apply_unitary(DensityMatrix::basis_state(0), gates::hadamard(), t0).approx_equal(plus_state(), 1e-15));

    const DensityMatrix bell = bell_state();
    for (std::size_t i = 0; i < 4; i++) {
        for (std::size_t j = 0; j < 4; j++) {
            const bool corner = (i == 0 || i == 3) && (j == 0 || j == 3);
            EXPECT_NEAR(std::abs(bell(i, j) - Complex(corner ? 0.5 : 0)), 0, 1e-15) << i << "," << j;
        }
    }
}

TEST(ApplyUnitary, TargetOrderMatters) {
    // CNOT with control on position 1 flips position 0.
    const int bits[] = {0, 1};
    const int reversed[] = {1, 0};
    const DensityMatrix out = apply_unitary(DensityMatrix::basis_state(bits), gates::cnot(), reversed);
    const int expected[] = {1, 1};
    EXPECT_TRUE(out.approx_equal(DensityMatrix::basis_state(expected), 0));
}

TEST(ApplyUnitary, RejectsBadInput) {
    const DensityMatrix rho = DensityMatrix::maximally_mixed(2);
    const int t0[] = {0};
    const int dup[] = {1, 1};
    const int out_of_range[] = {2};
    EXPECT_THROW(apply_unitary(rho, ComplexMatrix{{1, 1}, {0, 1}}, t0), std::invalid_argument);
    EXPECT_THROW(apply_unitary(rho, gates::cnot(), dup), std::invalid_argument);
    EXPECT_THROW(apply_unitary(rho, gates::hadamard(), out_of_range), std::invalid_argument);
    EXPECT_THROW(apply_unitary(rho, gates::cnot(), t0), std::invalid_argument);
}

TEST(ApplyUnitary, MatchesExplicitExtension) {
    Rng rng(5);
    const DensityMatrix rho = random_density(3, rng);
    const ComplexMatrix u = random_unitary(2, rng);
    // Targets {2, 0}: permute into (2, 0, 1) order, apply u (x) I, permute back.
    const int targets[] = {2, 0};
    const ComplexMatrix big = kron(u, ComplexMatrix::identity(2));
    const int to_front[] = {2, 0, 1};
    const DensityMatrix moved = permute_qubits(rho, to_front);
    const DensityMatrix applied = DensityMatrix::adopt(big * moved.matrix() * big.adjoint());
    const int back[] = {1, 2, 0};
    const DensityMatrix expected = permute_qubits(applied, back);
    EXPECT_LE(apply_unitary(rho, u, targets).max_abs_diff(expected), 1e-12);
}

TEST(ApplyUnitary, PreservesTraceAndHermiticity) {
    Rng rng(17);
    for (int trial = 0; trial < 30; trial++) {
        const int n = 1 + trial % 4;
        const int k = std::min(n, 1 + trial % 2);
        DensityMatrix rho = random_density(n, rng);
        std::vector<int> targets;
        for (int i = 0; i < k; i++) {
            targets.push_back((trial + i) % n);
        }
        const DensityMatrix out = apply_unitary(rho, random_unitary(k, rng), targets);
        EXPECT_NEAR(out.trace(), 1, 1e-10);
        EXPECT_TRUE(out.matrix().is_hermitian(1e-10));
        EXPECT_TRUE(out.is_positive_semidefinite());
    }
}

TEST(ApplyUnitary, ProductGateFactorizes) {
    Rng rng(23);
    for (int trial = 0; trial < 10; trial++) {
        const DensityMatrix a = random_density(1 + trial % 2, rng);
        const DensityMatrix b = random_density(1 + trial % 3, rng);
        const ComplexMatrix u = random_unitary(1, rng);
        const ComplexMatrix v = random_unitary(1, rng);
        const int t0[] = {0};
        const int pair[] = {0, a.num_qubits()};
        const DensityMatrix together = apply_unitary(tensor(a, b), kron(u, v), pair);
        const DensityMatrix apart = tensor(apply_unitary(a, u, t0), apply_unitary(b, v, t0));
        EXPECT_LE(together.max_abs_diff(apart), 1e-12);
    }
}

TEST(Reduce, SpecExamples) {
    Rng rng(29);
    const DensityMatrix a = random_density(2, rng);
    const DensityMatrix b = random_density(1, rng);
    const int first[] = {0, 1};
    EXPECT_TRUE(reduce(tensor(a, b), first).approx_equal(a, 1e-14));
    const int q0[] = {0};
    EXPECT_TRUE(reduce(bell_state(), q0).approx_equal(DensityMatrix::maximally_mixed(1), 1e-15));
    const int all[] = {0, 1, 2};
    const DensityMatrix c = random_density(3, rng);
    EXPECT_TRUE(reduce(c, all).approx_equal(c, 0));
    EXPECT_THROW(reduce(c, std::span<const int>()), std::invalid_argument);
}

TEST(Reduce, ProductFactorsForRandomSizes) {
    Rng rng(31);
    for (int na = 1; na <= 3; na++) {
        for (int nb = 1; nb <= 3; nb++) {
            const DensityMatrix a = random_density(na, rng);
            const DensityMatrix b = random_density(nb, rng);
            std::vector<int> first(static_cast<std::size_t>(na));
            std::iota(first.begin(), first.end(), 0);
            std::vector<int> second(static_cast<std::size_t>(nb));
            std::iota(second.begin(), second.end(), na);
            const DensityMatrix ab = tensor(a, b);
            EXPECT_LE(reduce(ab, first).max_abs_diff(a), 1e-14);
            EXPECT_LE(reduce(ab, second).max_abs_diff(b), 1e-14);
        }
    }
}

TEST(Reduce, KeepOrderIsResultOrder) {
    Rng rng(37);
    const DensityMatrix a = random_density(1, rng);
    const DensityMatrix b = random_density(1, rng);
    const int swapped[] = {1, 0};
    EXPECT_LE(reduce(tensor(a, b), swapped).max_abs_diff(tensor(b, a)), 1e-15);
}

TEST(Observable, PauliDecompositions) {
    const Observable z = eigendecompose_1q(gates::pauli_z());
    ASSERT_EQ(z.num_outcomes(), 2u);
    EXPECT_DOUBLE_EQ(z.eigenspaces()[0].eigenvalue, -1);
    EXPECT_TRUE(z.eigenspaces()[0].projector.approx_equal({{0, 0}, {0, 1}}, 1e-15));
    EXPECT_TRUE(z.eigenspaces()[1].projector.approx_equal({{1, 0}, {0, 0}}, 1e-15));

    const Observable x = eigendecompose_1q(gates::pauli_x());
    EXPECT_TRUE(x.eigenspaces()[0].projector.approx_equal({{0.5, -0.5}, {-0.5, 0.5}}, 1e-15));
    EXPECT_TRUE(x.eigenspaces()[1].projector.approx_equal({{0.5, 0.5}, {0.5, 0.5}}, 1e-15));

    const Observable id = eigendecompose_1q(gates::identity());
    ASSERT_EQ(id.num_outcomes(), 1u);
    EXPECT_DOUBLE_EQ(id.eigenspaces()[0].eigenvalue, 1);
    EXPECT_TRUE(id.eigenspaces()[0].projector.approx_equal(ComplexMatrix::identity(2), 0));

    EXPECT_THROW(eigendecompose_1q({{0, 1}, {0, 0}}), std::invalid_argument);
}

TEST(Observable, ComputationalBasisEigenvalueIsBit) {
    const Observable basis = Observable::computational_basis();
    EXPECT_DOUBLE_EQ(basis.eigenspaces()[0].eigenvalue, 0);
    EXPECT_DOUBLE_EQ(basis.eigenspaces()[1].eigenvalue, 1);
    EXPECT_TRUE(basis.eigenspaces()[1].projector.approx_equal({{0, 0}, {0, 1}}, 0));
}

TEST(Observable, ProjectorsCompleteForRandomHermitian) {
    Rng rng(41);
    for (int k = 1; k <= 3; k++) {
        for (int trial = 0; trial < 5; trial++) {
            const Observable obs = Observable::from_hermitian(random_hermitian(k, rng));
            EXPECT_NO_THROW(obs.validate(1e-10));
            EXPECT_EQ(obs.num_outcomes(), std::size_t{1} << k);
        }
    }
}

TEST(Observable, DegenerateEigenvaluesShareProjector) {
    const Observable zz = Observable::from_hermitian(kron(gates::pauli_z(), gates::pauli_z()));
    ASSERT_EQ(zz.num_outcomes(), 2u);
    EXPECT_FALSE(zz.is_nondegenerate());
    EXPECT_TRUE(zz.eigenspaces()[1].projector.approx_equal(
        ComplexMatrix{{1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}}, 1e-12));
    EXPECT_NO_THROW(zz.validate(1e-10));
}

TEST(Measure, ConditionedSpecExamples) {
    const Observable basis = Observable::computational_basis();
    const int t0[] = {0};
    auto out = measure_conditioned(DensityMatrix::basis_state(0), basis, t0);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_DOUBLE_EQ(out[0].eigenvalue, 0);
    EXPECT_DOUBLE_EQ(out[0].probability, 1);

    out = measure_conditioned(plus_state(), basis, t0);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_NEAR(out[0].probability, 0.5, 1e-15);
    EXPECT_TRUE(out[1].state.approx_equal(DensityMatrix::basis_state(1), 1e-15));

    out = measure_conditioned(bell_state(), basis, t0);
    ASSERT_EQ(out.size(), 2u);
    const int zeros[] = {0, 0};
    const int ones[] = {1, 1};
    EXPECT_NEAR(out[1].probability, 0.5, 1e-15);
    EXPECT_TRUE(out[0].state.approx_equal(DensityMatrix::basis_state(zeros), 1e-15));
    EXPECT_TRUE(out[1].state.approx_equal(DensityMatrix::basis_state(ones), 1e-15));
}

TEST(Measure, UnconditionedSpecExamples) {
    const Observable basis = Observable::computational_basis();
    const int t0[] = {0};
    const DensityMatrix diag = DensityMatrix::from_matrix({{0.3, 0}, {0, 0.7}});
    EXPECT_TRUE(measure_unconditioned(diag, basis, t0).approx_equal(diag, 0));
    EXPECT_TRUE(measure_unconditioned(plus_state(), basis, t0).approx_equal(DensityMatrix::maximally_mixed(1), 1e-15));
}

TEST(Measure, UnconditionedIsWeightedSumOfConditioned) {
    Rng rng(43);
    for (int trial = 0; trial < 20; trial++) {
        const DensityMatrix rho = random_density(2 + trial % 2, rng);
        const int k = 1 + trial % 2;
        const Observable obs = Observable::from_hermitian(random_hermitian(k, rng));
        std::vector<int> targets = k == 1 ? std::vector<int>{1} : std::vector<int>{1, 0};
        ComplexMatrix sum = ComplexMatrix::zeros(rho.dim(), rho.dim());
        double total = 0;
        for (const auto &o : measure_conditioned(rho, obs, targets)) {
            sum += Complex(o.probability) * o.state.matrix();
            total += o.probability;
            EXPECT_NEAR(o.state.trace(), 1, 1e-10);
        }
        EXPECT_NEAR(total, 1, 1e-10);
        EXPECT_LE(measure_unconditioned(rho, obs, targets).matrix().max_abs_diff(sum), 1e-10);
    }
}

TEST(Measure, ZeroProbabilityConditioningThrows) {
    const int t0[] = {0};
    EXPECT_THROW(
        condition_on_outcome(DensityMatrix::basis_state(0), Observable::computational_basis(), 1, t0),
        std::invalid_argument);
}

TEST(PermuteQubits, RoundTrip) {
    Rng rng(47);
    const DensityMatrix rho = random_density(3, rng);
    const int perm[] = {2, 0, 1};
    const int inverse[] = {1, 2, 0};
    EXPECT_TRUE(permute_qubits(permute_qubits(rho, perm), inverse).approx_equal(rho, 0));
}

}  // namespace
}  // namespace qdeco
