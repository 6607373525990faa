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

#include "qdeco/observable.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdeco {

namespace {

constexpr double kInputTol = 1e-10;
// Eigenvalues closer than this are treated as one degenerate eigenvalue.
constexpr double kDegeneracyTol = 1e-9;

ComplexMatrix matrix_from_spaces(std::size_t dim, const std::vector<Eigenspace> &spaces) {
    ComplexMatrix m(dim, dim);
    for (const auto &s : spaces) {
        m += Complex{s.eigenvalue} * s.projector;
    }
    return m;
}

}  // namespace

Observable::Observable(int num_qubits, ComplexMatrix matrix, std::vector<Eigenspace> spaces)
    : num_qubits_(num_qubits), matrix_(std::move(matrix)), spaces_(std::move(spaces)) {
}

Observable eigendecompose_1q(const ComplexMatrix &h) {
    if (h.rows() != 2 || h.cols() != 2) {
        throw std::invalid_argument("eigendecompose_1q: expected a 2x2 matrix");
    }
    return Observable::from_hermitian(h);
}

std::vector<Eigenspace> Observable::closed_form_spaces(const ComplexMatrix &h) {
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    // Average the off-diagonal pair so the projectors come out exactly hermitian.
    const Complex b = 0.5 * (h(0, 1) + std::conj(h(1, 0)));
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), std::abs(b));
    if (radius < kDegeneracyTol) {
        std::vector<Eigenspace> one;
        one.push_back(Eigenspace{mean, ComplexMatrix::identity(2)});
        return one;
    }
    const double lo = mean - radius;
    const double hi = mean + radius;
    // P_hi = (h - lo I) / (hi - lo), P_lo = I - P_hi.
    ComplexMatrix p_hi{{a - lo, b}, {std::conj(b), d - lo}};
    p_hi *= 1.0 / (2 * radius);
    ComplexMatrix p_lo = ComplexMatrix::identity(2) - p_hi;
    std::vector<Eigenspace> two;
    two.push_back(Eigenspace{lo, std::move(p_lo)});
    two.push_back(Eigenspace{hi, std::move(p_hi)});
    return two;
}

Observable Observable::from_hermitian(const ComplexMatrix &h) {
    const int k = h.qubit_count();
    if (k < 1) {
        throw std::invalid_argument("Observable: matrix must be 2^k x 2^k with k >= 1");
    }
    if (!h.is_hermitian(kInputTol)) {
        throw std::invalid_argument("Observable: matrix is not hermitian");
    }
    if (k == 1) {
        Observable obs = from_eigenspaces(closed_form_spaces(h));
        obs.matrix_ = h;
        return obs;
    }

    const auto dim = static_cast<Eigen::Index>(h.rows());
    Eigen::MatrixXcd m(dim, dim);
    for (Eigen::Index r = 0; r < dim; r++) {
        for (Eigen::Index c = 0; c < dim; c++) {
            m(r, c) = h(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("Observable: eigensolver failed to converge");
    }
    const auto &values = solver.eigenvalues();  // ascending
    const auto &vectors = solver.eigenvectors();

    std::vector<Eigenspace> spaces;
    Eigen::Index start = 0;
    while (start < dim) {
        Eigen::Index end = start + 1;
        while (end < dim && values(end) - values(start) < kDegeneracyTol) {
            end++;
        }
        double mean = 0;
        ComplexMatrix proj(h.rows(), h.rows());
        for (Eigen::Index v = start; v < end; v++) {
            mean += values(v);
            for (Eigen::Index r = 0; r < dim; r++) {
                for (Eigen::Index c = 0; c < dim; c++) {
                    proj(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) +=
                        vectors(r, v) * std::conj(vectors(c, v));
                }
            }
        }
        spaces.push_back(Eigenspace{mean / static_cast<double>(end - start), std::move(proj)});
        start = end;
    }
    Observable obs = from_eigenspaces(std::move(spaces));
    obs.matrix_ = h;
    return obs;
}

Observable Observable::from_eigenspaces(std::vector<Eigenspace> spaces) {
    if (spaces.empty()) {
        throw std::invalid_argument("Observable: no eigenspaces");
    }
    const int k = spaces.front().projector.qubit_count();
    if (k < 1) {
        throw std::invalid_argument("Observable: projector must be 2^k x 2^k with k >= 1");
    }
    std::sort(spaces.begin(), spaces.end(), [](const Eigenspace &x, const Eigenspace &y) {
        return x.eigenvalue < y.eigenvalue;
    });
    for (std::size_t s = 1; s < spaces.size(); s++) {
        if (spaces[s].eigenvalue - spaces[s - 1].eigenvalue < kDegeneracyTol) {
            throw std::invalid_argument("Observable: eigenvalues must be pairwise distinct");
        }
    }
    ComplexMatrix m = matrix_from_spaces(std::size_t{1} << k, spaces);
    Observable obs(k, std::move(m), std::move(spaces));
    obs.validate();
    return obs;
}

void Observable::validate(double tol) const {
    const std::size_t dim = std::size_t{1} << num_qubits_;
    ComplexMatrix sum(dim, dim);
    for (std::size_t s = 0; s < spaces_.size(); s++) {
        const auto &p = spaces_[s].projector;
        if (p.rows() != dim || p.cols() != dim) {
            throw std::invalid_argument("Observable: projector dimensions disagree");
        }
        if (!p.is_hermitian(tol)) {
            throw std::invalid_argument("Observable: projector is not hermitian");
        }
        if (!(p * p).approx_equal(p, tol)) {
            throw std::invalid_argument("Observable: projector is not idempotent");
        }
        for (std::size_t t = s + 1; t < spaces_.size(); t++) {
            if (!(p * spaces_[t].projector).approx_equal(ComplexMatrix::zeros(dim, dim), tol)) {
                throw std::invalid_argument("Observable: projectors are not orthogonal");
            }
        }
        sum += p;
    }
    if (!sum.approx_equal(ComplexMatrix::identity(dim), tol)) {
        throw std::invalid_argument("Observable: projectors do not sum to the identity");
    }
}

bool Observable::is_nondegenerate() const {
    return spaces_.size() == (std::size_t{1} << num_qubits_);
}

Observable Observable::computational_basis() {
    return from_eigenspaces({
        Eigenspace{0.0, ComplexMatrix{{1, 0}, {0, 0}}},
        Eigenspace{1.0, ComplexMatrix{{0, 0}, {0, 1}}},
    });
}

Observable Observable::pauli_z() {
    return from_eigenspaces({
        Eigenspace{-1.0, ComplexMatrix{{0, 0}, {0, 1}}},
        Eigenspace{1.0, ComplexMatrix{{1, 0}, {0, 0}}},
    });
}

Observable Observable::pauli_x() {
    return from_eigenspaces({
        Eigenspace{-1.0, ComplexMatrix{{0.5, -0.5}, {-0.5, 0.5}}},
        Eigenspace{1.0, ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}}},
    });
}

Observable Observable::pauli_y() {
    const Complex i{0, 1};
    return from_eigenspaces({
        Eigenspace{-1.0, ComplexMatrix{{0.5, 0.5 * i}, {-0.5 * i, 0.5}}},
        Eigenspace{1.0, ComplexMatrix{{0.5, -0.5 * i}, {0.5 * i, 0.5}}},
    });
}

}  // namespace qdeco
