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

#include "qdeco/density_matrix.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qdeco {

namespace {

// Index arithmetic for an operator acting on a subset of qubit positions.
// The full index space splits into 2^(n-k) groups of 2^k indices that differ
// only in the target bits; offsets[j] is the displacement of local index j.
class TargetLayout {
   public:
    TargetLayout(int num_qubits, std::span<const int> targets) {
        const auto k = static_cast<int>(targets.size());
        offsets_.resize(std::size_t{1} << k);
        for (std::size_t j = 0; j < offsets_.size(); j++) {
            std::size_t off = 0;
            for (int a = 0; a < k; a++) {
                if ((j >> (k - 1 - a)) & 1) {
                    off |= std::size_t{1} << (num_qubits - 1 - targets[a]);
                }
            }
            offsets_[j] = off;
        }
        for (int t : targets) {
            bits_.push_back(num_qubits - 1 - t);
        }
        std::sort(bits_.begin(), bits_.end());
        groups_ = std::size_t{1} << (num_qubits - k);
    }

    std::size_t groups() const { return groups_; }
    std::span<const std::size_t> offsets() const { return offsets_; }

    std::size_t base(std::size_t g) const {
        for (int bit : bits_) {
            const std::size_t low = g & ((std::size_t{1} << bit) - 1);
            g = ((g >> bit) << (bit + 1)) | low;
        }
        return g;
    }

   private:
    std::vector<std::size_t> offsets_;
    std::vector<int> bits_;
    std::size_t groups_ = 0;
};

void sandwich_inplace(ComplexMatrix &m, int num_qubits, const ComplexMatrix &op, std::span<const int> targets) {
    const TargetLayout layout(num_qubits, targets);
    const auto offsets = layout.offsets();
    const std::size_t block = offsets.size();
    const std::size_t dim = m.rows();
    std::vector<Complex> in(block);
    std::vector<const Complex *> src_rows(block);
    std::vector<Complex *> dst_rows(block);

    // Left: rows of each group mix through op.
    std::vector<Complex> scratch(block * dim);
    for (std::size_t g = 0; g < layout.groups(); g++) {
        const std::size_t b = layout.base(g);
        for (std::size_t j = 0; j < block; j++) {
            std::copy_n(m.row(b + offsets[j]), dim, scratch.data() + j * dim);
        }
        for (std::size_t j = 0; j < block; j++) {
            Complex *dst = m.row(b + offsets[j]);
            std::fill_n(dst, dim, Complex{});
            for (std::size_t i = 0; i < block; i++) {
                const Complex coef = op(j, i);
                if (coef == Complex{}) {
                    continue;
                }
                const Complex *src = scratch.data() + i * dim;
                for (std::size_t c = 0; c < dim; c++) {
                    dst[c] += coef * src[c];
                }
            }
        }
    }

    // Right: columns of each group mix through op^dagger.
    for (std::size_t r = 0; r < dim; r++) {
        Complex *row = m.row(r);
        for (std::size_t g = 0; g < layout.groups(); g++) {
            const std::size_t b = layout.base(g);
            for (std::size_t i = 0; i < block; i++) {
                in[i] = row[b + offsets[i]];
            }
            for (std::size_t j = 0; j < block; j++) {
                Complex acc = 0;
                for (std::size_t i = 0; i < block; i++) {
                    acc += in[i] * std::conj(op(j, i));
                }
                row[b + offsets[j]] = acc;
            }
        }
    }
}

std::vector<std::size_t> scatter_table(int num_qubits, std::span<const int> positions) {
    const auto k = static_cast<int>(positions.size());
    std::vector<std::size_t> table(std::size_t{1} << k);
    for (std::size_t i = 0; i < table.size(); i++) {
        std::size_t idx = 0;
        for (int a = 0; a < k; a++) {
            if ((i >> (k - 1 - a)) & 1) {
                idx |= std::size_t{1} << (num_qubits - 1 - positions[a]);
            }
        }
        table[i] = idx;
    }
    return table;
}

void check_operator(const ComplexMatrix &op, std::span<const int> targets, const char *what) {
    if (op.qubit_count() != static_cast<int>(targets.size())) {
        throw std::invalid_argument(
            std::string(what) + ": operator is " + std::to_string(op.rows()) + "x" + std::to_string(op.cols()) +
            " but " + std::to_string(targets.size()) + " targets were given");
    }
}

}  // namespace

namespace detail {

void check_positions(std::span<const int> positions, int num_qubits, const char *what) {
    for (std::size_t a = 0; a < positions.size(); a++) {
        if (positions[a] < 0 || positions[a] >= num_qubits) {
            throw std::invalid_argument(
                std::string(what) + ": qubit position " + std::to_string(positions[a]) + " out of range for " +
                std::to_string(num_qubits) + " qubits");
        }
        for (std::size_t b = 0; b < a; b++) {
            if (positions[a] == positions[b]) {
                throw std::invalid_argument(
                    std::string(what) + ": repeated qubit position " + std::to_string(positions[a]));
            }
        }
    }
}

ComplexMatrix sandwich(const ComplexMatrix &m, int num_qubits, const ComplexMatrix &op, std::span<const int> targets) {
    ComplexMatrix out = m;
    sandwich_inplace(out, num_qubits, op, targets);
    return out;
}

}  // namespace detail

DensityMatrix::DensityMatrix() : num_qubits_(0), matrix_(ComplexMatrix::identity(1)) {
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : num_qubits_(m.qubit_count()), matrix_(std::move(m)) {
    if (matrix_.rows() == 1 && matrix_.cols() == 1) {
        num_qubits_ = 0;
    }
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
    if (m.qubit_count() < 0) {
        throw std::invalid_argument("DensityMatrix: matrix must be 2^n x 2^n");
    }
    if (!m.is_hermitian(kHermitianTol)) {
        throw std::invalid_argument("DensityMatrix: matrix is not hermitian");
    }
    const Complex tr = m.trace();
    if (std::abs(tr - Complex{1}) > kTraceTol) {
        throw std::invalid_argument("DensityMatrix: trace is " + std::to_string(tr.real()) + ", expected 1");
    }
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::adopt(ComplexMatrix m) {
    assert(m.qubit_count() >= 0);
    assert(m.is_hermitian(1e-8));
    assert(std::abs(m.trace() - Complex{1}) < 1e-8);
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::basis_state(std::span<const int> bits) {
    const std::size_t dim = std::size_t{1} << bits.size();
    std::size_t idx = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) {
            throw std::invalid_argument("basis_state: bits must be 0 or 1");
        }
        idx = (idx << 1) | static_cast<std::size_t>(b);
    }
    ComplexMatrix m(dim, dim);
    m(idx, idx) = 1;
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::basis_state(int bit) {
    const int bits[] = {bit};
    return basis_state(bits);
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
    const std::size_t dim = std::size_t{1} << num_qubits;
    ComplexMatrix m = ComplexMatrix::identity(dim);
    m *= 1.0 / static_cast<double>(dim);
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::from_pure(std::span<const Complex> amplitudes) {
    ComplexMatrix m(amplitudes.size(), amplitudes.size());
    for (std::size_t r = 0; r < amplitudes.size(); r++) {
        for (std::size_t c = 0; c < amplitudes.size(); c++) {
            m(r, c) = amplitudes[r] * std::conj(amplitudes[c]);
        }
    }
    return from_matrix(std::move(m));
}

bool DensityMatrix::is_positive_semidefinite(double tol) const {
    const auto dim = static_cast<Eigen::Index>(this->dim());
    Eigen::MatrixXcd m(dim, dim);
    for (Eigen::Index r = 0; r < dim; r++) {
        for (Eigen::Index c = 0; c < dim; c++) {
            m(r, c) = matrix_(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.info() == Eigen::Success && solver.eigenvalues().minCoeff() >= -tol;
}

std::vector<double> DensityMatrix::diagonal() const {
    std::vector<double> d(dim());
    for (std::size_t k = 0; k < d.size(); k++) {
        d[k] = matrix_(k, k).real();
    }
    return d;
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    return DensityMatrix::adopt(kron(a.matrix(), b.matrix()));
}

DensityMatrix permute_qubits(const DensityMatrix &rho, std::span<const int> source_of) {
    const int n = rho.num_qubits();
    if (static_cast<int>(source_of.size()) != n) {
        throw std::invalid_argument("permute_qubits: permutation length differs from qubit count");
    }
    detail::check_positions(source_of, n, "permute_qubits");
    bool identity = true;
    for (int p = 0; p < n; p++) {
        identity &= source_of[p] == p;
    }
    if (identity) {
        return rho;
    }
    const std::vector<std::size_t> map = scatter_table(n, source_of);
    const std::size_t dim = rho.dim();
    ComplexMatrix out(dim, dim);
    for (std::size_t r = 0; r < dim; r++) {
        const Complex *src = rho.matrix().row(map[r]);
        Complex *dst = out.row(r);
        for (std::size_t c = 0; c < dim; c++) {
            dst[c] = src[map[c]];
        }
    }
    return DensityMatrix::adopt(std::move(out));
}

DensityMatrix apply_unitary(DensityMatrix rho, const ComplexMatrix &u, std::span<const int> targets) {
    check_operator(u, targets, "apply_unitary");
    detail::check_positions(targets, rho.num_qubits(), "apply_unitary");
    if (!u.is_unitary(1e-10)) {
        throw std::invalid_argument("apply_unitary: matrix is not unitary");
    }
    const int n = rho.num_qubits();
    ComplexMatrix m = std::move(rho).release();
    sandwich_inplace(m, n, u, targets);
    return DensityMatrix::adopt(std::move(m));
}

DensityMatrix reduce(const DensityMatrix &rho, std::span<const int> keep) {
    const int n = rho.num_qubits();
    if (keep.empty()) {
        throw std::invalid_argument("reduce: the kept qubit set is empty");
    }
    detail::check_positions(keep, n, "reduce");
    std::vector<int> traced;
    for (int p = 0; p < n; p++) {
        if (std::find(keep.begin(), keep.end(), p) == keep.end()) {
            traced.push_back(p);
        }
    }
    const auto kept_idx = scatter_table(n, keep);
    const auto traced_idx = scatter_table(n, traced);
    const std::size_t out_dim = kept_idx.size();
    ComplexMatrix out(out_dim, out_dim);
    for (std::size_t t : traced_idx) {
        for (std::size_t r = 0; r < out_dim; r++) {
            const Complex *src = rho.matrix().row(kept_idx[r] | t);
            Complex *dst = out.row(r);
            for (std::size_t c = 0; c < out_dim; c++) {
                dst[c] += src[kept_idx[c] | t];
            }
        }
    }
    return DensityMatrix::adopt(std::move(out));
}

std::vector<double> outcome_probabilities(const DensityMatrix &rho, const Observable &obs, std::span<const int> targets) {
    check_operator(obs.matrix(), targets, "outcome_probabilities");
    detail::check_positions(targets, rho.num_qubits(), "outcome_probabilities");
    const TargetLayout layout(rho.num_qubits(), targets);
    const auto offsets = layout.offsets();
    const std::size_t block = offsets.size();
    std::vector<double> probs;
    probs.reserve(obs.num_outcomes());
    for (const auto &space : obs.eigenspaces()) {
        // tr(P~ rho) = sum over groups of sum_{a,b} P(a,b) rho(b, a).
        Complex acc = 0;
        for (std::size_t g = 0; g < layout.groups(); g++) {
            const std::size_t base = layout.base(g);
            for (std::size_t a = 0; a < block; a++) {
                for (std::size_t b = 0; b < block; b++) {
                    const Complex p = space.projector(a, b);
                    if (p != Complex{}) {
                        acc += p * rho(base + offsets[b], base + offsets[a]);
                    }
                }
            }
        }
        probs.push_back(std::max(0.0, acc.real()));
    }
    return probs;
}

DensityMatrix condition_on_outcome(
    const DensityMatrix &rho, const Observable &obs, std::size_t outcome, std::span<const int> targets) {
    check_operator(obs.matrix(), targets, "condition_on_outcome");
    detail::check_positions(targets, rho.num_qubits(), "condition_on_outcome");
    if (outcome >= obs.num_outcomes()) {
        throw std::invalid_argument("condition_on_outcome: outcome index out of range");
    }
    ComplexMatrix m = detail::sandwich(rho.matrix(), rho.num_qubits(), obs.eigenspaces()[outcome].projector, targets);
    const double p = m.trace().real();
    if (p < kZeroProbability) {
        throw std::invalid_argument("condition_on_outcome: outcome has probability " + std::to_string(p));
    }
    m *= 1.0 / p;
    return DensityMatrix::adopt(std::move(m));
}

std::vector<MeasurementOutcome> measure_conditioned(
    const DensityMatrix &rho, const Observable &obs, std::span<const int> targets) {
    const std::vector<double> probs = outcome_probabilities(rho, obs, targets);
    std::vector<MeasurementOutcome> out;
    for (std::size_t s = 0; s < probs.size(); s++) {
        if (probs[s] < kZeroProbability) {
            continue;
        }
        out.push_back(MeasurementOutcome{
            s,
            obs.eigenspaces()[s].eigenvalue,
            probs[s],
            condition_on_outcome(rho, obs, s, targets),
        });
    }
    return out;
}

DensityMatrix measure_unconditioned(const DensityMatrix &rho, const Observable &obs, std::span<const int> targets) {
    check_operator(obs.matrix(), targets, "measure_unconditioned");
    detail::check_positions(targets, rho.num_qubits(), "measure_unconditioned");
    ComplexMatrix sum(rho.dim(), rho.dim());
    for (const auto &space : obs.eigenspaces()) {
        sum += detail::sandwich(rho.matrix(), rho.num_qubits(), space.projector, targets);
    }
    return DensityMatrix::adopt(std::move(sum));
}

}  // namespace qdeco
