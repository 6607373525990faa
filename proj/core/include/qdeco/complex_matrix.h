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

#ifndef QDECO_COMPLEX_MATRIX_H_
#define QDECO_COMPLEX_MATRIX_H_

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace qdeco {

using Complex = std::complex<double>;

/// Dense row-major complex matrix.
///
/// Used for gate unitaries, observables and projectors, and as the storage
/// behind DensityMatrix. Sizes here are small (at most 2^13 per side in
/// practice) so there is no blocking or expression templating.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    /// Row-wise literal, e.g. `ComplexMatrix{{1, 0}, {0, -1}}`.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix zeros(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool is_square() const { return rows_ == cols_; }

    Complex &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Complex> data() { return data_; }
    std::span<const Complex> data() const { return data_; }
    Complex *row(std::size_t r) { return data_.data() + r * cols_; }
    const Complex *row(std::size_t r) const { return data_.data() + r * cols_; }

    ComplexMatrix adjoint() const;
    Complex trace() const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scale);

    /// Largest entrywise |a_ij - b_ij|. Throws on shape mismatch.
    double max_abs_diff(const ComplexMatrix &other) const;
    bool approx_equal(const ComplexMatrix &other, double tol) const;

    bool is_hermitian(double tol) const;
    bool is_unitary(double tol) const;

    /// Number of qubits k when the matrix is 2^k x 2^k; -1 otherwise.
    int qubit_count() const;

    bool operator==(const ComplexMatrix &other) const = default;

    std::string str() const;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);

/// Kronecker product; a's index bits are the high bits of the result.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

}  // namespace qdeco

#endif
