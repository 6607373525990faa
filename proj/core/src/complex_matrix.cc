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

#include "qdeco/complex_matrix.h"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qdeco {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw std::invalid_argument(
            "ComplexMatrix: " + std::to_string(data_.size()) + " entries given for a " + std::to_string(rows_) + "x" +
            std::to_string(cols_) + " matrix");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto &r : rows) {
        if (r.size() != cols_) {
            throw std::invalid_argument("ComplexMatrix: ragged initializer");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim, dim);
    for (std::size_t k = 0; k < dim; k++) {
        m(k, k) = 1;
    }
    return m;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; r++) {
        for (std::size_t c = 0; c < cols_; c++) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

Complex ComplexMatrix::trace() const {
    if (!is_square()) {
        throw std::invalid_argument("trace of a non-square matrix");
    }
    Complex t = 0;
    for (std::size_t k = 0; k < rows_; k++) {
        t += (*this)(k, k);
    }
    return t;
}

static void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream ss;
        ss << what << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x" << b.cols();
        throw std::invalid_argument(ss.str());
    }
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "operator+=");
    for (std::size_t k = 0; k < data_.size(); k++) {
        data_[k] += other.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "operator-=");
    for (std::size_t k = 0; k < data_.size(); k++) {
        data_[k] -= other.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scale) {
    for (auto &v : data_) {
        v *= scale;
    }
    return *this;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix &other) const {
    require_same_shape(*this, other, "max_abs_diff");
    double worst = 0;
    for (std::size_t k = 0; k < data_.size(); k++) {
        worst = std::max(worst, std::abs(data_[k] - other.data_[k]));
    }
    return worst;
}

bool ComplexMatrix::approx_equal(const ComplexMatrix &other, double tol) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && max_abs_diff(other) <= tol;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (!is_square()) {
        return false;
    }
    for (std::size_t r = 0; r < rows_; r++) {
        for (std::size_t c = r; c < cols_; c++) {
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) {
                return false;
            }
        }
    }
    return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
    if (!is_square()) {
        return false;
    }
    return (adjoint() * *this).approx_equal(identity(rows_), tol);
}

int ComplexMatrix::qubit_count() const {
    if (!is_square() || rows_ == 0 || !std::has_single_bit(rows_)) {
        return -1;
    }
    return std::countr_zero(rows_);
}

std::string ComplexMatrix::str() const {
    std::ostringstream ss;
    ss << "[";
    for (std::size_t r = 0; r < rows_; r++) {
        ss << (r ? ",\n [" : "[");
        for (std::size_t c = 0; c < cols_; c++) {
            const Complex v = (*this)(r, c);
            ss << (c ? ", " : "") << v.real();
            if (v.imag() != 0) {
                ss << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
            }
        }
        ss << "]";
    }
    ss << "]";
    return ss.str();
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matrix product: inner dimension mismatch");
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); r++) {
        for (std::size_t k = 0; k < a.cols(); k++) {
            const Complex v = a(r, k);
            if (v == Complex{}) {
                continue;
            }
            const Complex *brow = b.row(k);
            Complex *orow = out.row(r);
            for (std::size_t c = 0; c < b.cols(); c++) {
                orow[c] += v * brow[c];
            }
        }
    }
    return out;
}

ComplexMatrix operator*(Complex scale, ComplexMatrix m) {
    m *= scale;
    return m;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ar++) {
        for (std::size_t br = 0; br < b.rows(); br++) {
            Complex *orow = out.row(ar * b.rows() + br);
            const Complex *brow = b.row(br);
            for (std::size_t ac = 0; ac < a.cols(); ac++) {
                const Complex v = a(ar, ac);
                Complex *dst = orow + ac * b.cols();
                for (std::size_t bc = 0; bc < b.cols(); bc++) {
                    dst[bc] = v * brow[bc];
                }
            }
        }
    }
    return out;
}

}  // namespace qdeco
