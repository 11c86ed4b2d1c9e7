// Copyright 2026 The HDMA Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hdma/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hdma/errors.hpp"

namespace hdma {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::adjoint() const {
    DenseMatrix out(cols_, rows_);
    for (std::size_t c = 0; c < cols_; ++c)
        for (std::size_t r = 0; r < rows_; ++r) out(c, r) = std::conj((*this)(r, c));
    return out;
}

Complex DenseMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) {
        throw DimensionError("matrix product shape mismatch: " + std::to_string(a.cols_) +
                             " vs " + std::to_string(b.rows_));
    }
    DenseMatrix out(a.rows_, b.cols_);
    for (std::size_t k = 0; k < b.cols_; ++k) {
        Complex* dst = &out.data_[k * out.rows_];
        for (std::size_t j = 0; j < b.rows_; ++j) {
            const Complex bjk = b(j, k);
            if (bjk == Complex{}) continue;
            const Complex* src = &a.data_[j * a.rows_];
            for (std::size_t i = 0; i < a.rows_; ++i) {
                if (src[i] != Complex{}) dst[i] += src[i] * bjk;
            }
        }
    }
    return out;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix difference shape mismatch");
    DenseMatrix out(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] - b.data_[i];
    return out;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix comparison shape mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data_.size(); ++i) worst = std::max(worst, std::abs(a.data_[i] - b.data_[i]));
    return worst;
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ac = 0; ac < a.cols(); ++ac)
        for (std::size_t ar = 0; ar < a.rows(); ++ar) {
            const Complex x = a(ar, ac);
            if (x == Complex{}) continue;
            for (std::size_t bc = 0; bc < b.cols(); ++bc)
                for (std::size_t br = 0; br < b.rows(); ++br)
                    out(ar * b.rows() + br, ac * b.cols() + bc) = x * b(br, bc);
        }
    return out;
}

double unitarity_defect(const DenseMatrix& u) {
    return max_abs_diff(u.adjoint() * u, DenseMatrix::identity(u.cols()));
}

}  // namespace hdma
