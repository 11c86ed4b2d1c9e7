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

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace hdma {

using Complex = std::complex<double>;

/// Dense complex matrix, column-major.
///
/// Used for small-scale operator checks (gate realizations, reduced density
/// matrices, basis changes). Multiplication skips exact-zero entries, which
/// makes products of permutation-like gate matrices cost O(rows * cols).
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

    DenseMatrix adjoint() const;
    Complex trace() const;

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
    friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);

    /// Largest |a_ij - b_ij|. Throws DimensionError on shape mismatch.
    friend double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Kronecker product a ⊗ b (a indexes the more significant block).
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

/// Max deviation of U^dagger U from the identity.
double unitarity_defect(const DenseMatrix& u);

}  // namespace hdma
