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
#include <cstdint>
#include <span>
#include <vector>

#include "hdma/matrix.hpp"
#include "hdma/rng.hpp"

namespace hdma {

using Amplitudes = std::vector<Complex>;

/// Tolerance for normalization and other invariant assertions.
inline constexpr double kInvariantTol = 1e-10;

/// Ordered list of subsystem dimensions spanning a mixed-radix Hilbert space.
///
/// The leftmost subsystem is the most significant digit of the composite
/// basis index, so the ket |x_0>|x_1>...|x_{m-1}> (written left to right)
/// sits at index sum_k x_k * stride(k) with stride(m-1) = 1.
class Register {
public:
    explicit Register(std::vector<std::size_t> dims);

    std::span<const std::size_t> dims() const { return dims_; }
    std::size_t size() const { return dims_.size(); }
    std::size_t dim(std::size_t subsystem) const;
    std::size_t stride(std::size_t subsystem) const;
    std::size_t composite_dim() const { return composite_; }

    /// Composite index of a tuple of local indices. Throws DimensionError when out of range.
    std::size_t compose(std::span<const std::size_t> locals) const;
    std::vector<std::size_t> decompose(std::size_t index) const;

    /// Local index of one subsystem inside a composite index.
    std::size_t local(std::size_t index, std::size_t subsystem) const {
        return (index / strides_[subsystem]) % dims_[subsystem];
    }

    friend bool operator==(const Register&, const Register&) = default;

private:
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> strides_;
    std::size_t composite_ = 1;
};

/// Normalized amplitude vector over a Register's composite basis.
///
/// Immutable once constructed. Global phase is kept as-is.
class StateVector {
public:
    /// Throws DimensionError on a length mismatch and NormalizationError
    /// when the squared norm differs from 1 by more than kInvariantTol.
    StateVector(Register reg, Amplitudes amps);

    const Register& reg() const { return register_; }
    std::span<const Complex> amplitudes() const { return amps_; }
    const Complex& operator[](std::size_t index) const { return amps_[index]; }
    std::size_t size() const { return amps_.size(); }

    /// Amplitude of the basis state with the given local indices.
    Complex amplitude(std::span<const std::size_t> locals) const;

    double norm_squared() const;

    /// Moves the amplitude buffer out. The state is left empty.
    Amplitudes release() && { return std::move(amps_); }

private:
    friend class StateBuilder;
    struct Unchecked {};
    StateVector(Unchecked, Register reg, Amplitudes amps) : register_(std::move(reg)), amps_(std::move(amps)) {}

    Register register_;
    Amplitudes amps_;
};

/// Builds a StateVector from amplitudes that are known to be normalized by
/// construction (permutations of an existing state). Internal use.
class StateBuilder {
public:
    static StateVector trusted(Register reg, Amplitudes amps) {
        return StateVector(StateVector::Unchecked{}, std::move(reg), std::move(amps));
    }
};

/// Reduced state of a subset of subsystems.
class DensityMatrix {
public:
    DensityMatrix(std::vector<std::size_t> dims, DenseMatrix entries);

    std::span<const std::size_t> dims() const { return dims_; }
    std::size_t dim() const { return entries_.rows(); }
    const DenseMatrix& entries() const { return entries_; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return entries_(r, c); }

    Complex trace() const { return entries_.trace(); }
    /// tr(rho^2).
    double purity() const;
    /// max |rho_ij - conj(rho_ji)|.
    double hermiticity_defect() const;

private:
    std::vector<std::size_t> dims_;
    DenseMatrix entries_;
};

StateVector basis_state(const Register& reg, std::span<const std::size_t> locals);

/// Tensor product of per-subsystem amplitude lists, in register order.
/// Each factor must be normalized within kInvariantTol.
StateVector product_state(const Register& reg, const std::vector<Amplitudes>& factors);

/// a ⊗ b over the concatenated register.
StateVector tensor(const StateVector& a, const StateVector& b);

struct Measurement {
    std::size_t outcome;
    StateVector post_state;
};

/// Projective measurement of one subsystem in its computational basis.
/// The outcome is sampled with `rng`, the post-measurement state renormalized.
Measurement measure_subsystem(const StateVector& state, std::size_t subsystem, Rng& rng);
Measurement measure_subsystem(const StateVector& state, std::size_t subsystem, std::uint64_t seed);

/// Marginal outcome probabilities of one subsystem.
std::vector<double> marginal_probabilities(const StateVector& state, std::size_t subsystem);

/// Partial trace over every subsystem not in `keep`. Kept subsystems stay in
/// register order regardless of the order of `keep`.
DensityMatrix reduced_density(const StateVector& state, std::span<const std::size_t> keep);

/// Purity of the reduced state on `keep`, computed on whichever side of the
/// bipartition is smaller (both sides share the same purity for a pure state).
double subsystem_purity(const StateVector& state, std::span<const std::size_t> keep);

Complex inner_product(const StateVector& a, const StateVector& b);

/// |<a|b>|^2. Throws DimensionError when the registers differ.
double fidelity(const StateVector& a, const StateVector& b);

/// <psi|rho|psi> for a pure reference state over the same dimensions.
double fidelity(const DensityMatrix& rho, const StateVector& psi);

/// max_i |a_i - b_i| without any phase alignment.
double max_deviation(const StateVector& a, const StateVector& b);

/// Haar-like random state: normalized vector of complex normals.
StateVector random_state(const Register& reg, Rng& rng);

/// Random normalized amplitude list of the given length.
Amplitudes random_amplitudes(std::size_t dim, Rng& rng);

}  // namespace hdma
