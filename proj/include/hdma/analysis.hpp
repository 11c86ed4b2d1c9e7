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

#include <cstddef>
#include <utility>
#include <vector>

#include "hdma/circuits.hpp"
#include "hdma/hilbert.hpp"

namespace hdma {

/// Per-channel qubit amplitudes (alpha_i, beta_i) for |psi_i> = alpha_i|0> + beta_i|1>.
/// Entry i is channel i.
class ChannelCoefficients {
public:
    /// Throws NormalizationError if any channel is off by more than kInvariantTol.
    explicit ChannelCoefficients(std::vector<std::pair<Complex, Complex>> channels);

    static ChannelCoefficients random(std::size_t n, Rng& rng);

    std::size_t size() const { return channels_.size(); }
    const Complex& alpha(std::size_t i) const { return channels_.at(i).first; }
    const Complex& beta(std::size_t i) const { return channels_.at(i).second; }

    /// alpha_i for bit 0, beta_i for bit 1.
    const Complex& coefficient(std::size_t i, unsigned bit) const { return bit ? beta(i) : alpha(i); }

    /// |psi_{n-1}> (x) ... (x) |psi_0> on n qubits.
    StateVector channel_state() const;

    /// channel_state() with the multiplexer qudit appended in |0>.
    StateVector mux_input() const;

    /// Single-qubit state of channel i.
    StateVector qubit(std::size_t i) const;

private:
    std::vector<std::pair<Complex, Complex>> channels_;
};

/// Qudit amplitudes after multiplexing a product input:
/// amplitude of |k> = prod_i (alpha_i if bit i of k is 0, else beta_i).
Amplitudes predicted_qudit_amplitudes(const ChannelCoefficients& coeffs);

/// 1 iff (x div 2^i) is odd.
unsigned subspace_digit(std::size_t x, unsigned i);

/// S_i^bit: the levels x < d whose digit i equals `bit`. Requires 2^i < d.
std::vector<std::size_t> subspace_members(std::size_t d, unsigned i, unsigned bit);

/// Intersection over i < log2(d) of S_i^{b_i}, the b_i taken from `bits`.
std::vector<std::size_t> subspace_intersection(std::size_t d, std::size_t bits);

struct Separability {
    bool disentangled;
    double purity;
};

/// A subsystem is disentangled when its reduced purity is >= 1 - tol.
Separability is_disentangled(const StateVector& state, std::size_t subsystem, double tol = kInvariantTol);

/// Number of local levels of `subsystem` carrying probability above `floor`.
std::size_t support_size(const StateVector& state, std::size_t subsystem, double floor = 1e-24);

/// Largest block count check_block_commutation will permute.
inline constexpr std::size_t kMaxCommutationBlocks = 5;

/// Max amplitude deviation, over all block orderings, from the canonical-order output.
double check_block_commutation(const Circuit& circuit, const StateVector& input);

/// GHZ state (|0...0> + |1...1>)/sqrt2 on n qubits.
StateVector ghz_state(std::size_t n);

}  // namespace hdma
