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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hdma/gates.hpp"
#include "hdma/hilbert.hpp"
#include "hdma/matrix.hpp"

namespace hdma {

/// Contiguous run of gates sharing a label, usually one channel's gate pair.
struct Block {
    std::string label;
    std::optional<std::size_t> channel;
    std::size_t begin = 0;  ///< first gate index
    std::size_t end = 0;    ///< one past the last gate index
    friend bool operator==(const Block&, const Block&) = default;
};

/// Ordered gate list over a register, partitioned into labeled blocks.
///
/// Gates are applied in list order. Blocks tile [0, gates().size()) without
/// gaps or overlaps.
class Circuit {
public:
    explicit Circuit(Register reg) : register_(std::move(reg)) {}

    const Register& reg() const { return register_; }
    const std::vector<Gate>& gates() const { return gates_; }
    const std::vector<Block>& blocks() const { return blocks_; }

    /// Appends `gates` as one new block. Every gate is validated against the register.
    void add_block(std::string label, std::optional<std::size_t> channel, std::vector<Gate> gates);

    /// Appends every block of `other`, which must share this circuit's register.
    void append(const Circuit& other);

    /// Gates in reverse order, each inverted; block order reversed.
    Circuit inverse() const;

    /// Same blocks in the order given by `order` (a permutation of block indices).
    Circuit reorder_blocks(const std::vector<std::size_t>& order) const;

    /// Sub-circuit holding only the listed blocks, in the listed order.
    Circuit select_blocks(const std::vector<std::size_t>& indices) const;

    StateVector apply(const StateVector& state) const;

    /// Applies the circuit, calling `observer(block_index, state)` after each block.
    StateVector apply_traced(const StateVector& state,
                             const std::function<void(std::size_t, const StateVector&)>& observer) const;

    /// Same, but observing after every gate.
    StateVector apply_gatewise(const StateVector& state,
                               const std::function<void(std::size_t, const StateVector&)>& observer) const;

    /// Product of gate matrices (last gate leftmost). Composite dimension <= kMaxMatrixDim.
    DenseMatrix matrix() const;

private:
    Register register_;
    std::vector<Gate> gates_;
    std::vector<Block> blocks_;
};

/// Register used by the multiplexer: n qubits then one 2^n-level qudit.
///
/// Channel i lives on subsystem n-1-i (channel n-1 is leftmost), the qudit on
/// subsystem n. Channel i's gates add 2^i to the qudit.
Register mux_register(std::size_t n);
std::size_t channel_subsystem(std::size_t n, std::size_t channel);
inline std::size_t qudit_subsystem(std::size_t n) { return n; }

/// Largest channel count the builders accept.
inline constexpr std::size_t kMaxChannels = 12;

/// Three-gate swap on two d-level systems: |x>|y> -> |y>|x>.
///
/// For d = 2 these are three CNOTs. For d > 2 the middle gate is the
/// reflected form |x>|y> -> |x>|x - y>; see README for why a swap cannot be
/// built from forward and inverse CX^d alone. Verified on every basis pair at
/// construction for d <= 16.
Circuit build_swap(std::size_t d);

/// CX^d(a->b) followed by CX^d^dag(b->a): |x>|0> -> |0>|x>.
Circuit build_transfer(std::size_t d);

/// CX^d as d-1 gates C^{{x}} X^d_x, x = 1..d-1 (the +0 gate omitted). d <= 64.
Circuit expand_cx_setcontrolled(std::size_t d);

/// CX^(2^n) as n gates C^{S_i} X^d_{2^i}. n <= kMaxChannels.
Circuit expand_cx_binary(std::size_t n);

/// The n-qubit to qudit multiplexer. One block per channel, channel n-1 first;
/// block i = [CX^d_{2^i}(qubit_i -> qudit), C^{S_i}X^2_1(qudit -> qubit_i)].
Circuit build_mux(std::size_t n, Arithmetic mode = Arithmetic::Modular);

/// The inverse transfer. Channel 0 first; block i = [C^{S_i}X^2_1, CX^d_{2^i}^dag].
Circuit build_demux(std::size_t n, Arithmetic mode = Arithmetic::Modular);

/// Demultiplexing block for one channel on the mux register. Channel i's qubit must be |0>.
Circuit extract_channel(std::size_t n, std::size_t channel, Arithmetic mode = Arithmetic::Modular);

/// Multiplexing block for one channel on the mux register. Digit i of the qudit must be unused.
Circuit insert_channel(std::size_t n, std::size_t channel, Arithmetic mode = Arithmetic::Modular);

/// Register for base-l transfer: n_digits l-level systems then one l^n_digits qudit.
/// Digit j lives on subsystem n_digits-1-j.
Register base_l_register(std::size_t l, std::size_t n_digits);

/// Transfer of n_digits l-level systems into one l^n_digits-level qudit.
///
/// Per digit j (highest first): for c = 1..l-1 a C^{{c}} X_{c l^j} from the
/// l-level system to the qudit, then for c = 1..l-1 a C^{T_j(c)} X_c^dag from
/// the qudit back to the l-level system, where T_j(c) holds the qudit levels
/// whose base-l digit j equals c. Requires l^n_digits <= 4096.
Circuit build_base_l_transfer(std::size_t l, std::size_t n_digits, Arithmetic mode = Arithmetic::Modular);

/// Qudit levels whose base-l digit j equals c.
std::vector<std::size_t> base_l_digit_members(std::size_t d, std::size_t l, std::size_t j, std::size_t c);

/// Mux-register state with the given n-qubit channel state and the qudit in |0>.
StateVector embed_channels(const StateVector& channels);

/// Channel register state recovered from a mux-register state whose qudit is
/// exactly |0>. Throws InvariantViolation if any amplitude sits off that slice.
StateVector channels_of(const StateVector& mux_state);

/// Qudit state of a mux-register state whose qubits are all exactly |0>.
StateVector qudit_of(const StateVector& mux_state);

/// Classical two-channel shortcut: CX^4_2 controlled by the first bit, then
/// CX^4_1 controlled by the second, on register [2, 2, 4]. No erasure gates.
Circuit superdense_circuit();

/// Qudit state |2 b1 + b0>^4 produced by superdense_circuit() from |b1>|b0>|0>^4.
StateVector superdense_encode(unsigned b1, unsigned b0);

/// Basis change taking |k>^4 to the Bell-pair state listed for k, written in the
/// two-qubit basis |q1 q0> (index 2 q1 + q0):
///   |0> -> (|00>+|11>)/sqrt2,  |1> -> (|00>-|11>)/sqrt2,
///   |2> -> (|10>+|01>)/sqrt2,  |3> -> (|10>-|01>)/sqrt2.
DenseMatrix bell_isomorphism();

/// Deviations of the qudit/Bell-pair gate correspondences; all zero up to rounding.
struct BellCorrespondence {
    /// B^dag (I (x) X) B vs X^4_2 diag(1,-1,1,-1): the +2 shift up to the sign the Bell labels carry.
    double cnot_vs_shift2 = 0.0;
    /// B^dag (I (x) Z) B vs X^4_1, on the levels {0, 2} the encoder can present to the +1 gate.
    double cz_vs_shift1_even = 0.0;
    /// Whole two-bit encoder vs CNOT then CZ on the second Bell qubit, 16x16, qudit input in {0, 2}.
    double encoder_vs_bell_circuit = 0.0;
};
BellCorrespondence bell_correspondence();

}  // namespace hdma
