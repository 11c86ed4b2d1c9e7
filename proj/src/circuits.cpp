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

#include "hdma/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hdma/errors.hpp"

namespace hdma {

// ---------------------------------------------------------------------------
// Circuit

void Circuit::add_block(std::string label, std::optional<std::size_t> channel, std::vector<Gate> gates) {
    if (gates.empty()) throw ArgumentError("block '" + label + "' has no gates");
    for (const auto& g : gates) validate(g, register_);
    Block b{std::move(label), channel, gates_.size(), gates_.size() + gates.size()};
    gates_.insert(gates_.end(), std::make_move_iterator(gates.begin()), std::make_move_iterator(gates.end()));
    blocks_.push_back(std::move(b));
}

void Circuit::append(const Circuit& other) {
    if (!(other.register_ == register_)) throw DimensionError("cannot append a circuit on a different register");
    for (const auto& b : other.blocks_) {
        add_block(b.label, b.channel,
                  std::vector<Gate>(other.gates_.begin() + static_cast<std::ptrdiff_t>(b.begin),
                                    other.gates_.begin() + static_cast<std::ptrdiff_t>(b.end)));
    }
}

Circuit Circuit::inverse() const {
    Circuit out(register_);
    for (auto b = blocks_.rbegin(); b != blocks_.rend(); ++b) {
        std::vector<Gate> gates;
        for (std::size_t k = b->end; k-- > b->begin;) gates.push_back(gates_[k].inverse());
        out.add_block(b->label, b->channel, std::move(gates));
    }
    return out;
}

Circuit Circuit::reorder_blocks(const std::vector<std::size_t>& order) const {
    std::vector<std::size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        if (sorted[k] != k || sorted.size() != blocks_.size()) {
            throw ArgumentError("block order is not a permutation of " + std::to_string(blocks_.size()) + " blocks");
        }
    }
    return select_blocks(order);
}

Circuit Circuit::select_blocks(const std::vector<std::size_t>& indices) const {
    Circuit out(register_);
    for (std::size_t idx : indices) {
        if (idx >= blocks_.size()) throw ArgumentError("block index " + std::to_string(idx) + " out of range");
        const Block& b = blocks_[idx];
        out.add_block(b.label, b.channel,
                      std::vector<Gate>(gates_.begin() + static_cast<std::ptrdiff_t>(b.begin),
                                        gates_.begin() + static_cast<std::ptrdiff_t>(b.end)));
    }
    return out;
}

namespace {
Amplitudes copy_amps(const StateVector& state) { return {state.amplitudes().begin(), state.amplitudes().end()}; }
}  // namespace

StateVector Circuit::apply(const StateVector& state) const {
    if (!(state.reg() == register_)) throw DimensionError("state register does not match circuit register");
    Amplitudes amps = copy_amps(state), scratch;
    for (const auto& g : gates_) apply_in_place(g, register_, amps, scratch);
    return StateBuilder::trusted(register_, std::move(amps));
}

StateVector Circuit::apply_traced(const StateVector& state,
                                  const std::function<void(std::size_t, const StateVector&)>& observer) const {
    if (!(state.reg() == register_)) throw DimensionError("state register does not match circuit register");
    Amplitudes amps = copy_amps(state), scratch;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        for (std::size_t k = blocks_[b].begin; k < blocks_[b].end; ++k)
            apply_in_place(gates_[k], register_, amps, scratch);
        observer(b, StateBuilder::trusted(register_, amps));
    }
    return StateBuilder::trusted(register_, std::move(amps));
}

StateVector Circuit::apply_gatewise(const StateVector& state,
                                    const std::function<void(std::size_t, const StateVector&)>& observer) const {
    if (!(state.reg() == register_)) throw DimensionError("state register does not match circuit register");
    Amplitudes amps = copy_amps(state), scratch;
    for (std::size_t k = 0; k < gates_.size(); ++k) {
        apply_in_place(gates_[k], register_, amps, scratch);
        observer(k, StateBuilder::trusted(register_, amps));
    }
    return StateBuilder::trusted(register_, std::move(amps));
}

DenseMatrix Circuit::matrix() const {
    const std::size_t n = register_.composite_dim();
    if (n > kMaxMatrixDim) throw CapacityError("circuit matrix limited to dimension " + std::to_string(kMaxMatrixDim));
    // Every gate permutes basis states, so the product is a composed permutation.
    std::vector<std::size_t> image(n);
    for (std::size_t i = 0; i < n; ++i) image[i] = i;
    for (const auto& g : gates_) {
        const auto step = basis_permutation(g, register_);
        for (auto& x : image) x = step[x];
    }
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(image[i], i) = 1.0;
    return m;
}

// ---------------------------------------------------------------------------
// Registers

Register mux_register(std::size_t n) {
    if (n == 0 || n > kMaxChannels) {
        throw CapacityError("channel count must be in 1.." + std::to_string(kMaxChannels) + ", got " +
                            std::to_string(n));
    }
    std::vector<std::size_t> dims(n, 2);
    dims.push_back(std::size_t{1} << n);
    return Register(std::move(dims));
}

std::size_t channel_subsystem(std::size_t n, std::size_t channel) {
    if (channel >= n) {
        throw ArgumentError("channel " + std::to_string(channel) + " out of range for " + std::to_string(n) +
                            " channels");
    }
    return n - 1 - channel;
}

Register base_l_register(std::size_t l, std::size_t n_digits) {
    if (l < 2) throw ArgumentError("base must be at least 2");
    if (n_digits == 0) throw ArgumentError("need at least one digit");
    std::size_t d = 1;
    for (std::size_t k = 0; k < n_digits; ++k) {
        d *= l;
        if (d > kMaxMatrixDim) throw CapacityError("l^n_digits must not exceed " + std::to_string(kMaxMatrixDim));
    }
    std::vector<std::size_t> dims(n_digits, l);
    dims.push_back(d);
    return Register(std::move(dims));
}

// ---------------------------------------------------------------------------
// Two-system transfers

namespace {

void verify_swap(const Circuit& c, std::size_t d) {
    for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y) {
            const std::size_t in[] = {x, y};
            const std::size_t want[] = {y, x};
            const StateVector out = c.apply(basis_state(c.reg(), in));
            if (std::abs(out.amplitude(want) - Complex{1.0}) != 0.0) {
                throw InvariantViolation("swap circuit failed on |" + std::to_string(x) + ">|" + std::to_string(y) +
                                         ">");
            }
        }
}

void verify_transfer(const Circuit& c, std::size_t d) {
    for (std::size_t x = 0; x < d; ++x) {
        const std::size_t in[] = {x, 0};
        const std::size_t want[] = {0, x};
        const StateVector out = c.apply(basis_state(c.reg(), in));
        if (std::abs(out.amplitude(want) - Complex{1.0}) != 0.0) {
            throw InvariantViolation("transfer circuit failed on |" + std::to_string(x) + ">|0>");
        }
    }
}

}  // namespace

Circuit build_swap(std::size_t d) {
    const Register reg({d, d});
    Circuit c(reg);
    // (x, y) -> (x, y + x) -> (y, y + x) -> (y, x)
    c.add_block("swap", std::nullopt,
                {generalized_cx(reg, 0, 1, Direction::Add), generalized_cx(reg, 1, 0, Direction::Reflect),
                 generalized_cx(reg, 0, 1, Direction::Subtract)});
    if (d <= 16) verify_swap(c, d);
    return c;
}

Circuit build_transfer(std::size_t d) {
    const Register reg({d, d});
    Circuit c(reg);
    c.add_block("entangle", std::nullopt, {generalized_cx(reg, 0, 1, Direction::Add)});
    c.add_block("erase", std::nullopt, {generalized_cx(reg, 1, 0, Direction::Subtract)});
    if (d <= 16) verify_transfer(c, d);
    return c;
}

Circuit expand_cx_setcontrolled(std::size_t d) {
    if (d > 64) throw CapacityError("set-controlled expansion limited to d <= 64");
    const Register reg({d, d});
    Circuit c(reg);
    for (std::size_t x = 1; x < d; ++x) {
        c.add_block("+" + std::to_string(x), std::nullopt, {set_controlled(reg, 0, {x}, shift(reg, 1, x))});
    }
    return c;
}

Circuit expand_cx_binary(std::size_t n) {
    if (n == 0 || n > kMaxChannels) throw CapacityError("binary expansion needs 1 <= n <= 12");
    const std::size_t d = std::size_t{1} << n;
    const Register reg({d, d});
    Circuit c(reg);
    for (unsigned i = 0; i < n; ++i) {
        std::vector<std::size_t> odd;
        for (std::size_t x = 0; x < d; ++x)
            if ((x >> i) & 1U) odd.push_back(x);
        c.add_block("digit " + std::to_string(i), std::nullopt,
                    {set_controlled(reg, 0, std::move(odd), shift(reg, 1, std::size_t{1} << i))});
    }
    return c;
}

// ---------------------------------------------------------------------------
// Multiplexer

namespace {

std::vector<Gate> mux_pair(const Register& reg, std::size_t n, std::size_t i, Arithmetic mode) {
    const std::size_t q = channel_subsystem(n, i);
    return {controlled_add(reg, q, qudit_subsystem(n), std::size_t{1} << i, Direction::Add, mode).with_channel(i),
            digit_controlled_flip(reg, qudit_subsystem(n), static_cast<unsigned>(i), q).with_channel(i)};
}

std::vector<Gate> demux_pair(const Register& reg, std::size_t n, std::size_t i, Arithmetic mode) {
    const std::size_t q = channel_subsystem(n, i);
    return {digit_controlled_flip(reg, qudit_subsystem(n), static_cast<unsigned>(i), q).with_channel(i),
            controlled_add(reg, q, qudit_subsystem(n), std::size_t{1} << i, Direction::Subtract, mode)
                .with_channel(i)};
}

}  // namespace

Circuit build_mux(std::size_t n, Arithmetic mode) {
    const Register reg = mux_register(n);
    Circuit c(reg);
    for (std::size_t i = n; i-- > 0;) c.add_block("mux channel " + std::to_string(i), i, mux_pair(reg, n, i, mode));
    return c;
}

Circuit build_demux(std::size_t n, Arithmetic mode) {
    const Register reg = mux_register(n);
    Circuit c(reg);
    for (std::size_t i = 0; i < n; ++i) c.add_block("demux channel " + std::to_string(i), i, demux_pair(reg, n, i, mode));
    return c;
}

Circuit extract_channel(std::size_t n, std::size_t channel, Arithmetic mode) {
    const Register reg = mux_register(n);
    Circuit c(reg);
    c.add_block("extract channel " + std::to_string(channel), channel, demux_pair(reg, n, channel, mode));
    return c;
}

Circuit insert_channel(std::size_t n, std::size_t channel, Arithmetic mode) {
    const Register reg = mux_register(n);
    Circuit c(reg);
    c.add_block("insert channel " + std::to_string(channel), channel, mux_pair(reg, n, channel, mode));
    return c;
}

// ---------------------------------------------------------------------------
// Base-l transfer

std::vector<std::size_t> base_l_digit_members(std::size_t d, std::size_t l, std::size_t j, std::size_t c) {
    std::size_t weight = 1;
    for (std::size_t k = 0; k < j; ++k) weight *= l;
    std::vector<std::size_t> members;
    for (std::size_t x = 0; x < d; ++x)
        if ((x / weight) % l == c) members.push_back(x);
    return members;
}

Circuit build_base_l_transfer(std::size_t l, std::size_t n_digits, Arithmetic mode) {
    const Register reg = base_l_register(l, n_digits);
    const std::size_t qudit = n_digits;
    const std::size_t d = reg.dim(qudit);
    Circuit c(reg);
    for (std::size_t j = n_digits; j-- > 0;) {
        const std::size_t sys = n_digits - 1 - j;
        std::size_t weight = 1;
        for (std::size_t k = 0; k < j; ++k) weight *= l;
        std::vector<Gate> gates;
        for (std::size_t level = 1; level < l; ++level) {
            gates.push_back(
                set_controlled(reg, sys, {level}, shift(reg, qudit, level * weight, Direction::Add, mode)).with_channel(j));
        }
        for (std::size_t level = 1; level < l; ++level) {
            gates.push_back(set_controlled(reg, qudit, base_l_digit_members(d, l, j, level),
                                           shift(reg, sys, level, Direction::Subtract, mode))
                                .with_channel(j));
        }
        c.add_block("digit " + std::to_string(j), j, std::move(gates));
    }
    return c;
}

// ---------------------------------------------------------------------------
// Channel register helpers

StateVector embed_channels(const StateVector& channels) {
    const std::size_t n = channels.reg().size();
    for (std::size_t d : channels.reg().dims()) {
        if (d != 2) throw DimensionError("channel register must consist of qubits");
    }
    const Register reg = mux_register(n);
    Amplitudes amps(reg.composite_dim());
    const std::size_t d = reg.dim(qudit_subsystem(n));
    for (std::size_t b = 0; b < channels.size(); ++b) amps[b * d] = channels[b];
    return StateBuilder::trusted(reg, std::move(amps));
}

namespace {

// Off-slice probability tolerated when reading a factor off a permutation-circuit output.
constexpr double kSliceTol = 1e-24;

std::size_t channel_count(const Register& reg) {
    const std::size_t n = reg.size() - 1;
    if (!(reg == mux_register(n))) throw DimensionError("state is not on a multiplexer register");
    return n;
}

}  // namespace

StateVector channels_of(const StateVector& mux_state) {
    const std::size_t n = channel_count(mux_state.reg());
    const std::size_t d = std::size_t{1} << n;
    Amplitudes amps(d);
    double off = 0.0;
    for (std::size_t i = 0; i < mux_state.size(); ++i) {
        if (i % d == 0) amps[i / d] = mux_state[i];
        else off += std::norm(mux_state[i]);
    }
    if (off > kSliceTol) throw InvariantViolation("qudit is not in |0>; off-slice probability " + std::to_string(off));
    return StateVector(Register(std::vector<std::size_t>(n, 2)), std::move(amps));
}

StateVector qudit_of(const StateVector& mux_state) {
    const std::size_t n = channel_count(mux_state.reg());
    const std::size_t d = std::size_t{1} << n;
    Amplitudes amps(mux_state.amplitudes().begin(), mux_state.amplitudes().begin() + static_cast<std::ptrdiff_t>(d));
    double off = 0.0;
    for (std::size_t i = d; i < mux_state.size(); ++i) off += std::norm(mux_state[i]);
    if (off > kSliceTol) throw InvariantViolation("qubits are not all |0>; off-slice probability " + std::to_string(off));
    return StateVector(Register({d}), std::move(amps));
}

// ---------------------------------------------------------------------------
// Superdense shortcut

Circuit superdense_circuit() {
    const Register reg({2, 2, 4});
    Circuit c(reg);
    c.add_block("bit 1", 1, {controlled_add(reg, 0, 2, 2).with_channel(1)});
    c.add_block("bit 0", 0, {controlled_add(reg, 1, 2, 1).with_channel(0)});
    return c;
}

StateVector superdense_encode(unsigned b1, unsigned b0) {
    if (b1 > 1 || b0 > 1) throw ArgumentError("superdense bits must be 0 or 1");
    const Circuit c = superdense_circuit();
    const std::size_t in[] = {b1, b0, 0};
    const StateVector out = c.apply(basis_state(c.reg(), in));
    Amplitudes amps(4);
    for (std::size_t q = 0; q < 4; ++q) {
        const std::size_t locals[] = {b1, b0, q};
        amps[q] = out.amplitude(locals);
    }
    return StateVector(Register({4}), std::move(amps));
}

DenseMatrix bell_isomorphism() {
    const double h = std::numbers::sqrt2 / 2;
    DenseMatrix b(4, 4);
    // rows: |q1 q0> = 00, 01, 10, 11
    b(0, 0) = h;  b(3, 0) = h;   // (|00> + |11>)
    b(0, 1) = h;  b(3, 1) = -h;  // (|00> - |11>)
    b(2, 2) = h;  b(1, 2) = h;   // (|10> + |01>)
    b(2, 3) = h;  b(1, 3) = -h;  // (|10> - |01>)
    return b;
}

BellCorrespondence bell_correspondence() {
    const DenseMatrix b = bell_isomorphism();
    const DenseMatrix bd = b.adjoint();
    const DenseMatrix id2 = DenseMatrix::identity(2);
    DenseMatrix x(2, 2), z(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;

    const Register qudit({4});
    const DenseMatrix shift2 = gate_matrix(shift(qudit, 0, 2), qudit);
    const DenseMatrix shift1 = gate_matrix(shift(qudit, 0, 1), qudit);
    DenseMatrix signs(4, 4), even(4, 4);
    for (std::size_t k = 0; k < 4; ++k) {
        signs(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
        even(k, k) = (k % 2 == 0) ? 1.0 : 0.0;
    }

    BellCorrespondence out;
    out.cnot_vs_shift2 = max_abs_diff(bd * kron(id2, x) * b, shift2 * signs);
    out.cz_vs_shift1_even = max_abs_diff(bd * kron(id2, z) * b * even, shift1 * even);

    // Two classical bits b1, b0 then the Bell pair q1, q0: index 8 b1 + 4 b0 + 2 q1 + q0.
    DenseMatrix cnot(16, 16), cz(16, 16);
    for (std::size_t i = 0; i < 16; ++i) {
        const bool b1 = (i >> 3) & 1U, b0 = (i >> 2) & 1U, q0 = i & 1U;
        cnot(b1 ? i ^ 1U : i, i) = 1.0;
        cz(i, i) = (b0 && q0) ? -1.0 : 1.0;
    }
    const DenseMatrix lift = kron(DenseMatrix::identity(4), b);
    const DenseMatrix even16 = kron(DenseMatrix::identity(4), even);
    const DenseMatrix bell_side = lift.adjoint() * cz * cnot * lift * even16;
    out.encoder_vs_bell_circuit = max_abs_diff(superdense_circuit().matrix() * even16, bell_side);
    return out;
}

}  // namespace hdma
