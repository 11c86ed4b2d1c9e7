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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hdma/hilbert.hpp"
#include "hdma/matrix.hpp"

namespace hdma {

/// How a shift treats the ends of the range [0, d).
enum class Arithmetic {
    Modular,  ///< wrap modulo d
    Plain,    ///< no wrap; leaving the range on a populated basis state is an error
};

/// Direction of a shift by `amount`.
enum class Direction {
    Add,       ///< x -> x + amount
    Subtract,  ///< x -> x - amount
    Reflect,   ///< x -> amount - x; self-inverse, only meaningful for controlled adds
};

/// X^d_m on one subsystem.
struct ShiftOp {
    std::size_t target;
    std::size_t amount;
    Direction direction = Direction::Add;
    Arithmetic mode = Arithmetic::Modular;
    friend bool operator==(const ShiftOp&, const ShiftOp&) = default;
};

/// target <- target (+|-) amount * x_control, or amount * x_control - target for Reflect.
///
/// With a qubit control this is the qubit-controlled CX^d_m; with amount 1 and
/// equal dimensions it is the generalized CX^d.
struct ControlledAddOp {
    std::size_t control;
    std::size_t target;
    std::size_t amount;
    Direction direction = Direction::Add;
    Arithmetic mode = Arithmetic::Modular;
    friend bool operator==(const ControlledAddOp&, const ControlledAddOp&) = default;
};

/// C^S U: `inner` fires iff the control's local index is in `members` (sorted, unique).
struct SetControlledOp {
    std::size_t control;
    std::vector<std::size_t> members;
    ShiftOp inner;
    friend bool operator==(const SetControlledOp&, const SetControlledOp&) = default;
};

/// C^{S_i} X^2_1: flips a qubit iff (x_control div 2^digit) is odd.
struct DigitFlipOp {
    std::size_t control;
    unsigned digit;
    std::size_t target;
    friend bool operator==(const DigitFlipOp&, const DigitFlipOp&) = default;
};

enum class GateKind { Shift, ControlledAdd, SetControlled, DigitControlledFlip };

const char* to_string(GateKind kind);
const char* to_string(Arithmetic mode);
const char* to_string(Direction direction);

/// One primitive gate bound to subsystem positions of a register.
///
/// Instances come from the factory functions below, which validate the
/// parameters against the register. Gates are immutable values.
class Gate {
public:
    using Op = std::variant<ShiftOp, ControlledAddOp, SetControlledOp, DigitFlipOp>;

    GateKind kind() const { return static_cast<GateKind>(op_.index()); }
    const Op& op() const { return op_; }
    const std::string& label() const { return label_; }

    /// Channel this gate belongs to, for block bookkeeping.
    std::optional<std::size_t> channel() const { return channel_; }
    Gate with_channel(std::size_t channel) const;

    Gate inverse() const;
    std::vector<std::size_t> subsystems() const;

    friend bool operator==(const Gate& a, const Gate& b) { return a.op_ == b.op_ && a.channel_ == b.channel_; }

private:
    friend class GateFactory;
    Gate(Op op, std::string label) : op_(std::move(op)), label_(std::move(label)) {}

    Op op_;
    std::string label_;
    std::optional<std::size_t> channel_;
};

/// Result of shifting local index `x` in a `d`-level system, or nullopt when
/// plain arithmetic leaves [0, d).
std::optional<std::size_t> shift_local(std::size_t x, std::size_t d, std::size_t amount, Direction direction,
                                       Arithmetic mode);

/// X^d_m (or its inverse) on `target`. Requires amount < d.
Gate shift(const Register& reg, std::size_t target, std::size_t amount, Direction direction = Direction::Add,
           Arithmetic mode = Arithmetic::Modular);

/// Qubit-controlled CX^d_m: on control |1> shift the target by `amount`.
Gate controlled_add(const Register& reg, std::size_t control, std::size_t target, std::size_t amount,
                    Direction direction = Direction::Add, Arithmetic mode = Arithmetic::Modular);

/// CX^d between two equal-dimension subsystems: |x>|y> -> |x>|y (+) x>.
Gate generalized_cx(const Register& reg, std::size_t control, std::size_t target,
                    Direction direction = Direction::Add, Arithmetic mode = Arithmetic::Modular);

/// C^S U with U a shift gate on a subsystem other than `control`.
Gate set_controlled(const Register& reg, std::size_t control, std::vector<std::size_t> members, const Gate& inner);

/// C^{S_i} X^2_1 from a qudit digit onto a qubit.
Gate digit_controlled_flip(const Register& reg, std::size_t control, unsigned digit, std::size_t target);

/// Checks that every subsystem and parameter of `gate` is valid for `reg`.
void validate(const Gate& gate, const Register& reg);

/// Destination of basis index `index` under `gate`, or nullopt on a plain-mode range violation.
std::optional<std::size_t> map_basis(const Gate& gate, const Register& reg, std::size_t index);

StateVector apply(const Gate& gate, const StateVector& state);

/// Applies `gate` to `amps`, using `scratch` as the output buffer, then swaps them.
/// Throws ArithmeticRangeError if plain arithmetic leaves the range on a nonzero amplitude.
void apply_in_place(const Gate& gate, const Register& reg, Amplitudes& amps, Amplitudes& scratch);

/// Largest composite dimension gate_matrix will realize.
inline constexpr std::size_t kMaxMatrixDim = 4096;

/// Image of every basis index. Throws ArithmeticRangeError if a plain-mode
/// shift leaves the level range on any basis state.
std::vector<std::size_t> basis_permutation(const Gate& gate, const Register& reg);

/// Dense realization on the full composite space; column k is the image of basis state k.
DenseMatrix gate_matrix(const Gate& gate, const Register& reg);

}  // namespace hdma
