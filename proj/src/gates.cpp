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

#include "hdma/gates.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "hdma/errors.hpp"

namespace hdma {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const char* to_string(GateKind kind) {
    switch (kind) {
        case GateKind::Shift: return "shift";
        case GateKind::ControlledAdd: return "controlled_add";
        case GateKind::SetControlled: return "set_controlled";
        case GateKind::DigitControlledFlip: return "digit_controlled_flip";
    }
    return "?";
}

const char* to_string(Arithmetic mode) { return mode == Arithmetic::Modular ? "modular" : "plain"; }

const char* to_string(Direction direction) {
    switch (direction) {
        case Direction::Add: return "add";
        case Direction::Subtract: return "subtract";
        case Direction::Reflect: return "reflect";
    }
    return "?";
}

std::optional<std::size_t> shift_local(std::size_t x, std::size_t d, std::size_t amount, Direction direction,
                                       Arithmetic mode) {
    if (mode == Arithmetic::Modular) {
        const std::size_t step = amount % d;
        switch (direction) {
            case Direction::Add: return (x + step) % d;
            case Direction::Subtract: return (x + d - step) % d;
            case Direction::Reflect: return (step + d - x) % d;
        }
        return std::nullopt;
    }
    switch (direction) {
        case Direction::Add:
            if (x + amount < d) return x + amount;
            break;
        case Direction::Subtract:
            if (x >= amount) return x - amount;
            break;
        case Direction::Reflect:
            if (amount >= x && amount - x < d) return amount - x;
            break;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Construction

class GateFactory {
public:
    static Gate make(Gate::Op op, std::string label) { return Gate(std::move(op), std::move(label)); }
};

namespace {

std::string suffix(Direction direction) {
    switch (direction) {
        case Direction::Add: return "";
        case Direction::Subtract: return "^dag";
        case Direction::Reflect: return "^refl";
    }
    return "";
}

void require_distinct(std::size_t control, std::size_t target) {
    if (control == target) {
        throw ArgumentError("control and target are both subsystem " + std::to_string(control));
    }
}

void check_shift(const ShiftOp& s, const Register& reg) {
    const std::size_t d = reg.dim(s.target);
    if (s.amount >= d) {
        throw ArgumentError("shift amount " + std::to_string(s.amount) + " must be < " + std::to_string(d));
    }
    if (s.direction == Direction::Reflect) throw ArgumentError("reflection is only defined for controlled adds");
}

void check(const Gate::Op& op, const Register& reg) {
    std::visit(overloaded{
                   [&](const ShiftOp& s) { check_shift(s, reg); },
                   [&](const ControlledAddOp& c) {
                       require_distinct(c.control, c.target);
                       reg.dim(c.control);
                       const std::size_t d = reg.dim(c.target);
                       if (c.amount >= d) {
                           throw ArgumentError("controlled add amount " + std::to_string(c.amount) + " must be < " +
                                               std::to_string(d));
                       }
                   },
                   [&](const SetControlledOp& s) {
                       require_distinct(s.control, s.inner.target);
                       const std::size_t dc = reg.dim(s.control);
                       for (std::size_t m : s.members) {
                           if (m >= dc) {
                               throw ArgumentError("control set member " + std::to_string(m) +
                                                   " out of range for dimension " + std::to_string(dc));
                           }
                       }
                       check_shift(s.inner, reg);
                   },
                   [&](const DigitFlipOp& f) {
                       require_distinct(f.control, f.target);
                       const std::size_t dc = reg.dim(f.control);
                       if (f.digit >= 63 || (std::size_t{1} << f.digit) >= dc) {
                           throw ArgumentError("digit " + std::to_string(f.digit) + " does not exist below dimension " +
                                               std::to_string(dc));
                       }
                       if (reg.dim(f.target) != 2) throw DimensionError("digit-controlled flip needs a qubit target");
                   },
               },
               op);
}

std::string set_label(const std::vector<std::size_t>& members) {
    std::ostringstream os;
    os << '{';
    for (std::size_t k = 0; k < members.size(); ++k) os << (k ? "," : "") << members[k];
    os << '}';
    return os.str();
}

}  // namespace

Gate shift(const Register& reg, std::size_t target, std::size_t amount, Direction direction, Arithmetic mode) {
    ShiftOp op{target, amount, direction, mode};
    check(op, reg);
    return GateFactory::make(op, "X^" + std::to_string(reg.dim(target)) + "_" + std::to_string(amount) +
                                     suffix(direction) + " [" + std::to_string(target) + "]");
}

Gate controlled_add(const Register& reg, std::size_t control, std::size_t target, std::size_t amount,
                    Direction direction, Arithmetic mode) {
    if (reg.dim(control) != 2) throw DimensionError("controlled_add needs a qubit control");
    ControlledAddOp op{control, target, amount, direction, mode};
    check(op, reg);
    return GateFactory::make(op, "CX^" + std::to_string(reg.dim(target)) + "_" + std::to_string(amount) +
                                     suffix(direction) + " [" + std::to_string(control) + "->" +
                                     std::to_string(target) + "]");
}

Gate generalized_cx(const Register& reg, std::size_t control, std::size_t target, Direction direction,
                    Arithmetic mode) {
    require_distinct(control, target);
    if (reg.dim(control) != reg.dim(target)) {
        throw DimensionError("generalized CX needs equal dimensions, got " + std::to_string(reg.dim(control)) +
                             " and " + std::to_string(reg.dim(target)));
    }
    ControlledAddOp op{control, target, 1, direction, mode};
    check(op, reg);
    return GateFactory::make(op, "CX^" + std::to_string(reg.dim(target)) + suffix(direction) + " [" +
                                     std::to_string(control) + "->" + std::to_string(target) + "]");
}

Gate set_controlled(const Register& reg, std::size_t control, std::vector<std::size_t> members, const Gate& inner) {
    const auto* inner_shift = std::get_if<ShiftOp>(&inner.op());
    if (inner_shift == nullptr) throw ArgumentError("set-controlled gates wrap a shift gate");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    SetControlledOp op{control, std::move(members), *inner_shift};
    check(op, reg);
    std::string label = "C^" + set_label(op.members) + " " + inner.label();
    label.insert(label.size() - 1, "<-" + std::to_string(control));
    return GateFactory::make(std::move(op), std::move(label));
}

Gate digit_controlled_flip(const Register& reg, std::size_t control, unsigned digit, std::size_t target) {
    DigitFlipOp op{control, digit, target};
    check(op, reg);
    return GateFactory::make(op, "C^{S_" + std::to_string(digit) + "}X^2_1 [" + std::to_string(control) + "->" +
                                     std::to_string(target) + "]");
}

void validate(const Gate& gate, const Register& reg) {
    check(gate.op(), reg);
    if (const auto* c = std::get_if<ControlledAddOp>(&gate.op())) {
        if (reg.dim(c->control) != 2 && reg.dim(c->control) != reg.dim(c->target)) {
            throw DimensionError("controlled add needs a qubit control or equal dimensions");
        }
    }
}

Gate Gate::with_channel(std::size_t channel) const {
    Gate g = *this;
    g.channel_ = channel;
    return g;
}

namespace {
Direction invert(Direction d) {
    switch (d) {
        case Direction::Add: return Direction::Subtract;
        case Direction::Subtract: return Direction::Add;
        case Direction::Reflect: return Direction::Reflect;
    }
    return d;
}

std::string invert_label(std::string label) {
    if (auto pos = label.find("^dag"); pos != std::string::npos) return label.erase(pos, 4);
    if (label.find("^refl") != std::string::npos || label.starts_with("C^{S_")) return label;
    const auto bracket = label.rfind(" [");
    return label.insert(bracket, "^dag");
}
}  // namespace

Gate Gate::inverse() const {
    Op op = std::visit(overloaded{
                           [](ShiftOp s) -> Op {
                               s.direction = invert(s.direction);
                               return s;
                           },
                           [](ControlledAddOp c) -> Op {
                               c.direction = invert(c.direction);
                               return c;
                           },
                           [](SetControlledOp s) -> Op {
                               s.inner.direction = invert(s.inner.direction);
                               return s;
                           },
                           [](DigitFlipOp f) -> Op { return f; },
                       },
                       op_);
    Gate g(std::move(op), invert_label(label_));
    g.channel_ = channel_;
    return g;
}

std::vector<std::size_t> Gate::subsystems() const {
    return std::visit(overloaded{
                          [](const ShiftOp& s) { return std::vector<std::size_t>{s.target}; },
                          [](const ControlledAddOp& c) { return std::vector<std::size_t>{c.control, c.target}; },
                          [](const SetControlledOp& s) { return std::vector<std::size_t>{s.control, s.inner.target}; },
                          [](const DigitFlipOp& f) { return std::vector<std::size_t>{f.control, f.target}; },
                      },
                      op_);
}

// ---------------------------------------------------------------------------
// Application

namespace {

// Calls body(mapper) where mapper(i) is the destination of basis index i, or
// nullopt when plain arithmetic leaves the range. The variant is resolved once.
template <class Body>
void with_mapper(const Gate& gate, const Register& reg, Body&& body) {
    std::visit(overloaded{
                   [&](const ShiftOp& s) {
                       const std::size_t d = reg.dim(s.target), st = reg.stride(s.target);
                       body([&, d, st](std::size_t i) -> std::optional<std::size_t> {
                           const std::size_t x = reg.local(i, s.target);
                           const auto y = shift_local(x, d, s.amount, s.direction, s.mode);
                           if (!y) return std::nullopt;
                           return i - x * st + *y * st;
                       });
                   },
                   [&](const ControlledAddOp& c) {
                       const std::size_t d = reg.dim(c.target), st = reg.stride(c.target);
                       body([&, d, st](std::size_t i) -> std::optional<std::size_t> {
                           const std::size_t xc = reg.local(i, c.control);
                           const std::size_t x = reg.local(i, c.target);
                           const auto y = shift_local(x, d, c.amount * xc, c.direction, c.mode);
                           if (!y) return std::nullopt;
                           return i - x * st + *y * st;
                       });
                   },
                   [&](const SetControlledOp& s) {
                       std::vector<char> fires(reg.dim(s.control), 0);
                       for (std::size_t m : s.members) fires[m] = 1;
                       const std::size_t d = reg.dim(s.inner.target), st = reg.stride(s.inner.target);
                       body([&, fires = std::move(fires), d, st](std::size_t i) -> std::optional<std::size_t> {
                           if (!fires[reg.local(i, s.control)]) return i;
                           const std::size_t x = reg.local(i, s.inner.target);
                           const auto y = shift_local(x, d, s.inner.amount, s.inner.direction, s.inner.mode);
                           if (!y) return std::nullopt;
                           return i - x * st + *y * st;
                       });
                   },
                   [&](const DigitFlipOp& f) {
                       const std::size_t st = reg.stride(f.target);
                       body([&, st](std::size_t i) -> std::optional<std::size_t> {
                           if (((reg.local(i, f.control) >> f.digit) & 1U) == 0) return i;
                           return reg.local(i, f.target) == 0 ? i + st : i - st;
                       });
                   },
               },
               gate.op());
}

[[noreturn]] void range_error(const Gate& gate, const Register& reg, std::size_t index) {
    std::ostringstream os;
    os << "plain arithmetic left the level range: " << gate.label() << " on basis state (";
    const auto locals = reg.decompose(index);
    for (std::size_t k = 0; k < locals.size(); ++k) os << (k ? "," : "") << locals[k];
    os << ")";
    throw ArithmeticRangeError(os.str());
}

}  // namespace

std::optional<std::size_t> map_basis(const Gate& gate, const Register& reg, std::size_t index) {
    if (index >= reg.composite_dim()) throw DimensionError("basis index out of range");
    validate(gate, reg);
    std::optional<std::size_t> result;
    with_mapper(gate, reg, [&](auto&& mapper) { result = mapper(index); });
    return result;
}

void apply_in_place(const Gate& gate, const Register& reg, Amplitudes& amps, Amplitudes& scratch) {
    if (amps.size() != reg.composite_dim()) throw DimensionError("amplitude buffer does not match register");
    scratch.assign(amps.size(), Complex{});
    with_mapper(gate, reg, [&](auto&& mapper) {
        for (std::size_t i = 0; i < amps.size(); ++i) {
            const Complex a = amps[i];
            if (a == Complex{}) continue;
            const auto j = mapper(i);
            if (!j) range_error(gate, reg, i);
            scratch[*j] = a;
        }
    });
    amps.swap(scratch);
}

StateVector apply(const Gate& gate, const StateVector& state) {
    validate(gate, state.reg());
    Amplitudes amps(state.amplitudes().begin(), state.amplitudes().end());
    Amplitudes scratch;
    apply_in_place(gate, state.reg(), amps, scratch);
    return StateBuilder::trusted(state.reg(), std::move(amps));
}

std::vector<std::size_t> basis_permutation(const Gate& gate, const Register& reg) {
    validate(gate, reg);
    const std::size_t n = reg.composite_dim();
    std::vector<std::size_t> image(n);
    with_mapper(gate, reg, [&](auto&& mapper) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto j = mapper(i);
            if (!j) range_error(gate, reg, i);
            image[i] = *j;
        }
    });
    return image;
}

DenseMatrix gate_matrix(const Gate& gate, const Register& reg) {
    const std::size_t n = reg.composite_dim();
    if (n > kMaxMatrixDim) {
        throw CapacityError("gate_matrix supports composite dimension up to " + std::to_string(kMaxMatrixDim) +
                            ", got " + std::to_string(n));
    }
    const auto image = basis_permutation(gate, reg);
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(image[i], i) = 1.0;
    return m;
}

}  // namespace hdma
