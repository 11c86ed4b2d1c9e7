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

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "hdma/errors.hpp"
#include "hdma/gates.hpp"
#include "hdma/rng.hpp"

#include "../oracles.hpp"

using namespace hdma;

namespace {

StateVector ket(const Register& reg, std::vector<std::size_t> locals) { return basis_state(reg, locals); }

std::size_t image_of(const Gate& g, const Register& reg, std::vector<std::size_t> locals) {
    const StateVector out = apply(g, ket(reg, locals));
    for (std::size_t i = 0; i < out.size(); ++i)
        if (std::abs(out[i]) > 0.5) return i;
    return out.size();
}

bool is_identity(const DenseMatrix& m) { return max_abs_diff(m, DenseMatrix::identity(m.rows())) < 1e-12; }

// One gate of each kind on [2, 8] (qubit control, qudit target) and [8, 8].
std::vector<std::pair<Gate, Register>> gate_zoo(Arithmetic mode) {
    const Register q({2, 8});
    const Register dd({8, 8});
    return {
        {shift(q, 1, 3, Direction::Add, mode), q},
        {shift(q, 0, 1, Direction::Subtract, mode), q},
        {controlled_add(q, 0, 1, 4, Direction::Add, mode), q},
        {controlled_add(q, 0, 1, 5, Direction::Subtract, mode), q},
        {controlled_add(q, 0, 1, 6, Direction::Reflect, mode), q},
        {generalized_cx(dd, 0, 1, Direction::Add, mode), dd},
        {generalized_cx(dd, 1, 0, Direction::Subtract, mode), dd},
        {set_controlled(dd, 0, {1, 3, 7}, shift(dd, 1, 2, Direction::Add, mode)), dd},
        {digit_controlled_flip(q, 1, 2, 0), q},
    };
}

}  // namespace

TEST_CASE("shift on a qubit is NOT") {
    const Register q({2});
    const DenseMatrix m = gate_matrix(shift(q, 0, 1), q);
    CHECK(m(1, 0) == Complex(1.0));
    CHECK(m(0, 1) == Complex(1.0));
    CHECK(m(0, 0) == Complex(0.0));
}

TEST_CASE("shift by zero is the identity and modular shifts wrap") {
    const Register q({8});
    CHECK(is_identity(gate_matrix(shift(q, 0, 0), q)));
    CHECK(image_of(shift(q, 0, 4), q, {5}) == 1);
    CHECK(image_of(shift(q, 0, 4, Direction::Subtract), q, {1}) == 5);
}

TEST_CASE("shift_local arithmetic") {
    CHECK(shift_local(5, 8, 4, Direction::Add, Arithmetic::Modular) == 1);
    CHECK(shift_local(5, 8, 4, Direction::Add, Arithmetic::Plain) == std::nullopt);
    CHECK(shift_local(3, 8, 2, Direction::Add, Arithmetic::Plain) == 5);
    CHECK(shift_local(1, 8, 2, Direction::Subtract, Arithmetic::Plain) == std::nullopt);
    CHECK(shift_local(1, 8, 2, Direction::Subtract, Arithmetic::Modular) == 7);
    CHECK(shift_local(2, 8, 6, Direction::Reflect, Arithmetic::Plain) == 4);
    CHECK(shift_local(7, 8, 6, Direction::Reflect, Arithmetic::Plain) == std::nullopt);
    CHECK(shift_local(7, 8, 6, Direction::Reflect, Arithmetic::Modular) == 7);
}

TEST_CASE("plain shifts raise only on populated basis states") {
    const Register q({2, 8});
    const Gate add = controlled_add(q, 0, 1, 4, Direction::Add, Arithmetic::Plain);
    CHECK(image_of(add, q, {1, 3}) == 15);
    CHECK_THROWS_AS(apply(add, ket(q, {1, 5})), ArithmeticRangeError);
    // |0>|5> leaves the qudit alone, so the out-of-range branch is never taken.
    CHECK(image_of(add, q, {0, 5}) == 5);
    CHECK_THROWS_AS(gate_matrix(add, q), ArithmeticRangeError);
}

TEST_CASE("controlled add") {
    const Register q({2, 8});
    const Gate cx = controlled_add(q, 0, 1, 4);
    CHECK(image_of(cx, q, {1, 0}) == q.compose(std::array<std::size_t, 2>{1, 4}));
    for (std::size_t y = 0; y < 8; ++y) CHECK(image_of(cx, q, {0, y}) == y);
    CHECK(cx.label() == "CX^8_4 [0->1]");
    CHECK(cx.inverse().label() == "CX^8_4^dag [0->1]");
    CHECK_THROWS_AS(controlled_add(q, 0, 0, 1), ArgumentError);
    CHECK_THROWS_AS(controlled_add(q, 0, 1, 8), ArgumentError);
    CHECK_THROWS_AS(controlled_add(Register({8, 8}), 0, 1, 1), DimensionError);
}

TEST_CASE("generalized CX copies basis states and reduces to CNOT") {
    const Register dd({8, 8});
    const Gate cx = generalized_cx(dd, 0, 1);
    for (std::size_t x = 0; x < 8; ++x) CHECK(image_of(cx, dd, {x, 0}) == x * 8 + x);

    const Register qq({2, 2});
    const DenseMatrix cnot = gate_matrix(generalized_cx(qq, 0, 1), qq);
    for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t r = 0; r < 4; ++r) CHECK(cnot(r, c).real() == oracle::cx_entry(2, r, c));
    CHECK_THROWS_AS(generalized_cx(Register({2, 8}), 0, 1), DimensionError);
}

TEST_CASE("generalized CX followed by its inverse is the identity on random states") {
    Rng rng(3);
    const Register dd({8, 8});
    const Gate cx = generalized_cx(dd, 0, 1);
    for (int draw = 0; draw < 100; ++draw) {
        const StateVector s = random_state(dd, rng);
        CHECK(max_deviation(apply(cx.inverse(), apply(cx, s)), s) < 1e-12);
    }
}

TEST_CASE("set-controlled gates") {
    const Register dd({8, 8});
    const Gate inner = shift(dd, 1, 3);
    std::vector<std::size_t> all(8);
    for (std::size_t x = 0; x < 8; ++x) all[x] = x;
    const DenseMatrix unconditional = gate_matrix(inner, dd);
    CHECK(max_abs_diff(gate_matrix(set_controlled(dd, 0, all, inner), dd), unconditional) == 0.0);
    CHECK(is_identity(gate_matrix(set_controlled(dd, 0, {}, inner), dd)));
    CHECK_THROWS_AS(set_controlled(dd, 0, {8}, inner), ArgumentError);
    CHECK_THROWS_AS(set_controlled(dd, 0, {1}, generalized_cx(dd, 0, 1)), ArgumentError);
    CHECK_THROWS_AS(set_controlled(dd, 1, {1}, inner), ArgumentError);
}

TEST_CASE("product of singleton set-controlled shifts is generalized CX") {
    const Register dd({8, 8});
    DenseMatrix product = DenseMatrix::identity(64);
    for (std::size_t i = 0; i < 8; ++i) product = gate_matrix(set_controlled(dd, 0, {i}, shift(dd, 1, i)), dd) * product;
    double worst = 0.0;
    for (std::size_t c = 0; c < 64; ++c)
        for (std::size_t r = 0; r < 64; ++r) worst = std::max(worst, std::abs(product(r, c) - oracle::cx_entry(8, r, c)));
    CHECK(worst == 0.0);
}

TEST_CASE("digit-controlled flip") {
    const Register q({2, 8});
    const Gate flip2 = digit_controlled_flip(q, 1, 2, 0);
    CHECK(image_of(flip2, q, {1, 4}) == 4);
    CHECK(image_of(flip2, q, {0, 4}) == 12);
    const Gate flip0 = digit_controlled_flip(q, 1, 0, 0);
    CHECK(image_of(flip0, q, {1, 4}) == 12);

    // (|2> + |6>)/sqrt2 with the qubit at |1>: digit 1 is set on both branches.
    const double h = std::numbers::sqrt2 / 2;
    Amplitudes amps(16);
    amps[8 + 2] = h;
    amps[8 + 6] = h;
    const StateVector out = apply(digit_controlled_flip(q, 1, 1, 0), StateVector(q, amps));
    CHECK(out[2] == Complex(h));
    CHECK(out[6] == Complex(h));

    CHECK_THROWS_AS(digit_controlled_flip(q, 1, 3, 0), ArgumentError);
    CHECK_THROWS_AS(digit_controlled_flip(Register({8, 8}), 1, 0, 0), DimensionError);
    CHECK(flip2.inverse() == flip2);
}

TEST_CASE("disjoint set-controlled shifts commute") {
    const Register dd({8, 8});
    const DenseMatrix a = gate_matrix(set_controlled(dd, 0, {1, 2}, shift(dd, 1, 3)), dd);
    const DenseMatrix b = gate_matrix(set_controlled(dd, 0, {5, 6, 7}, shift(dd, 1, 5)), dd);
    CHECK(max_abs_diff(a * b, b * a) == 0.0);
}

TEST_CASE("gate_matrix refuses large registers") {
    const Register big({2, 4096});
    CHECK_THROWS_AS(gate_matrix(shift(big, 0, 1), big), CapacityError);
}

TEST_CASE("property: every gate is a phase-free permutation and unitary") {
    for (const auto& [g, reg] : gate_zoo(Arithmetic::Modular)) {
        const DenseMatrix m = gate_matrix(g, reg);
        CHECK(unitarity_defect(m) < 1e-12);
        for (std::size_t c = 0; c < m.cols(); ++c) {
            int ones = 0, others = 0;
            for (std::size_t r = 0; r < m.rows(); ++r) {
                if (m(r, c) == Complex(1.0)) ++ones;
                else if (m(r, c) != Complex(0.0)) ++others;
            }
            CHECK(ones == 1);
            CHECK(others == 0);
        }
    }
}

TEST_CASE("property: gate matrices times their inverses are the identity") {
    for (const auto& [g, reg] : gate_zoo(Arithmetic::Modular)) {
        CHECK(is_identity(gate_matrix(g, reg) * gate_matrix(g.inverse(), reg)));
        CHECK(is_identity(gate_matrix(g.inverse(), reg) * gate_matrix(g, reg)));
    }
}

TEST_CASE("property: unitarity over random gate draws") {
    Rng rng(29);
    const Register q({2, 8});
    for (int draw = 0; draw < 50; ++draw) {
        const std::size_t amount = rng.next_u64() % 8;
        const auto dir = static_cast<Direction>(rng.next_u64() % 3);
        const Gate g = dir == Direction::Reflect || rng.next_u64() % 2 ? controlled_add(q, 0, 1, amount, dir)
                                                                       : shift(q, 1, amount, dir);
        CHECK(unitarity_defect(gate_matrix(g, q)) < 1e-12);
    }
}

TEST_CASE("property: application preserves norm and is linear") {
    Rng rng(31);
    for (const auto& [g, reg] : gate_zoo(Arithmetic::Modular)) {
        for (int draw = 0; draw < 10; ++draw) {
            const StateVector a = random_state(reg, rng);
            const StateVector b = random_state(reg, rng);
            const Complex ca = rng.complex_normal(), cb = rng.complex_normal();
            Amplitudes mix(reg.composite_dim());
            for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = ca * a[i] + cb * b[i];
            double norm = 0.0;
            for (const auto& x : mix) norm += std::norm(x);
            for (auto& x : mix) x /= std::sqrt(norm);

            const StateVector ga = apply(g, a), gb = apply(g, b);
            const StateVector gmix = apply(g, StateVector(reg, mix));
            CHECK(std::abs(ga.norm_squared() - 1.0) < kInvariantTol);
            double worst = 0.0;
            for (std::size_t i = 0; i < mix.size(); ++i)
                worst = std::max(worst, std::abs(gmix[i] - (ca * ga[i] + cb * gb[i]) / std::sqrt(norm)));
            CHECK(worst < 1e-12);
        }
    }
}
