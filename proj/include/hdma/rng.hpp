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
#include <cstdint>
#include <random>

namespace hdma {

/// Deterministic random source used for measurement sampling and random inputs.
///
/// Wraps std::mt19937_64, whose output sequence is fixed by the standard.
/// Uniform and normal variates are derived here instead of through the
/// <random> distributions, whose algorithms are implementation-defined, so a
/// seed gives the same stream on every toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random mantissa bits.
    double uniform();

    /// Standard normal via Box-Muller (no cached second variate).
    double normal();

    /// Complex number with independent standard-normal real and imaginary parts.
    std::complex<double> complex_normal();

private:
    std::mt19937_64 engine_;
};

}  // namespace hdma
