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

#include <stdexcept>
#include <string>

namespace hdma {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Subsystem index or local basis index out of range, or mismatched registers.
class DimensionError : public Error {
public:
    using Error::Error;
};

class NormalizationError : public Error {
public:
    using Error::Error;
};

/// Malformed argument that is not a dimension problem (empty sets, control == target, ...).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// A plain-arithmetic shift left the range [0, d) on a basis state with nonzero amplitude.
class ArithmeticRangeError : public Error {
public:
    using Error::Error;
};

/// Requested size exceeds a supported bound.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed. Signals a bug upstream, not bad input.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// Scenario file could not be parsed; the message names the offending field.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace hdma
