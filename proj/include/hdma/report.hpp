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

#include <string>

#include "hdma/circuits.hpp"
#include "hdma/hilbert.hpp"
#include "hdma/scenario.hpp"

namespace hdma {

enum class EmitFormat { Json, Table };

/// Amplitudes with magnitude at or below this are omitted from emitted states.
inline constexpr double kEmitFloor = 1e-14;

/// Ket string for one basis state: "|1>|0>|5>^8". Qubits carry no superscript.
std::string ket_label(const Register& reg, std::span<const std::size_t> locals);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

/// Non-negligible entries as [{"index", "locals", "re", "im"}, ...].
Json state_to_json(const StateVector& state);

/// JSON text (one entry per line) or a table of "re im ket" rows. Table rows
/// for power-of-two qudits also show the level in binary, e.g. "|5>^8 (101)".
std::string emit_state(const StateVector& state, EmitFormat format);

/// Gates and blocks of a circuit.
Json circuit_to_json(const Circuit& circuit);

Json report_to_json(const Report& report);

/// Full report text; JSON output ends with a newline.
std::string render_report(const Report& report, EmitFormat format);

}  // namespace hdma
