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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hdma/gates.hpp"
#include "hdma/hilbert.hpp"

namespace hdma {

using Json = nlohmann::ordered_json;

enum class ScenarioKind { MuxRoundtrip, Example3, AddDrop, Superdense, DecompositionCheck, BaseL };

const char* to_string(ScenarioKind kind);
std::optional<ScenarioKind> scenario_kind_from_string(const std::string& name);

/// Where the input state comes from.
struct InputSpec {
    enum class Type { Random, Coefficients, Basis, Ghz, RandomEntangled };
    Type type = Type::Random;
    /// Coefficients: entry i is (alpha_i, beta_i) of channel i.
    std::vector<std::pair<Complex, Complex>> channels;
    /// Basis: one local index per subsystem, leftmost first (for qubit channels
    /// the leftmost entry is channel n-1).
    std::vector<std::size_t> locals;
};

struct ChannelOperation {
    enum class Type { Extract, Insert };
    Type type;
    std::size_t channel;
};

struct OutputOptions {
    bool amplitudes = false;    ///< include input, encoded and output states
    bool intermediate = false;  ///< include the state at every block boundary
};

struct Scenario {
    ScenarioKind kind = ScenarioKind::MuxRoundtrip;
    std::size_t n = 3;
    Arithmetic mode = Arithmetic::Modular;
    std::uint64_t seed = 0;
    InputSpec input;
    std::vector<ChannelOperation> operations;  ///< add_drop; empty means extract 0..n-1
    unsigned bits[2] = {1, 0};                 ///< superdense: b1, b0
    std::vector<std::size_t> dims = {2, 4, 8, 16, 32, 64};  ///< decomposition_check
    std::size_t base = 3;                      ///< base_l: l
    std::size_t digits = 2;                    ///< base_l: n_digits
    OutputOptions output;
};

/// Parses and validates a scenario document. Throws ParseError naming the field.
Scenario parse_scenario(const Json& doc);

/// Reads a scenario file. Syntax errors are reported with line and column.
Scenario load_scenario(const std::filesystem::path& path);

/// Canonical JSON form of a scenario, as echoed in reports.
Json scenario_to_json(const Scenario& scenario);

/// One embedded assertion: passes iff value <= threshold.
struct Check {
    std::string name;
    double value;
    double threshold;
    bool passed() const { return value <= threshold; }
};

struct StateRecord {
    std::string label;
    StateVector state;
};

struct Report {
    Scenario scenario;
    std::vector<Check> checks;
    std::vector<StateRecord> states;
    Json data = Json::object();  ///< kind-specific results

    bool passed() const;
    const Check* first_failure() const;
};

/// Executes a scenario. Deterministic for a fixed scenario (seed included).
Report run(const Scenario& scenario);

}  // namespace hdma
