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

// Command-line front end for the HDMA multiplexer simulator.
//
//   hdma run scenarios/example3.json --emit table
//   hdma mux_roundtrip --n 8 --seed 42
//   hdma superdense --bits 10
//   hdma circuit mux --n 3
//
// Exit status: 0 all checks pass, 1 a check failed, 2 usage or parse error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hdma/circuits.hpp"
#include "hdma/errors.hpp"
#include "hdma/report.hpp"
#include "hdma/scenario.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    std::string emit = "json";
    bool intermediate = false;
    bool amplitudes = false;
};

void add_common(CLI::App* sub, CommonFlags& f) {
    sub->add_option("--seed", f.seed, "Seed for random inputs and measurement sampling");
    sub->add_option("--mode", f.mode, "Shift arithmetic")->check(CLI::IsMember({"modular", "plain"}));
    sub->add_option("--emit", f.emit, "Report format")->check(CLI::IsMember({"json", "table"}));
    sub->add_flag("--intermediate", f.intermediate, "Include the state at every block boundary");
    sub->add_flag("--amplitudes", f.amplitudes, "Include input, encoded and output states");
}

void apply_common(const CommonFlags& f, hdma::Json& doc) {
    if (f.seed) doc["seed"] = *f.seed;
    if (f.mode) doc["mode"] = *f.mode;
    doc["output"] = {{"amplitudes", f.amplitudes}, {"intermediate", f.intermediate}};
}

hdma::EmitFormat format_of(const CommonFlags& f) {
    return f.emit == "table" ? hdma::EmitFormat::Table : hdma::EmitFormat::Json;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);)
        if (!item.empty()) parts.push_back(item);
    return parts;
}

int report_and_exit(const hdma::Scenario& scenario, hdma::EmitFormat format) {
    const hdma::Report report = hdma::run(scenario);
    std::cout << hdma::render_report(report, format);
    if (const auto* failed = report.first_failure()) {
        std::cerr << "check failed: " << failed->name << " (value " << hdma::format_double(failed->value)
                  << ", threshold " << hdma::format_double(failed->threshold) << ")\n";
        return kExitFail;
    }
    return kExitPass;
}

hdma::Json input_from_flags(const std::string& input, const std::string& bits) {
    if (!bits.empty()) return {{"type", "basis"}, {"bits", bits}};
    return {{"type", input}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum multiplexer (n qubits <-> one 2^n-level qudit) simulator"};
    app.require_subcommand(1);

    // run <file>
    CommonFlags run_flags;
    std::string scenario_path;
    auto* run_cmd = app.add_subcommand("run", "Run a scenario file");
    run_cmd->add_option("file", scenario_path, "Scenario JSON file")->required();
    add_common(run_cmd, run_flags);

    // Per-kind subcommands build a scenario document and go through the same parser.
    CommonFlags mux_flags, ex3_flags, ad_flags, sd_flags, dc_flags, bl_flags;
    std::size_t mux_n = 3, ad_n = 3, bl_l = 3, bl_digits = 2;
    std::string mux_input = "random", mux_bits, ex3_input = "random", ex3_bits, ad_input = "random", ad_bits, ad_ops;
    std::string sd_bits = "10", dc_dims, bl_basis;

    auto* mux_cmd = app.add_subcommand("mux_roundtrip", "Multiplex, measure the emptied qubits, demultiplex");
    mux_cmd->add_option("--n", mux_n, "Number of qubit channels")->check(CLI::Range(1, 12));
    mux_cmd->add_option("--input", mux_input, "Input state")->check(CLI::IsMember({"random", "ghz", "random_entangled"}));
    mux_cmd->add_option("--bits", mux_bits, "Basis input, channel n-1 first (e.g. 101)");
    add_common(mux_cmd, mux_flags);

    auto* ex3_cmd = app.add_subcommand("example3", "Three-channel walkthrough, gate by gate");
    ex3_cmd->add_option("--input", ex3_input, "Input state")->check(CLI::IsMember({"random"}));
    ex3_cmd->add_option("--bits", ex3_bits, "Basis input, channel 2 first");
    add_common(ex3_cmd, ex3_flags);

    auto* ad_cmd = app.add_subcommand("add_drop", "Extract and insert channels mid-path");
    ad_cmd->add_option("--n", ad_n, "Number of qubit channels")->check(CLI::Range(1, 12));
    ad_cmd->add_option("--input", ad_input, "Input state")->check(CLI::IsMember({"random", "ghz", "random_entangled"}));
    ad_cmd->add_option("--bits", ad_bits, "Basis input, channel n-1 first");
    ad_cmd->add_option("--ops", ad_ops, "Comma-separated operations, e.g. extract:1,extract:2,insert:1");
    add_common(ad_cmd, ad_flags);

    auto* sd_cmd = app.add_subcommand("superdense", "Two classical bits through a Bell-pair qudit");
    sd_cmd->add_option("--bits", sd_bits, "Bits b1 b0, e.g. 10");
    add_common(sd_cmd, sd_flags);

    auto* dc_cmd = app.add_subcommand("decomposition_check", "Compare CX^d expansions as dense matrices");
    dc_cmd->add_option("--dims", dc_dims, "Comma-separated qudit dimensions (default 2,4,8,16,32,64)");
    add_common(dc_cmd, dc_flags);

    auto* bl_cmd = app.add_subcommand("base_l", "Transfer between l-level systems and one qudit");
    bl_cmd->add_option("--l", bl_l, "Levels per system")->check(CLI::Range(2, 4096));
    bl_cmd->add_option("--digits", bl_digits, "Number of l-level systems")->check(CLI::Range(1, 12));
    bl_cmd->add_option("--basis", bl_basis, "Basis input digits, most significant first (e.g. 2,1)");
    add_common(bl_cmd, bl_flags);

    // circuit <name>
    std::string circuit_name;
    std::size_t circuit_n = 3, circuit_d = 4, circuit_l = 3;
    std::string circuit_mode = "modular";
    auto* circuit_cmd = app.add_subcommand("circuit", "Print a circuit as JSON");
    circuit_cmd->add_option("name", circuit_name, "Circuit to build")
        ->required()
        ->check(CLI::IsMember({"mux", "demux", "swap", "transfer", "setcontrolled", "binary", "base_l", "superdense"}));
    circuit_cmd->add_option("--n", circuit_n, "Channels (mux, demux, binary) or digits (base_l)");
    circuit_cmd->add_option("--d", circuit_d, "Dimension (swap, transfer, setcontrolled)");
    circuit_cmd->add_option("--l", circuit_l, "Levels per system (base_l)");
    circuit_cmd->add_option("--mode", circuit_mode, "Shift arithmetic")->check(CLI::IsMember({"modular", "plain"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (run_cmd->parsed()) {
            hdma::Scenario s = hdma::load_scenario(scenario_path);
            if (run_flags.seed) s.seed = *run_flags.seed;
            if (run_flags.mode) s.mode = *run_flags.mode == "plain" ? hdma::Arithmetic::Plain : hdma::Arithmetic::Modular;
            s.output.intermediate = s.output.intermediate || run_flags.intermediate;
            s.output.amplitudes = s.output.amplitudes || run_flags.amplitudes;
            return report_and_exit(s, format_of(run_flags));
        }
        if (circuit_cmd->parsed()) {
            const auto mode = circuit_mode == "plain" ? hdma::Arithmetic::Plain : hdma::Arithmetic::Modular;
            hdma::Circuit c = [&] {
                if (circuit_name == "mux") return hdma::build_mux(circuit_n, mode);
                if (circuit_name == "demux") return hdma::build_demux(circuit_n, mode);
                if (circuit_name == "swap") return hdma::build_swap(circuit_d);
                if (circuit_name == "transfer") return hdma::build_transfer(circuit_d);
                if (circuit_name == "setcontrolled") return hdma::expand_cx_setcontrolled(circuit_d);
                if (circuit_name == "binary") return hdma::expand_cx_binary(circuit_n);
                if (circuit_name == "base_l") return hdma::build_base_l_transfer(circuit_l, circuit_n, mode);
                return hdma::superdense_circuit();
            }();
            std::cout << hdma::circuit_to_json(c).dump(2) << '\n';
            return kExitPass;
        }

        hdma::Json doc;
        const CommonFlags* flags = nullptr;
        if (mux_cmd->parsed()) {
            doc = {{"kind", "mux_roundtrip"}, {"n", mux_n}, {"input", input_from_flags(mux_input, mux_bits)}};
            flags = &mux_flags;
        } else if (ex3_cmd->parsed()) {
            doc = {{"kind", "example3"}, {"input", input_from_flags(ex3_input, ex3_bits)}};
            flags = &ex3_flags;
        } else if (ad_cmd->parsed()) {
            doc = {{"kind", "add_drop"}, {"n", ad_n}, {"input", input_from_flags(ad_input, ad_bits)}};
            hdma::Json ops = hdma::Json::array();
            for (const auto& item : split(ad_ops, ',')) {
                const auto parts = split(item, ':');
                if (parts.size() != 2) throw hdma::ParseError("--ops entry '" + item + "' is not op:channel");
                std::size_t channel = 0;
                try {
                    channel = std::stoul(parts[1]);
                } catch (const std::exception&) {
                    throw hdma::ParseError("--ops entry '" + item + "' has a bad channel");
                }
                ops.push_back({{"op", parts[0]}, {"channel", channel}});
            }
            if (!ops.empty()) doc["operations"] = ops;
            flags = &ad_flags;
        } else if (sd_cmd->parsed()) {
            doc = {{"kind", "superdense"}, {"bits", sd_bits}};
            flags = &sd_flags;
        } else if (dc_cmd->parsed()) {
            doc = {{"kind", "decomposition_check"}};
            if (!dc_dims.empty()) {
                hdma::Json dims = hdma::Json::array();
                for (const auto& d : split(dc_dims, ',')) {
                    try {
                        dims.push_back(std::stoul(d));
                    } catch (const std::exception&) {
                        throw hdma::ParseError("--dims entry '" + d + "' is not a number");
                    }
                }
                doc["dims"] = dims;
            }
            flags = &dc_flags;
        } else {
            doc = {{"kind", "base_l"}, {"l", bl_l}, {"n_digits", bl_digits}};
            if (!bl_basis.empty()) {
                hdma::Json digits = hdma::Json::array();
                for (const auto& d : split(bl_basis, ',')) {
                    try {
                        digits.push_back(std::stoul(d));
                    } catch (const std::exception&) {
                        throw hdma::ParseError("--basis entry '" + d + "' is not a number");
                    }
                }
                doc["input"] = {{"type", "basis"}, {"digits", digits}};
            }
            flags = &bl_flags;
        }
        apply_common(*flags, doc);
        return report_and_exit(hdma::parse_scenario(doc), format_of(*flags));
    } catch (const hdma::ArithmeticRangeError& e) {
        std::cerr << "range error: " << e.what() << '\n';
        return kExitFail;
    } catch (const hdma::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kExitFail;
    } catch (const hdma::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
