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

#include "hdma/report.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <sstream>
#include <variant>

namespace hdma {

std::string ket_label(const Register& reg, std::span<const std::size_t> locals) {
    std::string out;
    for (std::size_t k = 0; k < reg.size(); ++k) {
        out += "|" + std::to_string(locals[k]) + ">";
        if (reg.dim(k) != 2) out += "^" + std::to_string(reg.dim(k));
    }
    return out;
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

Json state_to_json(const StateVector& state) {
    Json entries = Json::array();
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (std::abs(state[i]) <= kEmitFloor) continue;
        entries.push_back(
            {{"index", i}, {"locals", state.reg().decompose(i)}, {"re", state[i].real()}, {"im", state[i].imag()}});
    }
    return entries;
}

namespace {

std::string binary(std::size_t x, std::size_t width) {
    std::string s;
    for (std::size_t b = width; b-- > 0;) s += static_cast<char>('0' + ((x >> b) & 1U));
    return s;
}

std::string signed_double(double x) {
    std::string s = format_double(x);
    return s.front() == '-' ? s : "+" + s;
}

void table_rows(std::ostringstream& os, const StateVector& state, const std::string& indent) {
    const Register& reg = state.reg();
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (std::abs(state[i]) <= kEmitFloor) continue;
        const auto locals = reg.decompose(i);
        os << indent << signed_double(state[i].real()) << ' ' << signed_double(state[i].imag()) << "i  "
           << ket_label(reg, locals);
        for (std::size_t k = 0; k < reg.size(); ++k) {
            const std::size_t d = reg.dim(k);
            if (d > 2 && std::has_single_bit(d)) {
                os << " (" << binary(locals[k], static_cast<std::size_t>(std::countr_zero(d))) << ")";
            }
        }
        os << '\n';
    }
}

Json json_number(double x) {
    // Infinity and NaN have no JSON form.
    if (std::isfinite(x)) return x;
    return format_double(x);
}

}  // namespace

std::string emit_state(const StateVector& state, EmitFormat format) {
    if (format == EmitFormat::Json) {
        std::ostringstream os;
        os << "[\n";
        const Json entries = state_to_json(state);
        for (std::size_t k = 0; k < entries.size(); ++k) {
            os << "  " << entries[k].dump() << (k + 1 < entries.size() ? "," : "") << '\n';
        }
        os << "]\n";
        return os.str();
    }
    std::ostringstream os;
    table_rows(os, state, "");
    return os.str();
}

Json circuit_to_json(const Circuit& circuit) {
    Json gates = Json::array();
    for (const auto& g : circuit.gates()) {
        Json j = {{"kind", to_string(g.kind())}, {"label", g.label()}};
        if (g.channel()) j["channel"] = *g.channel();
        std::visit(
            [&](const auto& op) {
                using T = std::decay_t<decltype(op)>;
                if constexpr (std::is_same_v<T, ShiftOp>) {
                    j["target"] = op.target;
                    j["amount"] = op.amount;
                    j["direction"] = to_string(op.direction);
                    j["mode"] = to_string(op.mode);
                } else if constexpr (std::is_same_v<T, ControlledAddOp>) {
                    j["control"] = op.control;
                    j["target"] = op.target;
                    j["amount"] = op.amount;
                    j["direction"] = to_string(op.direction);
                    j["mode"] = to_string(op.mode);
                } else if constexpr (std::is_same_v<T, SetControlledOp>) {
                    j["control"] = op.control;
                    j["members"] = op.members;
                    j["target"] = op.inner.target;
                    j["amount"] = op.inner.amount;
                    j["direction"] = to_string(op.inner.direction);
                    j["mode"] = to_string(op.inner.mode);
                } else {
                    j["control"] = op.control;
                    j["digit"] = op.digit;
                    j["target"] = op.target;
                }
            },
            g.op());
        gates.push_back(std::move(j));
    }
    Json blocks = Json::array();
    for (const auto& b : circuit.blocks()) {
        Json j = {{"label", b.label}};
        if (b.channel) j["channel"] = *b.channel;
        j["begin"] = b.begin;
        j["end"] = b.end;
        blocks.push_back(std::move(j));
    }
    const auto dims = circuit.reg().dims();
    return {{"register", std::vector<std::size_t>(dims.begin(), dims.end())}, {"gates", gates}, {"blocks", blocks}};
}

Json report_to_json(const Report& report) {
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"passed", c.passed()},
                          {"value", json_number(c.value)},
                          {"threshold", json_number(c.threshold)}});
    }
    Json states = Json::array();
    for (const auto& s : report.states) {
        const auto dims = s.state.reg().dims();
        states.push_back({{"label", s.label},
                          {"dims", std::vector<std::size_t>(dims.begin(), dims.end())},
                          {"entries", state_to_json(s.state)}});
    }
    Json out = {{"scenario", scenario_to_json(report.scenario)}, {"passed", report.passed()}, {"checks", checks}};
    if (!report.data.empty()) out["data"] = report.data;
    if (!states.empty()) out["states"] = states;
    return out;
}

std::string render_report(const Report& report, EmitFormat format) {
    if (format == EmitFormat::Json) return report_to_json(report).dump(2) + "\n";

    std::ostringstream os;
    os << "scenario: " << scenario_to_json(report.scenario).dump() << '\n';
    os << "result:   " << (report.passed() ? "PASS" : "FAIL") << '\n';
    os << "checks:\n";
    for (const auto& c : report.checks) {
        os << "  " << (c.passed() ? "PASS" : "FAIL") << "  " << c.name << "  value=" << format_double(c.value)
           << "  threshold=" << format_double(c.threshold) << '\n';
    }
    if (!report.data.empty()) os << "data: " << report.data.dump() << '\n';
    for (const auto& s : report.states) {
        os << "state [" << s.label << "]\n";
        table_rows(os, s.state, "  ");
    }
    return os.str();
}

}  // namespace hdma
