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

// Acceptance suite: one PASS/FAIL line per criterion.
//
//   hdma_acceptance <path-to-hdma-cli>
//
// Exit status is 0 only if every criterion passes.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hdma/analysis.hpp"
#include "hdma/circuits.hpp"
#include "hdma/errors.hpp"
#include "hdma/gates.hpp"
#include "hdma/hilbert.hpp"
#include "hdma/rng.hpp"

#include "oracles.hpp"

namespace {

using hdma::Arithmetic;
using hdma::Complex;
using hdma::StateVector;

constexpr double kTol = 1e-12;

struct Outcome {
    bool pass = true;
    std::string detail;
};

// States produced by one criterion run, compared across arithmetic modes.
using Trace = std::vector<StateVector>;

double deviation(const StateVector& s, const std::vector<Complex>& expected) {
    if (s.size() != expected.size()) return INFINITY;
    double worst = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) worst = std::max(worst, std::abs(s[i] - expected[i]));
    return worst;
}

oracle::Pairs pairs_of(const hdma::ChannelCoefficients& c) {
    oracle::Pairs p;
    for (std::size_t i = 0; i < c.size(); ++i) p.emplace_back(c.alpha(i), c.beta(i));
    return p;
}

std::string sci(double x) {
    std::ostringstream os;
    os.precision(2);
    os << std::scientific << x;
    return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Complex> amps_of(const StateVector& s) { return {s.amplitudes().begin(), s.amplitudes().end()}; }

// 1. Walkthrough of the three-channel multiplexer, gate by gate.
Outcome walkthrough(Arithmetic mode, Trace* trace) {
    const auto t0 = std::chrono::steady_clock::now();
    hdma::Rng rng(101);
    hdma::Circuit full = hdma::build_mux(3, mode);
    full.append(hdma::build_demux(3, mode));
    double worst = 0.0;
    bool shape = full.gates().size() == 12;
    for (int draw = 0; draw < 20; ++draw) {
        const auto coeffs = hdma::ChannelCoefficients::random(3, rng);
        const auto p = pairs_of(coeffs);
        const StateVector input = coeffs.mux_input();
        worst = std::max(worst, deviation(input, oracle::walkthrough_state(p, 0)));
        full.apply_gatewise(input, [&](std::size_t k, const StateVector& s) {
            worst = std::max(worst, deviation(s, oracle::walkthrough_state(p, k + 1)));
            if (trace) trace->push_back(s);
        });
    }
    const double t = seconds_since(t0);
    return {shape && worst < kTol && t < 1.0,
            "max deviation " + sci(worst) + " over 20 draws x 12 gates, " + sci(t) + " s"};
}

// 2. Qudit amplitudes against the product-of-coefficients law.
Outcome amplitude_law(Arithmetic mode, Trace* trace) {
    const auto t0 = std::chrono::steady_clock::now();
    hdma::Rng rng(202);
    double worst = 0.0;
    for (std::size_t n = 1; n <= 8; ++n) {
        const hdma::Circuit mux = hdma::build_mux(n, mode);
        for (int draw = 0; draw < 100; ++draw) {
            const auto coeffs = hdma::ChannelCoefficients::random(n, rng);
            const StateVector out = mux.apply(coeffs.mux_input());
            const auto expected = oracle::channel_product(pairs_of(coeffs));
            const auto predicted = hdma::predicted_qudit_amplitudes(coeffs);
            worst = std::max(worst, deviation(out, oracle::encoded(expected)));
            for (std::size_t x = 0; x < expected.size(); ++x) {
                worst = std::max(worst, std::abs(predicted[x] - out[x]));
                worst = std::max(worst, std::abs(predicted[x] - expected[x]));
            }
            if (trace && draw < 5) trace->push_back(out);
        }
    }
    const double t = seconds_since(t0);
    return {worst < kTol && t < 10.0, "max deviation " + sci(worst) + " for n = 1..8, " + sci(t) + " s"};
}

// 3. Demultiplexing undoes multiplexing; the emptied qubits hold |0>.
Outcome roundtrip(Arithmetic mode, Trace* trace) {
    hdma::Rng rng(303);
    double worst_dev = 0.0, worst_off = 0.0;
    for (std::size_t n : {2, 3, 4, 8}) {
        const hdma::Circuit mux = hdma::build_mux(n, mode);
        const hdma::Circuit demux = hdma::build_demux(n, mode);
        const hdma::Register channels(std::vector<std::size_t>(n, 2));
        for (int draw = 0; draw < 200; ++draw) {
            std::optional<StateVector> ch;
            if (draw < 100) {
                ch = hdma::ChannelCoefficients::random(n, rng).channel_state();
            } else if (draw == 100) {
                ch = hdma::ghz_state(n);
            } else {
                ch = hdma::random_state(channels, rng);
            }
            const auto amps = amps_of(*ch);
            const StateVector encoded = mux.apply(hdma::embed_channels(*ch));
            for (std::size_t i = amps.size(); i < encoded.size(); ++i)
                worst_off = std::max(worst_off, std::abs(encoded[i]));
            worst_dev = std::max(worst_dev, deviation(encoded, oracle::encoded(amps)));
            const StateVector back = demux.apply(encoded);
            worst_dev = std::max(worst_dev, deviation(back, oracle::embedded(amps)));
            if (trace && draw % 50 == 0) {
                trace->push_back(encoded);
                trace->push_back(back);
            }
        }
    }
    return {worst_dev < kTol && worst_off < kTol,
            "max deviation " + sci(worst_dev) + ", max off-support amplitude " + sci(worst_off)};
}

// 4. Both CX^d expansions equal the monolithic gate as dense operators.
Outcome decomposition() {
    double worst = 0.0;
    auto compare = [&](const hdma::DenseMatrix& m, std::size_t d) {
        for (std::size_t c = 0; c < d * d; ++c)
            for (std::size_t r = 0; r < d * d; ++r)
                worst = std::max(worst, std::abs(m(r, c) - oracle::cx_entry(d, r, c)));
    };
    for (std::size_t n = 1; n <= 6; ++n) {
        const std::size_t d = std::size_t{1} << n;
        const hdma::Register reg({d, d});
        compare(hdma::gate_matrix(hdma::generalized_cx(reg, 0, 1), reg), d);
        compare(hdma::expand_cx_setcontrolled(d).matrix(), d);
        compare(hdma::expand_cx_binary(n).matrix(), d);
    }
    return {worst < kTol, "max entry deviation " + sci(worst) + " for d = 2..64"};
}

double permutation_spread(const hdma::Circuit& c, const StateVector& input, Trace* trace) {
    const StateVector reference = c.apply(input);
    std::vector<std::size_t> order(c.blocks().size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    double worst = 0.0;
    do {
        const StateVector s = c.reorder_blocks(order).apply(input);
        worst = std::max(worst, hdma::max_deviation(s, reference));
        if (trace) trace->push_back(s);
    } while (std::next_permutation(order.begin(), order.end()));
    return worst;
}

// 5. Block order is irrelevant for the three-channel mux and demux.
Outcome commutation(Arithmetic mode, Trace* trace) {
    hdma::Rng rng(505);
    const hdma::Circuit mux = hdma::build_mux(3, mode);
    const hdma::Circuit demux = hdma::build_demux(3, mode);
    const hdma::Register channels({2, 2, 2});
    double worst = 0.0;
    for (int draw = 0; draw < 20; ++draw) {
        const StateVector input = hdma::embed_channels(hdma::random_state(channels, rng));
        worst = std::max(worst, permutation_spread(mux, input, trace));
        worst = std::max(worst, permutation_spread(demux, mux.apply(input), trace));
    }
    return {worst < kTol, "max deviation across 6 orders " + sci(worst) + " on 20 inputs"};
}

// 6. Channel 1 dropped mid-path, then the rest in both orders.
Outcome add_drop(Arithmetic mode, Trace* trace) {
    hdma::Rng rng(606);
    const std::vector<std::size_t> dims = {2, 2, 2, 8};
    double worst = 0.0;
    auto check_qubit = [&](const StateVector& s, const oracle::Pairs& p, std::size_t ch) {
        const auto rho = oracle::partial_trace_keep_one(amps_of(s), dims, hdma::channel_subsystem(3, ch));
        worst = std::max(worst, std::abs(1.0 - oracle::qubit_fidelity(rho, p[ch].first, p[ch].second)));
    };
    for (int draw = 0; draw < 20; ++draw) {
        const auto coeffs = hdma::ChannelCoefficients::random(3, rng);
        const auto p = pairs_of(coeffs);
        const StateVector encoded = hdma::build_mux(3, mode).apply(coeffs.mux_input());
        const StateVector dropped = hdma::extract_channel(3, 1, mode).apply(encoded);
        check_qubit(dropped, p, 1);
        for (const auto& order : {std::array<std::size_t, 2>{0, 2}, std::array<std::size_t, 2>{2, 0}}) {
            StateVector s = dropped;
            for (std::size_t ch : order) {
                s = hdma::extract_channel(3, ch, mode).apply(s);
                check_qubit(s, p, ch);
                check_qubit(s, p, 1);
            }
            worst = std::max(worst, deviation(s, oracle::walkthrough_state(p, 0)));
            if (trace) trace->push_back(s);
        }
    }
    return {worst < kTol, "max |1 - fidelity| " + sci(worst) + " over 20 inputs, both orders"};
}

// 7. Two classical bits land on the four Bell states.
Outcome superdense() {
    double worst = 0.0;
    const auto bell = oracle::bell_states();
    const hdma::DenseMatrix b = hdma::bell_isomorphism();
    for (unsigned b1 = 0; b1 < 2; ++b1) {
        for (unsigned b0 = 0; b0 < 2; ++b0) {
            const std::size_t k = 2 * b1 + b0;
            const StateVector s = hdma::superdense_encode(b1, b0);
            for (std::size_t x = 0; x < 4; ++x) worst = std::max(worst, std::abs(s[x] - (x == k ? 1.0 : 0.0)));
            // Bell side: Z^{b0} X^{b1} on the second qubit of (|00> + |11>)/sqrt2.
            std::array<Complex, 4> v = bell[0];
            if (b1) v = {v[1], v[0], v[3], v[2]};
            if (b0) v = {v[0], -v[1], v[2], -v[3]};
            for (std::size_t r = 0; r < 4; ++r) {
                Complex mapped = 0.0;
                for (std::size_t x = 0; x < 4; ++x) mapped += b(r, x) * s[x];
                worst = std::max(worst, std::abs(mapped - bell[k][r]));
                worst = std::max(worst, std::abs(mapped - v[r]));
            }
        }
    }
    const hdma::BellCorrespondence bc = hdma::bell_correspondence();
    worst = std::max({worst, bc.cnot_vs_shift2, bc.cz_vs_shift1_even, bc.encoder_vs_bell_circuit});

    // The bare identities without the sign and parity factors, reported for reference.
    hdma::DenseMatrix x(2, 2), z(2, 2);
    x(0, 1) = x(1, 0) = 1.0;
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    const hdma::Register qudit({4});
    const hdma::DenseMatrix id2 = hdma::DenseMatrix::identity(2);
    const double bare_x = max_abs_diff(b.adjoint() * hdma::kron(id2, x) * b,
                                             hdma::gate_matrix(hdma::shift(qudit, 0, 2), qudit));
    const double bare_z = max_abs_diff(b.adjoint() * hdma::kron(id2, z) * b,
                                             hdma::gate_matrix(hdma::shift(qudit, 0, 1), qudit));
    return {worst < kTol, "max deviation " + sci(worst) +
                              " (states, isomorphism, conjugation identities up to sign and on even levels;"
                              " bare deviations " + sci(bare_x) + ", " + sci(bare_z) + ")"};
}

// 8. Plain arithmetic reproduces every modular run above without range errors.
Outcome mode_equivalence() {
    using Run = std::function<Outcome(Arithmetic, Trace*)>;
    const std::vector<std::pair<const char*, Run>> runs = {
        {"walkthrough", walkthrough}, {"amplitude law", amplitude_law}, {"roundtrip", roundtrip},
        {"commutation", commutation}, {"add/drop", add_drop}};
    double worst = 0.0;
    std::size_t compared = 0;
    for (const auto& [name, fn] : runs) {
        Trace modular, plain;
        fn(Arithmetic::Modular, &modular);
        try {
            fn(Arithmetic::Plain, &plain);
        } catch (const hdma::ArithmeticRangeError& e) {
            return {false, std::string(name) + " raised a range error: " + e.what()};
        }
        if (modular.size() != plain.size()) return {false, std::string(name) + " produced a different state count"};
        for (std::size_t k = 0; k < modular.size(); ++k) worst = std::max(worst, hdma::max_deviation(modular[k], plain[k]));
        compared += modular.size();
    }
    return {worst == 0.0, "max deviation " + sci(worst) + " over " + std::to_string(compared) +
                              " states, no range errors (decomposition is modular by definition)"};
}

// 9. Qudit support doubles with each multiplexed channel.
Outcome support_doubling() {
    hdma::Rng rng(909);
    const std::size_t n = 5;
    std::optional<hdma::ChannelCoefficients> coeffs;
    bool all_nonzero = false;
    while (!all_nonzero) {
        coeffs = hdma::ChannelCoefficients::random(n, rng);
        all_nonzero = true;
        for (std::size_t i = 0; i < n; ++i)
            all_nonzero = all_nonzero && std::abs(coeffs->alpha(i)) > 1e-3 && std::abs(coeffs->beta(i)) > 1e-3;
    }
    const std::size_t d = std::size_t{1} << n;
    bool pass = true;
    std::string sizes;
    hdma::build_mux(n).apply_traced(coeffs->mux_input(), [&](std::size_t m, const StateVector& s) {
        std::vector<bool> occupied(d, false);
        for (std::size_t i = 0; i < s.size(); ++i)
            if (std::abs(s[i]) > 1e-12) occupied[i % d] = true;
        const auto counted = static_cast<std::size_t>(std::count(occupied.begin(), occupied.end(), true));
        const std::size_t reported = hdma::support_size(s, hdma::qudit_subsystem(n));
        pass = pass && counted == (std::size_t{2} << m) && reported == counted;
        sizes += (sizes.empty() ? "" : ",") + std::to_string(counted);
    });
    return {pass, "support sizes after blocks 1..5: " + sizes};
}

// 10. Base-3 transfer of two digits into a 9-level qudit.
Outcome base_l() {
    hdma::Rng rng(1010);
    const hdma::Circuit fwd = hdma::build_base_l_transfer(3, 2);
    const hdma::Circuit inv = fwd.inverse();
    const hdma::Register systems({3, 3});
    double worst = 0.0;
    for (int draw = 0; draw < 50; ++draw) {
        const auto amps = amps_of(hdma::random_state(systems, rng));
        std::vector<Complex> input(81);
        for (std::size_t c = 0; c < 9; ++c) input[c * 9] = amps[c];
        const StateVector in(fwd.reg(), input);
        const StateVector moved = fwd.apply(in);
        std::vector<Complex> expected(81);
        for (std::size_t c = 0; c < 9; ++c) expected[c] = amps[c];
        worst = std::max(worst, deviation(moved, expected));
        worst = std::max(worst, std::abs(1.0 - hdma::fidelity(inv.apply(moved), in)));
    }
    const std::array<std::size_t, 3> locals = {2, 1, 0};
    const StateVector basis_out = fwd.apply(hdma::basis_state(fwd.reg(), locals));
    const bool index7 = std::abs(basis_out[7] - 1.0) < kTol;
    return {worst < kTol && index7, "max deviation " + sci(worst) + ", basis (2,1) -> qudit index " +
                                        (index7 ? std::string("7") : std::string("not 7"))};
}

std::optional<std::string> capture(const std::string& command) {
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return std::nullopt;
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t k = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), k);
    if (pclose(pipe) != 0) return std::nullopt;
    return out;
}

// 11. Fixed seeds give byte-identical reports.
Outcome determinism(const std::string& cli) {
    if (cli.empty()) return {false, "no CLI path given"};
    const std::vector<std::string> commands = {
        "mux_roundtrip --n 6 --seed 11 --amplitudes",
        "mux_roundtrip --n 4 --input random_entangled --seed 12 --emit table --amplitudes",
        "example3 --seed 13 --intermediate",
        "add_drop --n 4 --ops extract:2,extract:0,insert:2 --seed 14 --amplitudes",
        "superdense --bits 11",
        "decomposition_check --dims 2,4,8",
        "base_l --l 3 --digits 2 --seed 15 --amplitudes"};
    for (const auto& args : commands) {
        const auto a = capture(cli + " " + args + " 2>&1");
        const auto b = capture(cli + " " + args + " 2>&1");
        if (!a || !b) return {false, "'" + args + "' did not exit 0"};
        if (*a != *b) return {false, "'" + args + "' differs between runs"};
    }
    return {true, std::to_string(commands.size()) + " commands, two runs each, identical output"};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"walkthrough", [] { return walkthrough(Arithmetic::Modular, nullptr); }},
        {"amplitude law", [] { return amplitude_law(Arithmetic::Modular, nullptr); }},
        {"roundtrip identity", [] { return roundtrip(Arithmetic::Modular, nullptr); }},
        {"decomposition equivalence", decomposition},
        {"block commutation", [] { return commutation(Arithmetic::Modular, nullptr); }},
        {"add/drop mid-path", [] { return add_drop(Arithmetic::Modular, nullptr); }},
        {"superdense table", superdense},
        {"mode equivalence", mode_equivalence},
        {"support doubling", support_doubling},
        {"base-l transfer", base_l},
        {"determinism", [&] { return determinism(cli); }},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s  [%02zu] %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, o.detail.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
