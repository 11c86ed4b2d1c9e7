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

#include "hdma/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "hdma/errors.hpp"

namespace hdma {

ChannelCoefficients::ChannelCoefficients(std::vector<std::pair<Complex, Complex>> channels)
    : channels_(std::move(channels)) {
    if (channels_.empty()) throw ArgumentError("need at least one channel");
    if (channels_.size() > kMaxChannels) throw CapacityError("at most 12 channels are supported");
    for (std::size_t i = 0; i < channels_.size(); ++i) {
        const double s = std::norm(channels_[i].first) + std::norm(channels_[i].second);
        if (std::abs(s - 1.0) > kInvariantTol) {
            throw NormalizationError("channel " + std::to_string(i) + " has |alpha|^2 + |beta|^2 = " +
                                     std::to_string(s));
        }
    }
}

ChannelCoefficients ChannelCoefficients::random(std::size_t n, Rng& rng) {
    std::vector<std::pair<Complex, Complex>> channels;
    for (std::size_t i = 0; i < n; ++i) {
        const Amplitudes a = random_amplitudes(2, rng);
        channels.emplace_back(a[0], a[1]);
    }
    return ChannelCoefficients(std::move(channels));
}

StateVector ChannelCoefficients::channel_state() const {
    const std::size_t n = size();
    std::vector<Amplitudes> factors;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = n - 1 - k;
        factors.push_back({alpha(i), beta(i)});
    }
    return product_state(Register(std::vector<std::size_t>(n, 2)), factors);
}

StateVector ChannelCoefficients::mux_input() const { return embed_channels(channel_state()); }

StateVector ChannelCoefficients::qubit(std::size_t i) const {
    return StateVector(Register({2}), {alpha(i), beta(i)});
}

Amplitudes predicted_qudit_amplitudes(const ChannelCoefficients& coeffs) {
    const std::size_t n = coeffs.size();
    Amplitudes amps(std::size_t{1} << n);
    for (std::size_t k = 0; k < amps.size(); ++k) {
        Complex a = 1.0;
        for (std::size_t i = 0; i < n; ++i) a *= coeffs.coefficient(i, subspace_digit(k, static_cast<unsigned>(i)));
        amps[k] = a;
    }
    return amps;
}

unsigned subspace_digit(std::size_t x, unsigned i) { return static_cast<unsigned>((x >> i) % 2); }

std::vector<std::size_t> subspace_members(std::size_t d, unsigned i, unsigned bit) {
    if (i >= 63 || (std::size_t{1} << i) >= d) {
        throw ArgumentError("digit " + std::to_string(i) + " does not exist below dimension " + std::to_string(d));
    }
    std::vector<std::size_t> members;
    for (std::size_t x = 0; x < d; ++x)
        if (subspace_digit(x, i) == bit) members.push_back(x);
    return members;
}

std::vector<std::size_t> subspace_intersection(std::size_t d, std::size_t bits) {
    std::vector<std::size_t> acc(d);
    std::iota(acc.begin(), acc.end(), std::size_t{0});
    for (unsigned i = 0; (std::size_t{1} << i) < d; ++i) {
        const auto half = subspace_members(d, i, subspace_digit(bits, i));
        std::vector<std::size_t> next;
        std::set_intersection(acc.begin(), acc.end(), half.begin(), half.end(), std::back_inserter(next));
        acc = std::move(next);
    }
    return acc;
}

Separability is_disentangled(const StateVector& state, std::size_t subsystem, double tol) {
    const std::size_t keep[] = {subsystem};
    const double p = subsystem_purity(state, keep);
    return {p >= 1.0 - tol, p};
}

std::size_t support_size(const StateVector& state, std::size_t subsystem, double floor) {
    const auto probs = marginal_probabilities(state, subsystem);
    return static_cast<std::size_t>(std::count_if(probs.begin(), probs.end(), [&](double p) { return p > floor; }));
}

double check_block_commutation(const Circuit& circuit, const StateVector& input) {
    const std::size_t nb = circuit.blocks().size();
    if (nb > kMaxCommutationBlocks) {
        throw CapacityError("commutation check permutes at most " + std::to_string(kMaxCommutationBlocks) +
                            " blocks, circuit has " + std::to_string(nb));
    }
    const StateVector reference = circuit.apply(input);
    std::vector<std::size_t> order(nb);
    std::iota(order.begin(), order.end(), std::size_t{0});
    double worst = 0.0;
    while (std::next_permutation(order.begin(), order.end())) {
        worst = std::max(worst, max_deviation(reference, circuit.reorder_blocks(order).apply(input)));
    }
    return worst;
}

StateVector ghz_state(std::size_t n) {
    const Register reg(std::vector<std::size_t>(n, 2));
    Amplitudes amps(reg.composite_dim());
    amps.front() = std::numbers::sqrt2 / 2;
    amps.back() = std::numbers::sqrt2 / 2;
    return StateVector(reg, std::move(amps));
}

}  // namespace hdma
