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

#include "hdma/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hdma/errors.hpp"

namespace hdma {
namespace {

// 4^12 amplitudes: twelve qubit channels plus their 2^12-level qudit.
constexpr std::size_t kMaxCompositeDim = std::size_t{1} << 24;

double squared_norm(std::span<const Complex> amps) {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return s;
}

void require_normalized(double norm_sq, const std::string& what) {
    if (std::abs(norm_sq - 1.0) > kInvariantTol) {
        throw NormalizationError(what + " has squared norm " + std::to_string(norm_sq));
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Register

Register::Register(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw DimensionError("register needs at least one subsystem");
    strides_.assign(dims_.size(), 1);
    for (std::size_t k = dims_.size(); k-- > 0;) {
        if (dims_[k] < 2) {
            throw DimensionError("subsystem " + std::to_string(k) + " has dimension " +
                                 std::to_string(dims_[k]) + " (< 2)");
        }
        strides_[k] = composite_;
        if (composite_ > kMaxCompositeDim / dims_[k]) {
            throw CapacityError("composite dimension exceeds " + std::to_string(kMaxCompositeDim));
        }
        composite_ *= dims_[k];
    }
}

std::size_t Register::dim(std::size_t subsystem) const {
    if (subsystem >= dims_.size()) {
        throw DimensionError("subsystem " + std::to_string(subsystem) + " out of range for " +
                             std::to_string(dims_.size()) + " subsystems");
    }
    return dims_[subsystem];
}

std::size_t Register::stride(std::size_t subsystem) const {
    dim(subsystem);
    return strides_[subsystem];
}

std::size_t Register::compose(std::span<const std::size_t> locals) const {
    if (locals.size() != dims_.size()) {
        throw DimensionError("expected " + std::to_string(dims_.size()) + " local indices, got " +
                             std::to_string(locals.size()));
    }
    std::size_t index = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        if (locals[k] >= dims_[k]) {
            throw DimensionError("local index " + std::to_string(locals[k]) + " out of range for subsystem " +
                                 std::to_string(k) + " of dimension " + std::to_string(dims_[k]));
        }
        index += locals[k] * strides_[k];
    }
    return index;
}

std::vector<std::size_t> Register::decompose(std::size_t index) const {
    if (index >= composite_) throw DimensionError("composite index " + std::to_string(index) + " out of range");
    std::vector<std::size_t> locals(dims_.size());
    for (std::size_t k = 0; k < dims_.size(); ++k) locals[k] = local(index, k);
    return locals;
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(Register reg, Amplitudes amps) : register_(std::move(reg)), amps_(std::move(amps)) {
    if (amps_.size() != register_.composite_dim()) {
        throw DimensionError("amplitude count " + std::to_string(amps_.size()) + " does not match dimension " +
                             std::to_string(register_.composite_dim()));
    }
    require_normalized(squared_norm(amps_), "state vector");
}

Complex StateVector::amplitude(std::span<const std::size_t> locals) const {
    return amps_[register_.compose(locals)];
}

double StateVector::norm_squared() const { return squared_norm(amps_); }

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(std::vector<std::size_t> dims, DenseMatrix entries)
    : dims_(std::move(dims)), entries_(std::move(entries)) {
    const std::size_t expected =
        std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>{});
    if (entries_.rows() != expected || entries_.cols() != expected) {
        throw DimensionError("density matrix must be " + std::to_string(expected) + " square");
    }
}

double DensityMatrix::purity() const {
    // tr(rho^2) = sum_ij |rho_ij|^2 for Hermitian rho.
    double p = 0.0;
    for (std::size_t c = 0; c < entries_.cols(); ++c)
        for (std::size_t r = 0; r < entries_.rows(); ++r) p += std::norm(entries_(r, c));
    return p;
}

double DensityMatrix::hermiticity_defect() const {
    return max_abs_diff(entries_, entries_.adjoint());
}

// ---------------------------------------------------------------------------
// Construction

StateVector basis_state(const Register& reg, std::span<const std::size_t> locals) {
    Amplitudes amps(reg.composite_dim());
    amps[reg.compose(locals)] = 1.0;
    return StateBuilder::trusted(reg, std::move(amps));
}

StateVector product_state(const Register& reg, const std::vector<Amplitudes>& factors) {
    if (factors.size() != reg.size()) {
        throw DimensionError("expected " + std::to_string(reg.size()) + " factors, got " +
                             std::to_string(factors.size()));
    }
    for (std::size_t k = 0; k < factors.size(); ++k) {
        if (factors[k].size() != reg.dim(k)) {
            throw DimensionError("factor " + std::to_string(k) + " has length " + std::to_string(factors[k].size()) +
                                 ", subsystem dimension is " + std::to_string(reg.dim(k)));
        }
        require_normalized(squared_norm(factors[k]), "factor " + std::to_string(k));
    }
    Amplitudes amps{1.0};
    for (const auto& f : factors) {
        Amplitudes next(amps.size() * f.size());
        for (std::size_t i = 0; i < amps.size(); ++i)
            for (std::size_t j = 0; j < f.size(); ++j) next[i * f.size() + j] = amps[i] * f[j];
        amps = std::move(next);
    }
    return StateVector(reg, std::move(amps));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    std::vector<std::size_t> dims(a.reg().dims().begin(), a.reg().dims().end());
    dims.insert(dims.end(), b.reg().dims().begin(), b.reg().dims().end());
    Amplitudes amps(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) amps[i * b.size() + j] = a[i] * b[j];
    return StateVector(Register(std::move(dims)), std::move(amps));
}

// ---------------------------------------------------------------------------
// Measurement

std::vector<double> marginal_probabilities(const StateVector& state, std::size_t subsystem) {
    const Register& reg = state.reg();
    std::vector<double> probs(reg.dim(subsystem), 0.0);
    for (std::size_t i = 0; i < state.size(); ++i) probs[reg.local(i, subsystem)] += std::norm(state[i]);
    return probs;
}

Measurement measure_subsystem(const StateVector& state, std::size_t subsystem, Rng& rng) {
    const Register& reg = state.reg();
    const std::vector<double> probs = marginal_probabilities(state, subsystem);
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);

    // Inverse-CDF sampling; outcomes with zero probability can never be drawn.
    const double u = rng.uniform() * total;
    std::size_t outcome = probs.size();
    double acc = 0.0;
    for (std::size_t x = 0; x < probs.size(); ++x) {
        if (!(probs[x] > 0.0)) continue;
        acc += probs[x];
        outcome = x;
        if (u < acc) break;
    }
    if (outcome == probs.size()) throw InvariantViolation("measurement on a state with zero total probability");
    const double p = probs[outcome];

    const double scale = 1.0 / std::sqrt(p);
    Amplitudes amps(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (reg.local(i, subsystem) == outcome) amps[i] = state[i] * scale;
    }
    return {outcome, StateVector(reg, std::move(amps))};
}

Measurement measure_subsystem(const StateVector& state, std::size_t subsystem, std::uint64_t seed) {
    Rng rng(seed);
    return measure_subsystem(state, subsystem, rng);
}

// ---------------------------------------------------------------------------
// Partial trace

namespace {

struct Bipartition {
    std::vector<std::size_t> kept_dims;
    std::vector<std::size_t> kept_index;    // composite index -> kept index
    std::vector<std::size_t> traced_index;  // composite index -> traced index
    std::size_t kept_dim = 1;
    std::size_t traced_dim = 1;
};

Bipartition split(const Register& reg, std::span<const std::size_t> keep) {
    if (keep.empty()) throw ArgumentError("reduced_density needs a non-empty keep set");
    std::vector<bool> kept(reg.size(), false);
    for (std::size_t k : keep) {
        reg.dim(k);
        kept[k] = true;
    }
    Bipartition bp;
    for (std::size_t k = 0; k < reg.size(); ++k) {
        if (kept[k]) {
            bp.kept_dims.push_back(reg.dim(k));
            bp.kept_dim *= reg.dim(k);
        } else {
            bp.traced_dim *= reg.dim(k);
        }
    }
    bp.kept_index.resize(reg.composite_dim());
    bp.traced_index.resize(reg.composite_dim());
    for (std::size_t i = 0; i < reg.composite_dim(); ++i) {
        std::size_t ki = 0, ti = 0;
        for (std::size_t k = 0; k < reg.size(); ++k) {
            const std::size_t x = reg.local(i, k);
            if (kept[k]) ki = ki * reg.dim(k) + x;
            else ti = ti * reg.dim(k) + x;
        }
        bp.kept_index[i] = ki;
        bp.traced_index[i] = ti;
    }
    return bp;
}

// Reshape into a kept x traced matrix M; rho_kept = M M^dagger.
DenseMatrix reshape(const StateVector& state, const Bipartition& bp) {
    DenseMatrix m(bp.kept_dim, bp.traced_dim);
    for (std::size_t i = 0; i < state.size(); ++i) m(bp.kept_index[i], bp.traced_index[i]) = state[i];
    return m;
}

}  // namespace

DensityMatrix reduced_density(const StateVector& state, std::span<const std::size_t> keep) {
    const Bipartition bp = split(state.reg(), keep);
    const DenseMatrix m = reshape(state, bp);
    DenseMatrix rho(bp.kept_dim, bp.kept_dim);
    for (std::size_t r = 0; r < bp.kept_dim; ++r)
        for (std::size_t c = r; c < bp.kept_dim; ++c) {
            Complex s = 0.0;
            for (std::size_t t = 0; t < bp.traced_dim; ++t) s += m(r, t) * std::conj(m(c, t));
            rho(r, c) = s;
            rho(c, r) = std::conj(s);
        }
    return DensityMatrix(bp.kept_dims, std::move(rho));
}

double subsystem_purity(const StateVector& state, std::span<const std::size_t> keep) {
    const Bipartition bp = split(state.reg(), keep);
    const DenseMatrix m = reshape(state, bp);
    // Gram matrix on the smaller side; its Frobenius norm squared is the purity.
    const bool rows_small = bp.kept_dim <= bp.traced_dim;
    const std::size_t small = rows_small ? bp.kept_dim : bp.traced_dim;
    const std::size_t large = rows_small ? bp.traced_dim : bp.kept_dim;
    auto at = [&](std::size_t s, std::size_t l) { return rows_small ? m(s, l) : m(l, s); };
    double purity = 0.0;
    for (std::size_t a = 0; a < small; ++a)
        for (std::size_t b = 0; b < small; ++b) {
            Complex g = 0.0;
            for (std::size_t l = 0; l < large; ++l) g += at(a, l) * std::conj(at(b, l));
            purity += std::norm(g);
        }
    return purity;
}

// ---------------------------------------------------------------------------
// Comparisons

namespace {
void require_same_register(const StateVector& a, const StateVector& b) {
    if (!(a.reg() == b.reg())) throw DimensionError("states live on different registers");
}
}  // namespace

Complex inner_product(const StateVector& a, const StateVector& b) {
    require_same_register(a, b);
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double fidelity(const StateVector& a, const StateVector& b) {
    return std::min(1.0, std::norm(inner_product(a, b)));
}

double fidelity(const DensityMatrix& rho, const StateVector& psi) {
    if (rho.dim() != psi.size()) throw DimensionError("density matrix and state dimensions differ");
    Complex s = 0.0;
    for (std::size_t r = 0; r < rho.dim(); ++r)
        for (std::size_t c = 0; c < rho.dim(); ++c) s += std::conj(psi[r]) * rho(r, c) * psi[c];
    return std::clamp(s.real(), 0.0, 1.0);
}

double max_deviation(const StateVector& a, const StateVector& b) {
    require_same_register(a, b);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

Amplitudes random_amplitudes(std::size_t dim, Rng& rng) {
    Amplitudes amps(dim);
    double s = 0.0;
    for (auto& a : amps) {
        a = rng.complex_normal();
        s += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(s);
    for (auto& a : amps) a *= scale;
    return amps;
}

StateVector random_state(const Register& reg, Rng& rng) {
    return StateVector(reg, random_amplitudes(reg.composite_dim(), rng));
}

}  // namespace hdma
