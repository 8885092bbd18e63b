// Copyright 2026 The qpoisson Authors
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

/**
 * @file
 * Dense statevector with in-place gate application, measurement,
 * post-selection, sampling and register dumps.
 *
 * Basis index bit i is qubit i. Gates are applied over bit-masked index
 * pairs (or cosets, for block unitaries) so no full-space matrix is ever
 * built and each gate costs O(2^q).
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "circuit.hpp"
#include "dense.hpp"
#include "errors.hpp"
#include "gates.hpp"
#include "rng.hpp"

namespace qpoisson {

using Histogram = std::map<std::uint64_t, std::uint64_t>;

/// Branches with probability below this are treated as impossible.
inline constexpr double kDegenerateBranchProbability = 1e-14;
/// Allowed 1 - <f|rho|f> for a subset dump to count as a product state.
inline constexpr double kProductStateTolerance = 1e-8;

namespace detail {

/// Spreads the bits of `free_index` over the positions not in `fixed_sorted`.
inline auto insert_zero_bits(std::uint64_t free_index,
                             std::span<const std::size_t> fixed_sorted) -> std::uint64_t {
    for (auto pos : fixed_sorted) {
        const std::uint64_t low = free_index & ((std::uint64_t{1} << pos) - 1);
        free_index = ((free_index >> pos) << (pos + 1)) | low;
    }
    return free_index;
}

/// Reads qubits[i] of `index` into bit i of the result.
inline auto extract_bits(std::uint64_t index, std::span<const std::size_t> qubits)
    -> std::uint64_t {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        out |= ((index >> qubits[i]) & 1U) << i;
    }
    return out;
}

/// Writes bit i of `value` to position qubits[i].
inline auto deposit_bits(std::uint64_t value, std::span<const std::size_t> qubits)
    -> std::uint64_t {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        out |= ((value >> i) & 1U) << qubits[i];
    }
    return out;
}

inline auto sorted_copy(std::vector<std::size_t> v) -> std::vector<std::size_t> {
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace detail

struct MeasureOutcome {
    int bit;
    double probability;
};

class Statevector {
  public:
    static constexpr std::size_t kDefaultMaxQubits = 26;

    /// |0...0> on `num_qubits` qubits. Throws CapacityError outside [1, max_qubits].
    explicit Statevector(std::size_t num_qubits,
                         std::size_t max_qubits = kDefaultMaxQubits)
        : num_qubits_(num_qubits) {
        check_capacity(num_qubits, max_qubits);
        amplitudes_.assign(std::size_t{1} << num_qubits, Complex{0.0});
        amplitudes_[0] = 1.0;
    }

    /// Wraps an existing amplitude vector; it must have power-of-two length
    /// and unit norm within 1e-10.
    static auto from_amplitudes(std::vector<Complex> amplitudes,
                                std::size_t max_qubits = kDefaultMaxQubits)
        -> Statevector {
        const std::size_t len = amplitudes.size();
        if (len < 2 || (len & (len - 1)) != 0) {
            throw InvalidGateError("amplitude vector length must be a power of two >= 2");
        }
        const auto q = static_cast<std::size_t>(std::countr_zero(len));
        check_capacity(q, max_qubits);
        Statevector sv;
        sv.num_qubits_ = q;
        sv.amplitudes_ = std::move(amplitudes);
        if (std::abs(sv.norm_squared() - 1.0) > 1e-10) {
            throw InvalidGateError("amplitude vector is not normalized");
        }
        return sv;
    }

    [[nodiscard]] auto num_qubits() const noexcept -> std::size_t { return num_qubits_; }
    [[nodiscard]] auto size() const noexcept -> std::size_t { return amplitudes_.size(); }
    [[nodiscard]] auto amplitudes() const noexcept -> std::span<const Complex> {
        return amplitudes_;
    }
    [[nodiscard]] auto amplitude(std::uint64_t index) const -> Complex {
        return amplitudes_.at(index);
    }

    [[nodiscard]] auto norm_squared() const -> double {
        double s = 0.0;
        for (const auto &a : amplitudes_) {
            s += std::norm(a);
        }
        return s;
    }

    void apply(const GateOp &op) {
        validate(op, num_qubits_);
        std::visit([this](const auto &g) { apply_validated(g); }, op);
    }

    void apply(const Circuit &circuit) {
        for (const auto &op : circuit) {
            apply(op);
        }
    }

    void apply_inverse(const Circuit &circuit) {
        for (auto it = circuit.ops().rbegin(); it != circuit.ops().rend(); ++it) {
            apply(inverse(*it));
        }
    }

    [[nodiscard]] auto probability_of_one(std::size_t qubit) const -> double {
        check_qubit(qubit);
        const std::uint64_t bit = std::uint64_t{1} << qubit;
        double p = 0.0;
        for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
            if ((i & bit) != 0) {
                p += std::norm(amplitudes_[i]);
            }
        }
        return p;
    }

    /// Born-rule measurement of one qubit; collapses and renormalizes in place.
    auto measure_qubit(std::size_t qubit, Rng &rng) -> MeasureOutcome {
        const double p1 = probability_of_one(qubit);
        const int bit = rng.uniform() < p1 ? 1 : 0;
        const double p = bit == 1 ? p1 : 1.0 - p1;
        if (p < kDegenerateBranchProbability) {
            throw DegenerateBranchError("measured branch has probability " +
                                        std::to_string(p));
        }
        collapse(qubit, bit, p);
        return {bit, p};
    }

    auto measure_qubit(std::size_t qubit, std::uint64_t seed) -> MeasureOutcome {
        Rng rng(seed);
        return measure_qubit(qubit, rng);
    }

    /// Deterministic post-selection of `qubit` onto `bit`; returns the
    /// Born probability of that branch.
    auto project(std::size_t qubit, int bit) -> double {
        check_qubit(qubit);
        const double p1 = probability_of_one(qubit);
        const double p = bit != 0 ? p1 : 1.0 - p1;
        if (p < kDegenerateBranchProbability) {
            throw DegenerateBranchError("cannot project onto a branch with probability " +
                                        std::to_string(p));
        }
        collapse(qubit, bit != 0 ? 1 : 0, p);
        return p;
    }

    /// Post-selects a whole register onto `value` (little-endian over `qubits`).
    auto project_register(std::span<const std::size_t> qubits, std::uint64_t value)
        -> double {
        check_subset(qubits);
        const std::uint64_t mask =
            detail::deposit_bits(~std::uint64_t{0} >> (64 - qubits.size()), qubits);
        const std::uint64_t pattern = detail::deposit_bits(value, qubits);
        double p = 0.0;
        for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
            if ((i & mask) == pattern) {
                p += std::norm(amplitudes_[i]);
            }
        }
        if (p < kDegenerateBranchProbability) {
            throw DegenerateBranchError("cannot project register onto a branch with probability " +
                                        std::to_string(p));
        }
        const double scale = 1.0 / std::sqrt(p);
        for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
            amplitudes_[i] = (i & mask) == pattern ? amplitudes_[i] * scale : Complex{0.0};
        }
        return p;
    }

    /// Marginal distribution of `qubits`, indexed little-endian over the list.
    [[nodiscard]] auto marginal_probabilities(std::span<const std::size_t> qubits) const
        -> std::vector<double> {
        check_subset(qubits);
        std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
        for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
            probs[detail::extract_bits(i, qubits)] += std::norm(amplitudes_[i]);
        }
        return probs;
    }

    /// Non-collapsing repeated sampling of `qubits`. Same seed, same histogram.
    [[nodiscard]] auto sample_counts(std::span<const std::size_t> qubits,
                                     std::uint64_t shots, std::uint64_t seed) const
        -> Histogram {
        if (qubits.empty()) {
            throw InvalidGateError("sample_counts needs a non-empty qubit subset");
        }
        if (shots == 0) {
            throw InvalidGateError("sample_counts needs at least one shot");
        }
        const auto probs = marginal_probabilities(qubits);
        std::vector<double> cumulative(probs.size());
        std::partial_sum(probs.begin(), probs.end(), cumulative.begin());
        const double total = cumulative.back();

        Rng rng(seed);
        Histogram counts;
        for (std::uint64_t s = 0; s < shots; ++s) {
            const double u = rng.uniform() * total;
            auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
            if (it == cumulative.end()) {
                --it;
            }
            // skip zero-width bins that upper_bound can land on at the tail
            auto idx = static_cast<std::uint64_t>(it - cumulative.begin());
            while (probs[idx] == 0.0 && idx > 0) {
                --idx;
            }
            ++counts[idx];
        }
        return counts;
    }

    /// Full dump: every basis index with its amplitude.
    [[nodiscard]] auto dump_amplitudes() const
        -> std::vector<std::pair<std::uint64_t, Complex>> {
        std::vector<std::pair<std::uint64_t, Complex>> out;
        out.reserve(amplitudes_.size());
        for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
            out.emplace_back(i, amplitudes_[i]);
        }
        return out;
    }

    /**
     * Factor state of `qubits`, up to global phase.
     *
     * Requires the state to be a product across the cut. The candidate
     * factor |f> is the dominant complement slice; the cut is accepted when
     * 1 - <f|rho|f> <= kProductStateTolerance, where rho is the reduced
     * state of the subset. Otherwise throws EntangledCutError.
     */
    [[nodiscard]] auto dump_amplitudes(std::span<const std::size_t> qubits) const
        -> std::vector<std::pair<std::uint64_t, Complex>> {
        check_subset(qubits);
        const auto complement = complement_of(qubits);
        const std::size_t sub_dim = std::size_t{1} << qubits.size();
        const std::size_t rest_dim = std::size_t{1} << complement.size();

        std::vector<double> slice_weight(rest_dim, 0.0);
        for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
            slice_weight[detail::extract_bits(i, complement)] += std::norm(amplitudes_[i]);
        }
        const auto best = static_cast<std::uint64_t>(
            std::max_element(slice_weight.begin(), slice_weight.end()) - slice_weight.begin());
        const std::uint64_t best_offset = detail::deposit_bits(best, complement);
        const double scale = 1.0 / std::sqrt(slice_weight[best]);

        std::vector<Complex> factor(sub_dim);
        std::vector<std::uint64_t> sub_offsets(sub_dim);
        for (std::uint64_t s = 0; s < sub_dim; ++s) {
            sub_offsets[s] = detail::deposit_bits(s, qubits);
            factor[s] = amplitudes_[best_offset | sub_offsets[s]] * scale;
        }

        double fidelity = 0.0;
        for (std::uint64_t r = 0; r < rest_dim; ++r) {
            if (slice_weight[r] == 0.0) {
                continue;
            }
            const std::uint64_t offset = detail::deposit_bits(r, complement);
            Complex overlap{0.0};
            for (std::uint64_t s = 0; s < sub_dim; ++s) {
                overlap += std::conj(factor[s]) * amplitudes_[offset | sub_offsets[s]];
            }
            fidelity += std::norm(overlap);
        }
        if (1.0 - fidelity / norm_squared() > kProductStateTolerance) {
            throw EntangledCutError("subset is entangled with the rest of the state (purity defect " +
                                    std::to_string(1.0 - fidelity) + ")");
        }

        std::vector<std::pair<std::uint64_t, Complex>> out;
        out.reserve(sub_dim);
        for (std::uint64_t s = 0; s < sub_dim; ++s) {
            out.emplace_back(s, factor[s]);
        }
        return out;
    }

    /// Euclidean distance between two states of equal size.
    [[nodiscard]] auto distance(const Statevector &other) const -> double {
        if (other.size() != size()) {
            throw InvalidGateError("distance: state sizes differ");
        }
        double s = 0.0;
        for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
            s += std::norm(amplitudes_[i] - other.amplitudes_[i]);
        }
        return std::sqrt(s);
    }

  private:
    Statevector() = default;

    static void check_capacity(std::size_t q, std::size_t max_qubits) {
        if (q < 1 || q > max_qubits || q > 62) {
            throw CapacityError(q, max_qubits);
        }
    }

    void check_qubit(std::size_t qubit) const {
        if (qubit >= num_qubits_) {
            throw InvalidGateError("qubit index " + std::to_string(qubit) + " out of range");
        }
    }

    void check_subset(std::span<const std::size_t> qubits) const {
        if (qubits.empty()) {
            throw InvalidGateError("empty qubit subset");
        }
        std::vector<std::size_t> sorted(qubits.begin(), qubits.end());
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw InvalidGateError("qubit subset lists a qubit twice");
        }
        for (auto q : sorted) {
            check_qubit(q);
        }
    }

    [[nodiscard]] auto complement_of(std::span<const std::size_t> qubits) const
        -> std::vector<std::size_t> {
        std::vector<std::size_t> out;
        for (std::size_t q = 0; q < num_qubits_; ++q) {
            if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) {
                out.push_back(q);
            }
        }
        return out;
    }

    void collapse(std::size_t qubit, int bit, double probability) {
        const std::uint64_t mask = std::uint64_t{1} << qubit;
        const std::uint64_t keep = bit == 1 ? mask : 0;
        const double scale = 1.0 / std::sqrt(probability);
        for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
            amplitudes_[i] = (i & mask) == keep ? amplitudes_[i] * scale : Complex{0.0};
        }
    }

    void apply_pairs(std::span<const std::size_t> fixed_sorted, std::uint64_t pattern,
                     std::size_t target, const Mat2 &m) {
        const std::uint64_t tbit = std::uint64_t{1} << target;
        const std::uint64_t count = amplitudes_.size() >> fixed_sorted.size();
        for (std::uint64_t k = 0; k < count; ++k) {
            const std::uint64_t i0 = detail::insert_zero_bits(k, fixed_sorted) | pattern;
            const std::uint64_t i1 = i0 | tbit;
            const Complex a0 = amplitudes_[i0];
            const Complex a1 = amplitudes_[i1];
            amplitudes_[i0] = m[0] * a0 + m[1] * a1;
            amplitudes_[i1] = m[2] * a0 + m[3] * a1;
        }
    }

    void apply_validated(const SingleQubitOp &g) {
        const std::array<std::size_t, 1> fixed{g.target};
        apply_pairs(fixed, 0, g.target, g.matrix);
    }

    void apply_validated(const ControlledOp &g) {
        std::vector<std::size_t> fixed;
        std::uint64_t pattern = 0;
        for (const auto &c : g.controls) {
            fixed.push_back(c.qubit);
            if (c.polarity) {
                pattern |= std::uint64_t{1} << c.qubit;
            }
        }
        fixed.push_back(g.target);
        std::sort(fixed.begin(), fixed.end());
        apply_pairs(fixed, pattern, g.target, g.matrix);
    }

    void apply_validated(const SelectivePhaseOp &g) {
        const auto fixed = detail::sorted_copy(g.qubits);
        const std::uint64_t pattern = detail::deposit_bits(g.basis_index, g.qubits);
        const Complex factor = std::polar(1.0, g.angle);
        const std::uint64_t count = amplitudes_.size() >> fixed.size();
        for (std::uint64_t k = 0; k < count; ++k) {
            amplitudes_[detail::insert_zero_bits(k, fixed) | pattern] *= factor;
        }
    }

    void apply_validated(const BlockOp &g) {
        const auto fixed = detail::sorted_copy(g.qubits);
        const std::size_t dim = std::size_t{1} << g.qubits.size();
        std::vector<std::uint64_t> offsets(dim);
        for (std::uint64_t l = 0; l < dim; ++l) {
            offsets[l] = detail::deposit_bits(l, g.qubits);
        }
        std::vector<Complex> in(dim);
        const std::uint64_t cosets = amplitudes_.size() >> fixed.size();
        for (std::uint64_t k = 0; k < cosets; ++k) {
            const std::uint64_t base = detail::insert_zero_bits(k, fixed);
            for (std::size_t l = 0; l < dim; ++l) {
                in[l] = amplitudes_[base | offsets[l]];
            }
            for (std::size_t r = 0; r < dim; ++r) {
                Complex acc{0.0};
                for (std::size_t c = 0; c < dim; ++c) {
                    acc += g.matrix(r, c) * in[c];
                }
                amplitudes_[base | offsets[r]] = acc;
            }
        }
    }

    std::size_t num_qubits_{0};
    std::vector<Complex> amplitudes_;
};

inline auto new_zero_state(std::size_t num_qubits,
                           std::size_t max_qubits = Statevector::kDefaultMaxQubits)
    -> Statevector {
    return Statevector(num_qubits, max_qubits);
}

} // namespace qpoisson
