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
 * Gate operations understood by the statevector simulator.
 *
 * Four kinds exist: a 2x2 unitary on one qubit, the same with a list of
 * (qubit, polarity) controls, a phase on a single basis pattern of a qubit
 * subset, and a dense block unitary on up to kMaxBlockQubits qubits.
 *
 * Qubit ordering is little-endian within any qubit list: element i of the
 * list carries bit i of the local basis index.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "dense.hpp"
#include "errors.hpp"

namespace qpoisson {

/// Row-major 2x2 complex matrix {m00, m01, m10, m11}.
using Mat2 = std::array<Complex, 4>;

inline constexpr std::size_t kMaxBlockQubits = 12;
inline constexpr double kUnitaryTolerance = 1e-10;

namespace gates {

inline auto hadamard() -> Mat2 {
    const double s = 1.0 / std::numbers::sqrt2;
    return {Complex{s}, Complex{s}, Complex{s}, Complex{-s}};
}

inline auto pauli_x() -> Mat2 {
    return {Complex{0.0}, Complex{1.0}, Complex{1.0}, Complex{0.0}};
}

/// diag(1, e^{i angle}).
inline auto phase(double angle) -> Mat2 {
    return {Complex{1.0}, Complex{0.0}, Complex{0.0}, std::polar(1.0, angle)};
}

/**
 * Real rotation with the angle entering the matrix directly:
 * [[cos a, -sin a], [sin a, cos a]]. Applied to |0> it yields
 * cos(a)|0> + sin(a)|1>, and rotations on one qubit add their angles.
 */
inline auto ry(double angle) -> Mat2 {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {Complex{c}, Complex{-s}, Complex{s}, Complex{c}};
}

inline auto adjoint(const Mat2 &m) -> Mat2 {
    return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

inline auto unitarity_defect(const Mat2 &m) -> double {
    // U^dagger U entries
    const Complex a = std::conj(m[0]) * m[0] + std::conj(m[2]) * m[2];
    const Complex b = std::conj(m[0]) * m[1] + std::conj(m[2]) * m[3];
    const Complex d = std::conj(m[1]) * m[1] + std::conj(m[3]) * m[3];
    return std::max({std::abs(a - 1.0), std::abs(b), std::abs(d - 1.0)});
}

} // namespace gates

struct Control {
    std::size_t qubit;
    bool polarity{true}; ///< fires when the qubit reads this value

    auto operator==(const Control &) const -> bool = default;
};

struct SingleQubitOp {
    std::size_t target;
    Mat2 matrix;
};

struct ControlledOp {
    std::vector<Control> controls;
    std::size_t target;
    Mat2 matrix;
};

/// Multiplies amplitudes whose `qubits` read `basis_index` by e^{i angle}.
struct SelectivePhaseOp {
    std::vector<std::size_t> qubits;
    std::uint64_t basis_index;
    double angle;
};

struct BlockOp {
    std::vector<std::size_t> qubits;
    ComplexMatrix matrix;
};

using GateOp = std::variant<SingleQubitOp, ControlledOp, SelectivePhaseOp, BlockOp>;

/// Every qubit index an op touches, targets and controls alike.
inline auto qubits_of(const GateOp &op) -> std::vector<std::size_t> {
    return std::visit(
        [](const auto &g) -> std::vector<std::size_t> {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, SingleQubitOp>) {
                return {g.target};
            } else if constexpr (std::is_same_v<G, ControlledOp>) {
                std::vector<std::size_t> out;
                out.reserve(g.controls.size() + 1);
                for (const auto &c : g.controls) {
                    out.push_back(c.qubit);
                }
                out.push_back(g.target);
                return out;
            } else {
                return g.qubits;
            }
        },
        op);
}

/// Conjugate-transposed op: adjoint matrices, negated phases.
inline auto inverse(const GateOp &op) -> GateOp {
    return std::visit(
        [](const auto &g) -> GateOp {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, SingleQubitOp>) {
                return SingleQubitOp{g.target, gates::adjoint(g.matrix)};
            } else if constexpr (std::is_same_v<G, ControlledOp>) {
                return ControlledOp{g.controls, g.target, gates::adjoint(g.matrix)};
            } else if constexpr (std::is_same_v<G, SelectivePhaseOp>) {
                return SelectivePhaseOp{g.qubits, g.basis_index, -g.angle};
            } else {
                return BlockOp{g.qubits, adjoint(g.matrix)};
            }
        },
        op);
}

/// Throws InvalidGateError unless `op` is well formed on `num_qubits` qubits.
inline void validate(const GateOp &op, std::size_t num_qubits) {
    auto qubits = qubits_of(op);
    for (auto q : qubits) {
        if (q >= num_qubits) {
            throw InvalidGateError("qubit index " + std::to_string(q) +
                                   " out of range for " + std::to_string(num_qubits) +
                                   " qubits");
        }
    }
    std::sort(qubits.begin(), qubits.end());
    if (std::adjacent_find(qubits.begin(), qubits.end()) != qubits.end()) {
        throw InvalidGateError("gate references a qubit twice");
    }

    std::visit(
        [](const auto &g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, SingleQubitOp> ||
                          std::is_same_v<G, ControlledOp>) {
                if (gates::unitarity_defect(g.matrix) > kUnitaryTolerance) {
                    throw InvalidGateError("2x2 gate matrix is not unitary");
                }
            } else if constexpr (std::is_same_v<G, SelectivePhaseOp>) {
                if (g.qubits.empty() || g.qubits.size() >= 64 ||
                    (g.basis_index >> g.qubits.size()) != 0) {
                    throw InvalidGateError("selective phase basis index out of range");
                }
                if (!std::isfinite(g.angle)) {
                    throw InvalidGateError("selective phase angle is not finite");
                }
            } else {
                const std::size_t k = g.qubits.size();
                if (k == 0 || k > kMaxBlockQubits) {
                    throw InvalidGateError("block unitary must act on 1.." +
                                           std::to_string(kMaxBlockQubits) + " qubits");
                }
                const std::size_t dim = std::size_t{1} << k;
                if (g.matrix.rows() != dim || g.matrix.cols() != dim) {
                    throw InvalidGateError("block matrix dimension does not match qubits");
                }
                if (unitarity_defect(g.matrix) > kUnitaryTolerance) {
                    throw InvalidGateError("block matrix is not unitary");
                }
            }
        },
        op);
}

} // namespace qpoisson
