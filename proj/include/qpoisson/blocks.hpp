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
 * Circuit constructors for phase estimation of the Poisson operator.
 *
 * U = exp(i t A_1) is simulated through its sine-transform diagonalization,
 * U^(2^k) = S exp(i t 2^k Lambda) S, where the diagonal part is M - 1
 * single-basis phase gates whose angles are precomputed classically. The
 * power 2^k only changes the angles, so every U^(2^k) has the same gate
 * count. The time unit t = 2 pi / 2^n makes the eigenvalue register read
 * lambda directly as an integer.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "circuit.hpp"
#include "gates.hpp"
#include "layout.hpp"
#include "oracle.hpp"

namespace qpoisson {

/**
 * QFT on `qubits` (little-endian), F[j][k] = e^{2 pi i j k / N} / sqrt(N).
 * Hadamards and controlled phases from the most significant qubit down,
 * followed by explicit swap gates (three CNOTs each) that reverse the order.
 */
inline auto qft_circuit(const std::vector<std::size_t> &qubits) -> Circuit {
    Circuit c("qft");
    const std::size_t n = qubits.size();
    for (std::size_t j = n; j-- > 0;) {
        c.push(SingleQubitOp{qubits[j], gates::hadamard()});
        for (std::size_t l = j; l-- > 0;) {
            const double angle = 2.0 * std::numbers::pi / std::ldexp(1.0, static_cast<int>(j - l + 1));
            c.push(ControlledOp{{{qubits[l], true}}, qubits[j], gates::phase(angle)});
        }
    }
    for (std::size_t i = 0; i < n / 2; ++i) {
        const std::size_t a = qubits[i];
        const std::size_t b = qubits[n - 1 - i];
        c.push(ControlledOp{{{a, true}}, b, gates::pauli_x()});
        c.push(ControlledOp{{{b, true}}, a, gates::pauli_x()});
        c.push(ControlledOp{{{a, true}}, b, gates::pauli_x()});
    }
    return c;
}

inline auto inverse_qft_circuit(const std::vector<std::size_t> &qubits) -> Circuit {
    return qft_circuit(qubits).inverse();
}

/// 1 (+) S on a log2(M)-qubit block: |0> is fixed, |1..M-1> transform by the DST.
inline auto dst_block_op(std::size_t M, const std::vector<std::size_t> &block) -> GateOp {
    if (block.size() != grid_bits(M)) {
        throw DomainError("DST block needs log2(M) qubits");
    }
    const RealMatrix s = dst_matrix(M);
    ComplexMatrix u(M, M);
    u(0, 0) = 1.0;
    for (std::size_t j = 1; j < M; ++j) {
        for (std::size_t k = 1; k < M; ++k) {
            u(j, k) = s(j - 1, k - 1);
        }
    }
    return BlockOp{block, std::move(u)};
}

/// Angles lambda_j * t_unit * 2^k for one grid size and register.
struct PhaseSchedule {
    double t_unit;                           ///< 2 pi / 2^n radians per eigenvalue unit
    std::vector<std::vector<double>> phases; ///< phases[k][j-1]

    PhaseSchedule(std::size_t M, std::size_t register_bits, std::size_t powers)
        : t_unit(2.0 * std::numbers::pi / std::ldexp(1.0, static_cast<int>(register_bits))) {
        phases.resize(powers);
        for (std::size_t k = 0; k < powers; ++k) {
            phases[k].resize(M - 1);
            for (std::size_t j = 1; j < M; ++j) {
                const double angle = eigenvalue_1d(M, j) * t_unit * std::ldexp(1.0, static_cast<int>(k));
                phases[k][j - 1] = std::remainder(angle, 2.0 * std::numbers::pi);
            }
        }
    }
};

/**
 * U^(2^k) = S exp(i t_unit 2^k Lambda) S on one spatial block. With a
 * control qubit only the diagonal part is controlled; S S = I makes the
 * whole block the identity when the control reads 0.
 */
inline auto hamiltonian_sim_1d(std::size_t M, std::size_t power,
                               const std::vector<std::size_t> &block,
                               std::size_t register_bits,
                               std::optional<std::size_t> control = std::nullopt) -> Circuit {
    Circuit c("hamiltonian_sim_1d");
    const PhaseSchedule schedule(M, register_bits, power + 1);
    const GateOp dst = dst_block_op(M, block);
    c.push(dst);
    std::vector<std::size_t> qubits = block;
    std::uint64_t control_bit = 0;
    if (control) {
        control_bit = std::uint64_t{1} << block.size();
        qubits.push_back(*control);
    }
    for (std::size_t j = 1; j < M; ++j) {
        c.push(SelectivePhaseOp{qubits, j | control_bit, schedule.phases[power][j - 1]});
    }
    c.push(dst);
    return c;
}

/// One hamiltonian_sim_1d per spatial block, blocks in order 1..d.
inline auto hamiltonian_sim_nd(const RegisterLayout &layout, std::size_t power,
                               std::optional<std::size_t> control = std::nullopt) -> Circuit {
    Circuit c("hamiltonian_sim_nd");
    for (std::size_t k = 0; k < layout.dimension; ++k) {
        c.append(hamiltonian_sim_1d(layout.grid, power, layout.block(k), layout.register_bits,
                                    control));
    }
    return c;
}

/**
 * Phase estimation of exp(i t_unit A_d) into register B: Hadamards on B,
 * controlled U^(2^k) from B qubit k, then the inverse QFT. Eigenvector
 * u_J of A_d ends up entangled with |~lambda_J / 2^shift> in B.
 */
inline auto pea_circuit(const RegisterLayout &layout) -> Circuit {
    Circuit c("pea");
    for (auto q : layout.reg_b) {
        c.push(SingleQubitOp{q, gates::hadamard()});
    }
    for (std::size_t k = 0; k < layout.reg_b.size(); ++k) {
        c.append(hamiltonian_sim_nd(layout, k, layout.reg_b[k]));
    }
    c.append(inverse_qft_circuit(layout.reg_b));
    return c;
}

} // namespace qpoisson
