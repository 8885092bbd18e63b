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
 * Qubit assignment for the solver registers and the register-C encoding.
 *
 * Register C holds d blocks of log2(M) qubits, one per spatial coordinate.
 * Block k stores the 1-based grid coordinate i_k; a block reading 0 is an
 * invalid state. Coordinates concatenate with i_1 most significant, so the
 * register value is sum_k i_k M^(d-k) (for M = 4, d = 2 the point (1, 1)
 * is basis state 5).
 *
 * Full-state qubit order: [ C | B | A | rotation ancilla ], little-endian
 * inside each register.
 */

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"
#include "oracle.hpp"

namespace qpoisson {

/// 2 + ceil(log2 d) + 2 log2 M: enough bits that 2^n >= 4 d M^2 >= lambda_max.
inline auto default_register_size(std::size_t M, std::size_t d) -> std::size_t {
    if (d < 1) {
        throw DomainError("dimension d must be >= 1");
    }
    const auto log_d = static_cast<std::size_t>(std::bit_width(d - 1));
    return 2 + log_d + 2 * grid_bits(M);
}

struct RegisterLayout {
    std::size_t grid{};             ///< M
    std::size_t dimension{};        ///< d
    std::size_t block_bits{};       ///< log2 M
    std::size_t register_bits{};    ///< nominal n; eigenvalue time unit is 2 pi / 2^n
    std::size_t resolution_shift{}; ///< RegB/RegA hold n - shift qubits
    std::vector<std::size_t> reg_c;
    std::vector<std::size_t> reg_b;
    std::vector<std::size_t> reg_a;
    std::size_t rot_ancilla{};

    [[nodiscard]] auto total_qubits() const -> std::size_t {
        return reg_c.size() + reg_b.size() + reg_a.size() + 1;
    }

    /// Qubits of spatial block k (0-based; block 0 carries i_1).
    [[nodiscard]] auto block(std::size_t k) const -> std::vector<std::size_t> {
        const std::size_t first = (dimension - 1 - k) * block_bits;
        return {reg_c.begin() + static_cast<std::ptrdiff_t>(first),
                reg_c.begin() + static_cast<std::ptrdiff_t>(first + block_bits)};
    }

    /// Full-state basis offset contributed by a register-C value.
    [[nodiscard]] auto reg_c_offset(std::uint64_t value) const -> std::uint64_t {
        return value << reg_c.front();
    }
};

inline auto make_layout(std::size_t M, std::size_t d, std::size_t register_bits,
                        std::size_t resolution_shift = 0) -> RegisterLayout {
    RegisterLayout layout;
    layout.grid = M;
    layout.dimension = d;
    layout.block_bits = grid_bits(M);
    if (d < 1) {
        throw DomainError("dimension d must be >= 1");
    }
    if (register_bits < 2 || resolution_shift >= register_bits - 1) {
        throw DomainError("register needs at least 2 qubits after the resolution shift");
    }
    layout.register_bits = register_bits;
    layout.resolution_shift = resolution_shift;
    const std::size_t nb = register_bits - resolution_shift;

    std::size_t next = 0;
    auto take = [&next](std::size_t count) {
        std::vector<std::size_t> q(count);
        std::iota(q.begin(), q.end(), next);
        next += count;
        return q;
    };
    layout.reg_c = take(d * layout.block_bits);
    layout.reg_b = take(nb);
    layout.reg_a = take(nb);
    layout.rot_ancilla = next;
    return layout;
}

inline auto make_layout(const PoissonProblem &problem) -> RegisterLayout {
    const std::size_t n = problem.register_bits.value_or(
        default_register_size(problem.grid, problem.dimension));
    return make_layout(problem.grid, problem.dimension, n, problem.resolution_shift);
}

/// Register-C value of the 1-based grid point `index`.
inline auto grid_to_basis_index(const MultiIndex &index, std::size_t M, std::size_t d)
    -> std::uint64_t {
    require_grid(M);
    if (index.size() != d) {
        throw DomainError("multi-index has " + std::to_string(index.size()) +
                          " components, expected " + std::to_string(d));
    }
    std::uint64_t value = 0;
    for (auto i : index) {
        if (i < 1 || i > M - 1) {
            throw DomainError("grid coordinate " + std::to_string(i) + " outside [1, M-1]");
        }
        value = value * M + i;
    }
    return value;
}

/// Inverse of grid_to_basis_index; throws InvalidEncodingError on a zero block.
inline auto basis_index_to_grid(std::uint64_t value, std::size_t M, std::size_t d)
    -> MultiIndex {
    const std::size_t m = grid_bits(M);
    if (m * d < 64 && (value >> (m * d)) != 0) {
        throw InvalidEncodingError("register-C value " + std::to_string(value) +
                                   " exceeds d log2(M) bits");
    }
    MultiIndex index(d);
    for (std::size_t k = d; k-- > 0;) {
        index[k] = value % M;
        value /= M;
        if (index[k] == 0) {
            throw InvalidEncodingError("register-C block " + std::to_string(k) +
                                       " is in the zero state");
        }
    }
    return index;
}

/// True when no block of the register-C value is zero.
inline auto is_valid_reg_c_value(std::uint64_t value, std::size_t M, std::size_t d) -> bool {
    for (std::size_t k = 0; k < d; ++k) {
        if (value % M == 0) {
            return false;
        }
        value /= M;
    }
    return value == 0;
}

} // namespace qpoisson
