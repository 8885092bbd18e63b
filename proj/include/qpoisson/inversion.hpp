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
 * Reciprocal (INV) and controlled-rotation (ROT) circuits.
 *
 * Register A holds the seed exponent p one-hot: bit p-1 set means
 * x0 = 2^-p. Registers A and B together then describe x1 as a tiny
 * floating-point number, so the rotation can apply alpha * x1 as a sum of
 * fixed angles without any arithmetic circuit:
 *
 *   alpha x1 = alpha 2^(1-p) - sum_m b_m alpha 2^(m-2p)
 *
 * where b_m are the bits of the eigenvalue register.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "circuit.hpp"
#include "gates.hpp"
#include "layout.hpp"
#include "reciprocal.hpp"

namespace qpoisson {

/**
 * |0>_A |k>_B -> |onehot(p(k))>_A |k>_B, identity for k < 2.
 *
 * Scans B from its top qubit: for each MSB position q there are two
 * multi-controlled X gates (bits above q clear, bit q set, bit q-1 either
 * value) targeting the A bit chosen by x0_exponent. On general A inputs the
 * map is |a>|k> -> |a xor onehot(p(k))>|k>, a permutation and self-inverse.
 */
inline auto inv_circuit(const RegisterLayout &layout) -> Circuit {
    Circuit c("inv");
    const auto &b = layout.reg_b;
    const std::size_t n = b.size();
    for (std::size_t q = n; q-- > 1;) {
        for (int next = 1; next >= 0; --next) {
            const std::uint64_t representative =
                (std::uint64_t{1} << q) | (static_cast<std::uint64_t>(next) << (q - 1));
            const unsigned p = *x0_exponent(representative);
            std::vector<Control> controls;
            for (std::size_t above = q + 1; above < n; ++above) {
                controls.push_back({b[above], false});
            }
            controls.push_back({b[q], true});
            controls.push_back({b[q - 1], next == 1});
            c.push(ControlledOp{std::move(controls), layout.reg_a[p - 1], gates::pauli_x()});
        }
    }
    return c;
}

/**
 * Rotates the ancilla to cos(theta)|0> + sin(theta)|1>, theta = alpha' x1(k),
 * alpha' = alpha 2^-shift, on every |k>_B |onehot(p)>_A. Exactly n + n^2
 * controlled rotations: n gates of +alpha' 2^(1-p) controlled on A bit p-1,
 * and for every (A bit p-1, B bit m) a gate of -alpha' 2^(m-2p).
 */
inline auto rot_circuit(const RegisterLayout &layout, double alpha) -> Circuit {
    Circuit c("rot");
    const double scaled = std::ldexp(alpha, -static_cast<int>(layout.resolution_shift));
    const std::size_t n = layout.reg_a.size();
    for (std::size_t p = 1; p <= n; ++p) {
        const double angle = scaled * std::ldexp(1.0, 1 - static_cast<int>(p));
        c.push(ControlledOp{{{layout.reg_a[p - 1], true}}, layout.rot_ancilla, gates::ry(angle)});
    }
    for (std::size_t p = 1; p <= n; ++p) {
        for (std::size_t m = 0; m < layout.reg_b.size(); ++m) {
            const double angle =
                -scaled * std::ldexp(1.0, static_cast<int>(m) - 2 * static_cast<int>(p));
            c.push(ControlledOp{{{layout.reg_a[p - 1], true}, {layout.reg_b[m], true}},
                                layout.rot_ancilla,
                                gates::ry(angle)});
        }
    }
    return c;
}

/**
 * Reference rotation for the ideal-inversion mode: one rotation per
 * eigenvalue register value y >= 1, giving ancilla amplitude
 * min(1, alpha' / y) on |1>. Register A is not used.
 */
inline auto ideal_rotation_circuit(const RegisterLayout &layout, double alpha) -> Circuit {
    Circuit c("ideal_rotation");
    const double scaled = std::ldexp(alpha, -static_cast<int>(layout.resolution_shift));
    const std::uint64_t levels = std::uint64_t{1} << layout.reg_b.size();
    for (std::uint64_t y = 1; y < levels; ++y) {
        std::vector<Control> controls;
        controls.reserve(layout.reg_b.size());
        for (std::size_t m = 0; m < layout.reg_b.size(); ++m) {
            controls.push_back({layout.reg_b[m], ((y >> m) & 1U) != 0});
        }
        const double amplitude = std::min(1.0, scaled / static_cast<double>(y));
        c.push(ControlledOp{std::move(controls), layout.rot_ancilla,
                            gates::ry(std::asin(amplitude))});
    }
    return c;
}

} // namespace qpoisson
