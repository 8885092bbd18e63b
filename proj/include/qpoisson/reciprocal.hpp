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
 * Classical semantics of the register-level reciprocal.
 *
 * The seed x0 = 2^-p is the power of two nearest to 1/k, found by scanning
 * k from its most significant bit: p is the MSB position q, bumped to q + 1
 * when the next lower bit is also set (a "11" prefix rounds off, so the tie
 * at k = 1.5 * 2^q goes up). One Newton step then gives
 * x1 = 2^(1-p) - k * 2^(-2p), with 1 - k*x1 = (1 - k*x0)^2.
 */

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>

namespace qpoisson {

/// Exponent p of the seed reciprocal 2^-p; empty for k < 2.
constexpr auto x0_exponent(std::uint64_t k) -> std::optional<unsigned> {
    if (k < 2) {
        return std::nullopt;
    }
    const auto msb = static_cast<unsigned>(std::bit_width(k) - 1);
    const bool next_set = ((k >> (msb - 1)) & 1U) != 0;
    return next_set ? msb + 1 : msb;
}

/// One Newton-Raphson division step from x0 = 2^-p.
inline auto newton_x1(std::uint64_t k, unsigned p) -> double {
    return std::ldexp(1.0, 1 - static_cast<int>(p)) -
           static_cast<double>(k) * std::ldexp(1.0, -2 * static_cast<int>(p));
}

/// x1 for register value k, or 0 where no seed exists (k < 2).
inline auto circuit_reciprocal(std::uint64_t k) -> double {
    const auto p = x0_exponent(k);
    return p ? newton_x1(k, *p) : 0.0;
}

} // namespace qpoisson
