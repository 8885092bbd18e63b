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
 * Seeded random source used for every sampling operation.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the C++
 * standard. Uniform doubles are produced by hand as (x >> 11) * 2^-53 rather
 * than through std::uniform_real_distribution, whose algorithm is
 * implementation-defined. Together this makes histograms bit-reproducible
 * across compilers and platforms for a given seed.
 */

#pragma once

#include <cstdint>
#include <random>

namespace qpoisson {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    auto uniform() -> double {
        return static_cast<double>(engine_() >> 11U) * 0x1.0p-53;
    }

    auto next_u64() -> std::uint64_t { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

} // namespace qpoisson
