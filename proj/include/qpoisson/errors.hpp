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
 * Exception types thrown by the library. Every error derives from
 * qpoisson::Error so callers can catch the whole family at once.
 */

#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qpoisson {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Requested qubit count exceeds the configured cap (or is zero).
class CapacityError : public Error {
  public:
    CapacityError(std::size_t requested, std::size_t cap)
        : Error("capacity error: " + std::to_string(requested) +
                " qubits requested, cap is " + std::to_string(cap)),
          requested_(requested), cap_(cap) {}

    [[nodiscard]] auto requested() const noexcept -> std::size_t {
        return requested_;
    }
    [[nodiscard]] auto cap() const noexcept -> std::size_t { return cap_; }

  private:
    std::size_t requested_;
    std::size_t cap_;
};

/// A gate references bad qubits or carries a non-unitary matrix.
class InvalidGateError : public Error {
  public:
    using Error::Error;
};

/// Measurement or projection onto a branch with (near) zero probability.
class DegenerateBranchError : public Error {
  public:
    using Error::Error;
};

/// Subset dump requested across a cut the state is entangled over.
class EntangledCutError : public Error {
  public:
    using Error::Error;
};

/// Register-C basis state with an all-zero spatial block.
class InvalidEncodingError : public Error {
  public:
    using Error::Error;
};

/// Bad problem parameters (M not a power of two, rhs length, alpha, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Post-selection on the rotation ancilla failed (probability below floor).
class NoSuccessError : public Error {
  public:
    explicit NoSuccessError(double probability)
        : Error("post-selection failed: success probability " + format(probability)),
          probability_(probability) {}

    [[nodiscard]] auto probability() const noexcept -> double {
        return probability_;
    }

  private:
    static auto format(double v) -> std::string {
        std::ostringstream os;
        os << v;
        return os.str();
    }

    double probability_;
};

} // namespace qpoisson
