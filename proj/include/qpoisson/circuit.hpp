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

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gates.hpp"

namespace qpoisson {

/// Ordered list of gate operations with exact inversion.
class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(std::string label) : label_(std::move(label)) {}

    auto push(GateOp op) -> Circuit & {
        ops_.push_back(std::move(op));
        return *this;
    }

    auto append(const Circuit &other) -> Circuit & {
        ops_.insert(ops_.end(), other.ops_.begin(), other.ops_.end());
        return *this;
    }

    /// Reversed order, each op replaced by its adjoint.
    [[nodiscard]] auto inverse() const -> Circuit {
        Circuit out(label_ + "^-1");
        out.ops_.reserve(ops_.size());
        for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
            out.ops_.push_back(qpoisson::inverse(*it));
        }
        return out;
    }

    [[nodiscard]] auto ops() const noexcept -> const std::vector<GateOp> & {
        return ops_;
    }
    [[nodiscard]] auto size() const noexcept -> std::size_t { return ops_.size(); }
    [[nodiscard]] auto empty() const noexcept -> bool { return ops_.empty(); }
    [[nodiscard]] auto label() const noexcept -> const std::string & { return label_; }

    [[nodiscard]] auto begin() const { return ops_.begin(); }
    [[nodiscard]] auto end() const { return ops_.end(); }

  private:
    std::string label_;
    std::vector<GateOp> ops_;
};

/// Number of ops in `circuit` holding alternative G.
template <class G> auto count_ops(const Circuit &circuit) -> std::size_t {
    std::size_t n = 0;
    for (const auto &op : circuit) {
        n += std::holds_alternative<G>(op) ? 1 : 0;
    }
    return n;
}

} // namespace qpoisson
