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
 * Small row-major dense matrix used for block unitaries and the classical
 * Poisson operators. Intended for desk-scale sizes only.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace qpoisson {

using Complex = std::complex<double>;

template <class T> class Matrix {
  public:
    using value_type = T;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) {
            throw std::invalid_argument("Matrix: data size mismatch");
        }
    }

    static auto identity(std::size_t n) -> Matrix {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = T{1};
        }
        return m;
    }

    [[nodiscard]] auto rows() const noexcept -> std::size_t { return rows_; }
    [[nodiscard]] auto cols() const noexcept -> std::size_t { return cols_; }
    [[nodiscard]] auto data() const noexcept -> const std::vector<T> & {
        return data_;
    }

    auto operator()(std::size_t r, std::size_t c) -> T & {
        return data_[r * cols_ + c];
    }
    auto operator()(std::size_t r, std::size_t c) const -> const T & {
        return data_[r * cols_ + c];
    }

    auto operator==(const Matrix &) const -> bool = default;

  private:
    std::size_t rows_{0};
    std::size_t cols_{0};
    std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;

template <class T>
auto operator*(const Matrix<T> &a, const Matrix<T> &b) -> Matrix<T> {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("Matrix product: shape mismatch");
    }
    Matrix<T> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T aik = a(i, k);
            if (aik == T{}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

template <class T>
auto operator+(const Matrix<T> &a, const Matrix<T> &b) -> Matrix<T> {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("Matrix sum: shape mismatch");
    }
    Matrix<T> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = a(i, j) + b(i, j);
        }
    }
    return out;
}

template <class T>
auto operator*(const Matrix<T> &a, const std::vector<T> &x) -> std::vector<T> {
    if (a.cols() != x.size()) {
        throw std::invalid_argument("Matrix-vector product: shape mismatch");
    }
    std::vector<T> y(a.rows(), T{});
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            y[i] += a(i, j) * x[j];
        }
    }
    return y;
}

/// Conjugate transpose (plain transpose for real matrices).
template <class T> auto adjoint(const Matrix<T> &a) -> Matrix<T> {
    Matrix<T> out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if constexpr (std::is_same_v<T, Complex>) {
                out(j, i) = std::conj(a(i, j));
            } else {
                out(j, i) = a(i, j);
            }
        }
    }
    return out;
}

template <class T> auto kron(const Matrix<T> &a, const Matrix<T> &b) -> Matrix<T> {
    Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

/// Largest entrywise |a - b|.
template <class T>
auto max_abs_diff(const Matrix<T> &a, const Matrix<T> &b) -> double {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        worst = std::max(worst, static_cast<double>(std::abs(a.data()[i] - b.data()[i])));
    }
    return worst;
}

/// ||U^dagger U - I||_max.
template <class T> auto unitarity_defect(const Matrix<T> &u) -> double {
    if (u.rows() != u.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return max_abs_diff(adjoint(u) * u, Matrix<T>::identity(u.rows()));
}

} // namespace qpoisson
