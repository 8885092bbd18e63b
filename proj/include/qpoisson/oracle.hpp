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
 * Classical ground truth for the d-dimensional Poisson problem.
 *
 * Operators are in the 1/h^2-scaled form: A_1 = M^2 tridiag(-1, 2, -1) and
 * A_d is the Kronecker sum of d copies of A_1. Grid vectors are ordered
 * row-major over the multi-index (i_1, ..., i_d), i_1 slowest, each
 * i_k in [1, M-1].
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dense.hpp"
#include "errors.hpp"
#include "reciprocal.hpp"

namespace qpoisson {

/// Largest (M-1)^d handled by the dense routines.
inline constexpr std::size_t kDenseGridLimit = 4096;

using MultiIndex = std::vector<std::size_t>;

struct PoissonProblem {
    std::size_t grid{4};      ///< M, points per dimension incl. boundary (power of two)
    std::size_t dimension{1}; ///< d
    std::vector<double> rhs;  ///< b, boundary terms already folded in
    double alpha{1.0};        ///< amplitude factor of the controlled rotation
    std::optional<std::size_t> register_bits; ///< RegB/RegA size override
    std::size_t resolution_shift{0};          ///< drop this many low eigenvalue bits
    std::uint64_t shots{0};
    std::uint64_t seed{0};
};

inline auto is_power_of_two(std::size_t v) -> bool { return std::has_single_bit(v); }

inline void require_grid(std::size_t M) {
    if (M < 2 || !is_power_of_two(M)) {
        throw DomainError("grid size M must be a power of two >= 2, got " + std::to_string(M));
    }
}

/// log2(M) for a validated power of two.
inline auto grid_bits(std::size_t M) -> std::size_t {
    require_grid(M);
    return static_cast<std::size_t>(std::countr_zero(M));
}

/// (M-1)^d, throwing if it overflows the limit.
inline auto interior_points(std::size_t M, std::size_t d, std::size_t limit = SIZE_MAX)
    -> std::size_t {
    require_grid(M);
    if (d < 1) {
        throw DomainError("dimension d must be >= 1");
    }
    std::size_t n = 1;
    for (std::size_t k = 0; k < d; ++k) {
        if (n > limit / (M - 1)) {
            throw DomainError("(M-1)^d = " + std::to_string(M - 1) + "^" + std::to_string(d) +
                              " exceeds the limit " + std::to_string(limit));
        }
        n *= M - 1;
    }
    return n;
}

inline void validate(const PoissonProblem &problem) {
    const std::size_t n = interior_points(problem.grid, problem.dimension);
    if (problem.rhs.size() != n) {
        throw DomainError("rhs has length " + std::to_string(problem.rhs.size()) +
                          ", expected (M-1)^d = " + std::to_string(n));
    }
    double norm = 0.0;
    for (double v : problem.rhs) {
        if (!std::isfinite(v)) {
            throw DomainError("rhs contains a non-finite entry");
        }
        norm += v * v;
    }
    if (norm <= 0.0) {
        throw DomainError("rhs must be nonzero");
    }
    if (!(problem.alpha > 0.0) || !std::isfinite(problem.alpha)) {
        throw DomainError("alpha must be positive and finite");
    }
}

inline auto normalized(std::vector<double> v) -> std::vector<double> {
    double s = 0.0;
    for (double x : v) {
        s += x * x;
    }
    const double inv = 1.0 / std::sqrt(s);
    for (double &x : v) {
        x *= inv;
    }
    return v;
}

/// Row-major position of a 1-based multi-index.
inline auto grid_offset(const MultiIndex &index, std::size_t M) -> std::size_t {
    std::size_t off = 0;
    for (auto i : index) {
        off = off * (M - 1) + (i - 1);
    }
    return off;
}

/// Inverse of grid_offset for dimension d.
inline auto grid_multi_index(std::size_t offset, std::size_t M, std::size_t d) -> MultiIndex {
    MultiIndex idx(d);
    for (std::size_t k = d; k-- > 0;) {
        idx[k] = offset % (M - 1) + 1;
        offset /= M - 1;
    }
    return idx;
}

/// M^2 * tridiag(-1, 2, -1) of size (M-1) x (M-1).
inline auto poisson_matrix_1d(std::size_t M) -> RealMatrix {
    require_grid(M);
    const std::size_t n = M - 1;
    const auto scale = static_cast<double>(M * M);
    RealMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = 2.0 * scale;
        if (i + 1 < n) {
            a(i, i + 1) = -scale;
            a(i + 1, i) = -scale;
        }
    }
    return a;
}

/// Kronecker sum sum_i I x ... x A_1 x ... x I with A_1 in slot i.
inline auto poisson_matrix_nd(std::size_t M, std::size_t d) -> RealMatrix {
    const std::size_t n = interior_points(M, d, kDenseGridLimit);
    const RealMatrix a1 = poisson_matrix_1d(M);
    const RealMatrix eye = RealMatrix::identity(M - 1);
    RealMatrix total(n, n);
    for (std::size_t slot = 0; slot < d; ++slot) {
        RealMatrix term = slot == 0 ? a1 : eye;
        for (std::size_t k = 1; k < d; ++k) {
            term = kron(term, k == slot ? a1 : eye);
        }
        total = total + term;
    }
    return total;
}

/// 4 M^2 sin^2(j pi / 2M).
inline auto eigenvalue_1d(std::size_t M, std::size_t j) -> double {
    require_grid(M);
    if (j < 1 || j > M - 1) {
        throw DomainError("eigen index j must lie in [1, M-1]");
    }
    const double s = std::sin(static_cast<double>(j) * std::numbers::pi / (2.0 * static_cast<double>(M)));
    return 4.0 * static_cast<double>(M * M) * s * s;
}

/// Component k (1-based) is sqrt(2/M) sin(j k pi / M).
inline auto eigenvector_1d(std::size_t M, std::size_t j) -> std::vector<double> {
    require_grid(M);
    if (j < 1 || j > M - 1) {
        throw DomainError("eigen index j must lie in [1, M-1]");
    }
    const double c = std::sqrt(2.0 / static_cast<double>(M));
    std::vector<double> v(M - 1);
    for (std::size_t k = 1; k < M; ++k) {
        v[k - 1] = c * std::sin(static_cast<double>(j * k) * std::numbers::pi / static_cast<double>(M));
    }
    return v;
}

/// Type-I discrete sine transform; symmetric and involutory.
inline auto dst_matrix(std::size_t M) -> RealMatrix {
    require_grid(M);
    RealMatrix s(M - 1, M - 1);
    for (std::size_t j = 1; j < M; ++j) {
        const auto col = eigenvector_1d(M, j);
        for (std::size_t k = 1; k < M; ++k) {
            s(j - 1, k - 1) = col[k - 1];
        }
    }
    return s;
}

/**
 * Analytic spectrum of A_d. Modes are listed in grid order of their
 * multi-index J; eigenvalue(J) = sum_k lambda_{J_k} and the eigenvector is
 * the tensor product of the 1-d sine modes.
 */
class EigenSystem {
  public:
    EigenSystem(std::size_t M, std::size_t d) : grid_(M), dimension_(d) {
        const std::size_t n = interior_points(M, d, kDenseGridLimit);
        std::vector<double> lam1(M - 1);
        for (std::size_t j = 1; j < M; ++j) {
            lam1[j - 1] = eigenvalue_1d(M, j);
        }
        eigenvalues_.resize(n);
        for (std::size_t off = 0; off < n; ++off) {
            double sum = 0.0;
            for (auto j : grid_multi_index(off, M, d)) {
                sum += lam1[j - 1];
            }
            eigenvalues_[off] = sum;
        }
    }

    [[nodiscard]] auto grid() const noexcept -> std::size_t { return grid_; }
    [[nodiscard]] auto dimension() const noexcept -> std::size_t { return dimension_; }
    [[nodiscard]] auto size() const noexcept -> std::size_t { return eigenvalues_.size(); }

    [[nodiscard]] auto mode(std::size_t offset) const -> MultiIndex {
        return grid_multi_index(offset, grid_, dimension_);
    }
    [[nodiscard]] auto eigenvalues() const noexcept -> const std::vector<double> & {
        return eigenvalues_;
    }
    [[nodiscard]] auto eigenvalue(const MultiIndex &mode) const -> double {
        return eigenvalues_.at(grid_offset(mode, grid_));
    }

    [[nodiscard]] auto eigenvector(const MultiIndex &mode) const -> std::vector<double> {
        std::vector<double> v{1.0};
        for (auto j : mode) {
            const auto e = eigenvector_1d(grid_, j);
            std::vector<double> next;
            next.reserve(v.size() * e.size());
            for (double a : v) {
                for (double b : e) {
                    next.push_back(a * b);
                }
            }
            v = std::move(next);
        }
        return v;
    }

    [[nodiscard]] auto sorted_eigenvalues() const -> std::vector<double> {
        auto s = eigenvalues_;
        std::sort(s.begin(), s.end());
        return s;
    }
    [[nodiscard]] auto min_eigenvalue() const -> double {
        return *std::min_element(eigenvalues_.begin(), eigenvalues_.end());
    }
    [[nodiscard]] auto max_eigenvalue() const -> double {
        return *std::max_element(eigenvalues_.begin(), eigenvalues_.end());
    }
    [[nodiscard]] auto kappa() const -> double { return max_eigenvalue() / min_eigenvalue(); }

  private:
    std::size_t grid_;
    std::size_t dimension_;
    std::vector<double> eigenvalues_;
};

inline auto eigen_nd(std::size_t M, std::size_t d) -> EigenSystem { return {M, d}; }

/// Overlaps b_J = <b_hat|u_J>, in the mode order of eigen_nd.
inline auto spectral_coefficients(const PoissonProblem &problem) -> std::vector<double> {
    validate(problem);
    const EigenSystem eig(problem.grid, problem.dimension);
    const auto b = normalized(problem.rhs);
    std::vector<double> coeffs(eig.size());
    for (std::size_t off = 0; off < eig.size(); ++off) {
        const auto u = eig.eigenvector(eig.mode(off));
        double dot = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            dot += u[i] * b[i];
        }
        coeffs[off] = dot;
    }
    return coeffs;
}

/// Solves A x = b by Gaussian elimination with partial pivoting.
inline auto lu_solve(RealMatrix a, std::vector<double> b) -> std::vector<double> {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) {
        throw DomainError("lu_solve: shape mismatch");
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) {
                pivot = r;
            }
        }
        if (a(pivot, col) == 0.0) {
            throw DomainError("lu_solve: singular matrix");
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(col, c), a(pivot, c));
            }
            std::swap(b[col], b[pivot]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(r, col) / a(col, col);
            if (f == 0.0) {
                continue;
            }
            for (std::size_t c = col; c < n; ++c) {
                a(r, c) -= f * a(col, c);
            }
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) {
            s -= a(i, c) * x[c];
        }
        x[i] = s / a(i, i);
    }
    return x;
}

struct ClassicalSolution {
    std::vector<double> normalized; ///< A^-1 b / ||A^-1 b||
    std::vector<double> raw;        ///< A^-1 b
    double kappa;
};

inline auto solve_classical(const PoissonProblem &problem) -> ClassicalSolution {
    validate(problem);
    const RealMatrix a = poisson_matrix_nd(problem.grid, problem.dimension);
    auto raw = lu_solve(a, problem.rhs);
    auto unit = normalized(raw);
    return {std::move(unit), std::move(raw), eigen_nd(problem.grid, problem.dimension).kappa()};
}

/**
 * How the success-probability sum treats the eigenvalue in each branch.
 *
 *  - Exact: sin^2(alpha / lambda_J) with the analytic eigenvalue.
 *  - Register: the eigenvalue register holds y with the phase-estimation
 *    probability K(lambda_J, y), and the rotation amplitude is the one the
 *    circuit builds, sin(alpha 2^-s x1(y)).
 *  - RegisterIdeal: as Register, with amplitude min(1, alpha / (y 2^s)).
 */
enum class EigenApprox { Exact, Register, RegisterIdeal };

/**
 * Probability that a phase-estimation register of `bits` qubits reads `y`
 * for an eigenvalue `lambda`, when the register unit is 2^shift eigenvalue
 * units: |(1/N) sum_x e^{2 pi i x (lambda/2^shift - y) / N}|^2, N = 2^bits.
 */
inline auto pea_outcome_probability(double lambda, std::uint64_t y, std::size_t bits,
                                    std::size_t shift = 0) -> double {
    const double n = std::ldexp(1.0, static_cast<int>(bits));
    const double delta = std::ldexp(lambda, -static_cast<int>(shift)) - static_cast<double>(y);
    const double den = std::sin(std::numbers::pi * delta / n);
    if (std::abs(den) < 1e-12) {
        return 1.0;
    }
    const double num = std::sin(std::numbers::pi * delta);
    return (num * num) / (n * n * den * den);
}

/// Rotated amplitude on the |1> ancilla branch for register value y.
inline auto register_rotation_amplitude(std::uint64_t y, double alpha, std::size_t shift,
                                        EigenApprox mode) -> double {
    const double scaled_alpha = std::ldexp(alpha, -static_cast<int>(shift));
    if (mode == EigenApprox::RegisterIdeal) {
        return y == 0 ? 0.0 : std::min(1.0, scaled_alpha / static_cast<double>(y));
    }
    const auto p = x0_exponent(y);
    return p ? std::sin(scaled_alpha * newton_x1(y, *p)) : 0.0;
}

/**
 * Sum_J b_J^2 sin^2(alpha / ~lambda_J).
 *
 * `bits` and `shift` describe the eigenvalue register and are ignored in
 * Exact mode.
 */
inline auto expected_success_probability(const PoissonProblem &problem, EigenApprox mode,
                                         std::size_t bits = 0, std::size_t shift = 0)
    -> double {
    const auto coeffs = spectral_coefficients(problem);
    const EigenSystem eig(problem.grid, problem.dimension);
    if (mode == EigenApprox::Exact) {
        double omega = 0.0;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            const double s = std::sin(problem.alpha / eig.eigenvalues()[i]);
            omega += coeffs[i] * coeffs[i] * s * s;
        }
        return omega;
    }
    if (bits == 0 || bits > 30) {
        throw DomainError("register-rounded success probability needs 1..30 register bits");
    }
    const std::uint64_t levels = std::uint64_t{1} << bits;
    std::vector<double> amp2(levels);
    for (std::uint64_t y = 0; y < levels; ++y) {
        const double a = register_rotation_amplitude(y, problem.alpha, shift, mode);
        amp2[y] = a * a;
    }
    double omega = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        double branch = 0.0;
        for (std::uint64_t y = 0; y < levels; ++y) {
            branch += pea_outcome_probability(eig.eigenvalues()[i], y, bits, shift) * amp2[y];
        }
        omega += coeffs[i] * coeffs[i] * branch;
    }
    return omega;
}

} // namespace qpoisson
