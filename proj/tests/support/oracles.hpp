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
 * Test-only reference computations built on Eigen. Nothing in here calls
 * the library's numerical routines except where a circuit has to be run
 * to read off its matrix.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "qpoisson/circuit.hpp"
#include "qpoisson/statevector.hpp"

namespace qpoisson::testing {

/// M^2 tridiag(-1, 2, -1), written out independently of the library.
inline auto reference_poisson_1d(std::size_t M) -> Eigen::MatrixXd {
    const auto n = static_cast<Eigen::Index>(M - 1);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        a(i, i) = 2.0;
        if (i + 1 < n) {
            a(i, i + 1) = -1.0;
            a(i + 1, i) = -1.0;
        }
    }
    return a * static_cast<double>(M * M);
}

inline auto eigen_kron(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b) -> Eigen::MatrixXd {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Kronecker sum built by brute-force Kronecker products.
inline auto reference_poisson_nd(std::size_t M, std::size_t d) -> Eigen::MatrixXd {
    const Eigen::MatrixXd a1 = reference_poisson_1d(M);
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(a1.rows(), a1.cols());
    Eigen::MatrixXd total;
    for (std::size_t slot = 0; slot < d; ++slot) {
        Eigen::MatrixXd term = slot == 0 ? a1 : eye;
        for (std::size_t k = 1; k < d; ++k) {
            term = eigen_kron(term, k == slot ? a1 : eye);
        }
        total = slot == 0 ? term : Eigen::MatrixXd(total + term);
    }
    return total;
}

inline auto to_eigen(const RealMatrix &m) -> Eigen::MatrixXd {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
        }
    }
    return out;
}

/// Dense matrix of a circuit on `num_qubits`, column c = circuit |c>.
inline auto circuit_matrix(const Circuit &circuit, std::size_t num_qubits) -> Eigen::MatrixXcd {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
    Eigen::MatrixXcd out(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        std::vector<Complex> amps(static_cast<std::size_t>(dim), Complex{0.0});
        amps[static_cast<std::size_t>(c)] = 1.0;
        auto sv = Statevector::from_amplitudes(std::move(amps));
        sv.apply(circuit);
        for (Eigen::Index r = 0; r < dim; ++r) {
            out(r, c) = sv.amplitudes()[static_cast<std::size_t>(r)];
        }
    }
    return out;
}

inline auto random_amplitudes(std::size_t num_qubits, std::mt19937_64 &gen) -> std::vector<Complex> {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Complex> amps(std::size_t{1} << num_qubits);
    double norm = 0.0;
    for (auto &a : amps) {
        a = Complex{normal(gen), normal(gen)};
        norm += std::norm(a);
    }
    for (auto &a : amps) {
        a /= std::sqrt(norm);
    }
    return amps;
}

inline auto random_unitary_2x2(std::mt19937_64 &gen) -> Mat2 {
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    const double theta = u(gen) / 2.0;
    const double a = u(gen);
    const double b = u(gen);
    const double g = u(gen);
    const Complex ea = std::polar(1.0, a);
    const Complex eb = std::polar(1.0, b);
    const Complex eg = std::polar(1.0, g);
    return {ea * std::cos(theta), -eb * std::sin(theta), eg * std::conj(eb) * std::sin(theta),
            eg * std::conj(ea) * std::cos(theta)};
}

/// Random mix of every gate kind on `num_qubits` (>= 3) qubits.
inline auto random_circuit(std::size_t num_qubits, std::size_t gates_count, std::uint64_t seed)
    -> Circuit {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    auto pick_distinct = [&](std::size_t count) {
        std::vector<std::size_t> all(num_qubits);
        for (std::size_t i = 0; i < num_qubits; ++i) {
            all[i] = i;
        }
        std::shuffle(all.begin(), all.end(), gen);
        all.resize(count);
        return all;
    };
    Circuit c("random");
    for (std::size_t g = 0; g < gates_count; ++g) {
        switch (kind(gen)) {
        case 0:
            c.push(SingleQubitOp{pick_distinct(1)[0], random_unitary_2x2(gen)});
            break;
        case 1: {
            auto q = pick_distinct(3);
            c.push(ControlledOp{{{q[0], true}, {q[1], (gen() & 1U) != 0}}, q[2], random_unitary_2x2(gen)});
            break;
        }
        case 2: {
            auto q = pick_distinct(2);
            c.push(SelectivePhaseOp{q, gen() % 4, angle(gen)});
            break;
        }
        default: {
            auto q = pick_distinct(2);
            // 4x4 unitary from the QR factor of a random complex matrix
            Eigen::MatrixXcd z(4, 4);
            std::normal_distribution<double> normal(0.0, 1.0);
            for (int i = 0; i < 16; ++i) {
                z(i / 4, i % 4) = Complex{normal(gen), normal(gen)};
            }
            Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
            Eigen::MatrixXcd qm = qr.householderQ();
            ComplexMatrix m(4, 4);
            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) {
                    m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = qm(i, j);
                }
            }
            c.push(BlockOp{q, m});
        }
        }
    }
    return c;
}

} // namespace qpoisson::testing
