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
 * End-to-end solver: encode b, phase estimation, reciprocal, rotation,
 * uncompute, post-select the ancilla, read register C.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blocks.hpp"
#include "errors.hpp"
#include "inversion.hpp"
#include "layout.hpp"
#include "oracle.hpp"
#include "statevector.hpp"

namespace qpoisson {

/// Ancilla branch probabilities below this count as failed post-selection.
inline constexpr double kMinSuccessProbability = 1e-12;

enum class PipelineMode {
    Full,           ///< INV + ROT + INV^-1 with the Newton reciprocal
    IdealInversion, ///< exact alpha / y rotation straight from register B
};

inline auto to_string(PipelineMode mode) -> std::string {
    return mode == PipelineMode::Full ? "full" : "ideal-inversion";
}

struct ResourceEstimate {
    std::size_t register_bits;     ///< n
    std::size_t paper_qubits;      ///< 7 + 2 ceil(log2 d) + (4 + d) log2 M
    std::size_t simulator_qubits;  ///< d log2 M + 2n + 1
    std::size_t rotation_gates;    ///< n + n^2
    std::size_t phase_gates;       ///< n d (M - 1) per phase estimation
};

/// Qubit and gate counts for the default register size of (M, d).
inline auto resource_estimate(std::size_t M, std::size_t d) -> ResourceEstimate {
    const std::size_t m = grid_bits(M);
    const std::size_t n = default_register_size(M, d);
    const auto log_d = static_cast<std::size_t>(std::bit_width(d - 1));
    return {
        .register_bits = n,
        .paper_qubits = 7 + 2 * log_d + (4 + d) * m,
        .simulator_qubits = d * m + 2 * n + 1,
        .rotation_gates = n + n * n,
        .phase_gates = n * d * (M - 1),
    };
}

/// Largest alpha keeping every rotation in the small-angle range: lambda_min / 2.
inline auto default_alpha(std::size_t M, std::size_t d) -> double {
    return static_cast<double>(d) * eigenvalue_1d(M, 1) / 2.0;
}

/// Zero state of the full layout with b / ||b|| written into register C.
inline auto encode_rhs(const PoissonProblem &problem, const RegisterLayout &layout,
                       std::size_t max_qubits = Statevector::kDefaultMaxQubits)
    -> Statevector {
    validate(problem);
    const std::size_t total = layout.total_qubits();
    if (total > max_qubits) {
        throw CapacityError(total, max_qubits);
    }
    std::vector<Complex> amps(std::size_t{1} << total, Complex{0.0});
    const auto b = normalized(problem.rhs);
    for (std::size_t off = 0; off < b.size(); ++off) {
        const auto index = grid_multi_index(off, problem.grid, problem.dimension);
        amps[layout.reg_c_offset(grid_to_basis_index(index, problem.grid, problem.dimension))] = b[off];
    }
    return Statevector::from_amplitudes(std::move(amps), max_qubits);
}

/// Probability mass of register-C values with an all-zero block.
inline auto invalid_encoding_mass(const Statevector &state, const RegisterLayout &layout)
    -> double {
    const auto probs = state.marginal_probabilities(layout.reg_c);
    double mass = 0.0;
    for (std::uint64_t v = 0; v < probs.size(); ++v) {
        if (!is_valid_reg_c_value(v, layout.grid, layout.dimension)) {
            mass += probs[v];
        }
    }
    return mass;
}

struct SolveReport {
    PoissonProblem problem; ///< resolved config, alpha and register size filled in
    PipelineMode mode{PipelineMode::Full};
    std::size_t register_bits{};
    std::size_t total_qubits{};

    std::vector<double> solution;  ///< grid order, largest entry real positive
    std::vector<double> reference; ///< classical A^-1 b, normalized
    double l2_error{};             ///< || |solution| - |reference| ||_2
    double linf_error{};           ///< max | |solution_i| - |reference_i| |
    double l2_error_signed{};      ///< || solution - s reference ||_2, s = +-1 best aligned
    double linf_error_signed{};
    double max_imag_residual{}; ///< largest |Im| left after the global-phase fix

    double success_probability{}; ///< ancilla |1> branch probability
    std::optional<double> success_probability_empirical;
    double expected_success_probability{}; ///< register-rounded closed form
    double uncompute_residual{};           ///< post-selected mass outside A = B = 0
    double invalid_mass{};                 ///< zero-block mass in register C

    double kappa{};
    double alpha_bound{};        ///< lambda_min / 2
    bool small_angle_violated{}; ///< alpha above alpha_bound

    std::map<std::string, Histogram> histograms;
    ResourceEstimate resources{};
};

namespace detail {

/// Sub-seed for the i-th random stream derived from one user seed.
inline auto derive_seed(std::uint64_t seed, std::uint64_t stream) -> std::uint64_t {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31U);
}

} // namespace detail

/**
 * Runs the solver and compares against the classical reference.
 *
 * After post-selecting the ancilla on |1>, registers A and B are projected
 * onto |0>: A returns there exactly, B only up to the phase-estimation
 * leakage of non-integer eigenvalues, whose weight is reported as
 * uncompute_residual. Register C is then a product factor and is dumped.
 */
inline auto run_pipeline(const PoissonProblem &problem, PipelineMode mode = PipelineMode::Full,
                         std::size_t max_qubits = Statevector::kDefaultMaxQubits)
    -> SolveReport {
    validate(problem);
    const RegisterLayout layout = make_layout(problem);

    SolveReport report;
    report.problem = problem;
    report.problem.register_bits = layout.register_bits;
    report.mode = mode;
    report.register_bits = layout.register_bits;
    report.total_qubits = layout.total_qubits();
    report.resources = resource_estimate(problem.grid, problem.dimension);

    const EigenSystem eig(problem.grid, problem.dimension);
    report.kappa = eig.kappa();
    report.alpha_bound = eig.min_eigenvalue() / 2.0;
    report.small_angle_violated = problem.alpha > report.alpha_bound;

    Statevector state = encode_rhs(problem, layout, max_qubits);

    const Circuit pea = pea_circuit(layout);
    state.apply(pea);
    if (mode == PipelineMode::Full) {
        const Circuit inv = inv_circuit(layout);
        state.apply(inv);
        state.apply(rot_circuit(layout, problem.alpha));
        state.apply_inverse(inv);
    } else {
        state.apply(ideal_rotation_circuit(layout, problem.alpha));
    }
    state.apply_inverse(pea);

    if (problem.shots > 0) {
        const std::vector<std::size_t> anc{layout.rot_ancilla};
        auto counts = state.sample_counts(anc, problem.shots, detail::derive_seed(problem.seed, 0));
        report.success_probability_empirical =
            static_cast<double>(counts[1]) / static_cast<double>(problem.shots);
        report.histograms["ancilla"] = std::move(counts);
    }

    report.success_probability = state.probability_of_one(layout.rot_ancilla);
    report.expected_success_probability = expected_success_probability(
        problem,
        mode == PipelineMode::Full ? EigenApprox::Register : EigenApprox::RegisterIdeal,
        layout.reg_b.size(), layout.resolution_shift);
    if (report.success_probability < kMinSuccessProbability) {
        throw NoSuccessError(report.success_probability);
    }
    state.project(layout.rot_ancilla, 1);

    std::vector<std::size_t> work = layout.reg_b;
    work.insert(work.end(), layout.reg_a.begin(), layout.reg_a.end());
    report.uncompute_residual = 1.0 - state.project_register(work, 0);
    report.invalid_mass = invalid_encoding_mass(state, layout);

    if (problem.shots > 0) {
        report.histograms["reg_c"] =
            state.sample_counts(layout.reg_c, problem.shots, detail::derive_seed(problem.seed, 1));
    }

    const auto factor = state.dump_amplitudes(layout.reg_c);
    const std::size_t points = eig.size();
    std::vector<Complex> raw(points);
    for (std::size_t off = 0; off < points; ++off) {
        const auto value = grid_to_basis_index(grid_multi_index(off, problem.grid, problem.dimension),
                                               problem.grid, problem.dimension);
        raw[off] = factor[value].second;
    }
    double norm = 0.0;
    std::size_t largest = 0;
    for (std::size_t i = 0; i < points; ++i) {
        norm += std::norm(raw[i]);
        if (std::abs(raw[i]) > std::abs(raw[largest])) {
            largest = i;
        }
    }
    const Complex phase_fix = std::conj(raw[largest]) / std::abs(raw[largest]) / std::sqrt(norm);
    report.solution.resize(points);
    for (std::size_t i = 0; i < points; ++i) {
        const Complex v = raw[i] * phase_fix;
        report.solution[i] = v.real();
        report.max_imag_residual = std::max(report.max_imag_residual, std::abs(v.imag()));
    }

    report.reference = solve_classical(problem).normalized;
    double dot = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        dot += report.solution[i] * report.reference[i];
    }
    const double sign = dot < 0.0 ? -1.0 : 1.0;
    double l2 = 0.0;
    double l2s = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        const double dm = std::abs(report.solution[i]) - std::abs(report.reference[i]);
        const double ds = report.solution[i] - sign * report.reference[i];
        l2 += dm * dm;
        l2s += ds * ds;
        report.linf_error = std::max(report.linf_error, std::abs(dm));
        report.linf_error_signed = std::max(report.linf_error_signed, std::abs(ds));
    }
    report.l2_error = std::sqrt(l2);
    report.l2_error_signed = std::sqrt(l2s);
    return report;
}

struct PeaHistogram {
    std::size_t register_qubits{}; ///< size of register B actually sampled
    Histogram counts;
    std::vector<double> probabilities; ///< exact marginal of register B
};

/// Encode + phase estimation, then `shots` samples of register B (none for 0).
inline auto pea_histogram(const PoissonProblem &problem, std::uint64_t shots,
                          std::size_t max_qubits = Statevector::kDefaultMaxQubits)
    -> PeaHistogram {
    validate(problem);
    const RegisterLayout layout = make_layout(problem);
    Statevector state = encode_rhs(problem, layout, max_qubits);
    state.apply(pea_circuit(layout));
    PeaHistogram out;
    out.register_qubits = layout.reg_b.size();
    out.probabilities = state.marginal_probabilities(layout.reg_b);
    if (shots > 0) {
        out.counts = state.sample_counts(layout.reg_b, shots, detail::derive_seed(problem.seed, 2));
    }
    return out;
}

struct CurvePoint {
    double alpha;
    double success_probability;
};

/// Ancilla branch probability of the full pipeline for each alpha.
inline auto success_probability_curve(const PoissonProblem &problem,
                                      const std::vector<double> &alphas,
                                      PipelineMode mode = PipelineMode::Full,
                                      std::size_t max_qubits = Statevector::kDefaultMaxQubits)
    -> std::vector<CurvePoint> {
    if (alphas.empty()) {
        throw DomainError("alpha list must not be empty");
    }
    std::vector<CurvePoint> curve;
    curve.reserve(alphas.size());
    for (double a : alphas) {
        PoissonProblem p = problem;
        p.alpha = a;
        p.shots = 0;
        double omega = 0.0;
        try {
            omega = run_pipeline(p, mode, max_qubits).success_probability;
        } catch (const NoSuccessError &e) {
            omega = e.probability();
        }
        curve.push_back({a, omega});
    }
    return curve;
}

} // namespace qpoisson
