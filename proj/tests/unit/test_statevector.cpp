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

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "qpoisson/statevector.hpp"
#include "support/oracles.hpp"

using namespace qpoisson;
using Catch::Approx;

namespace {

auto plus_state() -> Statevector {
    Statevector sv(1);
    sv.apply(SingleQubitOp{0, gates::hadamard()});
    return sv;
}

auto bell_state() -> Statevector {
    Statevector sv(2);
    sv.apply(SingleQubitOp{0, gates::hadamard()});
    sv.apply(ControlledOp{{{0, true}}, 1, gates::pauli_x()});
    return sv;
}

auto basis_state(std::size_t q, std::uint64_t index) -> Statevector {
    std::vector<Complex> amps(std::size_t{1} << q, Complex{0.0});
    amps[index] = 1.0;
    return Statevector::from_amplitudes(std::move(amps));
}

} // namespace

TEST_CASE("new_zero_state", "[statevector]") {
    SECTION("one qubit") {
        auto sv = new_zero_state(1);
        REQUIRE(sv.size() == 2);
        CHECK(sv.amplitude(0) == Complex{1.0});
        CHECK(sv.amplitude(1) == Complex{0.0});
    }
    SECTION("three qubits") {
        auto sv = new_zero_state(3);
        REQUIRE(sv.size() == 8);
        CHECK(sv.amplitude(0) == Complex{1.0});
        for (std::uint64_t i = 1; i < 8; ++i) {
            CHECK(sv.amplitude(i) == Complex{0.0});
        }
    }
    SECTION("capacity") {
        CHECK_THROWS_AS(new_zero_state(27, 26), CapacityError);
        CHECK_THROWS_AS(new_zero_state(0), CapacityError);
        CHECK_NOTHROW(new_zero_state(4, 4));
    }
    SECTION("from_amplitudes rejects bad input") {
        CHECK_THROWS_AS(Statevector::from_amplitudes({1.0, 0.0, 0.0}), InvalidGateError);
        CHECK_THROWS_AS(Statevector::from_amplitudes({1.0, 1.0}), InvalidGateError);
    }
}

TEST_CASE("apply single gates", "[statevector]") {
    SECTION("Hadamard on |0>") {
        auto sv = plus_state();
        CHECK(sv.amplitude(0).real() == Approx(1.0 / std::numbers::sqrt2).margin(1e-15));
        CHECK(sv.amplitude(1).real() == Approx(1.0 / std::numbers::sqrt2).margin(1e-15));
    }
    SECTION("selective phase flips one basis sign") {
        Statevector sv(2);
        sv.apply(SingleQubitOp{0, gates::hadamard()});
        sv.apply(SingleQubitOp{1, gates::hadamard()});
        sv.apply(SelectivePhaseOp{{0, 1}, 3, std::numbers::pi});
        const std::vector<double> expected{0.5, 0.5, 0.5, -0.5};
        for (std::uint64_t i = 0; i < 4; ++i) {
            CHECK(std::abs(sv.amplitude(i) - Complex{expected[i]}) < 1e-12);
        }
    }
    SECTION("controlled-X fires on |10>") {
        // qubit 1 (control) set, qubit 0 (target) clear
        auto sv = basis_state(2, 0b10);
        sv.apply(ControlledOp{{{1, true}}, 0, gates::pauli_x()});
        CHECK(std::abs(sv.amplitude(0b11) - 1.0) < 1e-15);
    }
    SECTION("negative polarity control") {
        auto sv = basis_state(2, 0b00);
        sv.apply(ControlledOp{{{1, false}}, 0, gates::pauli_x()});
        CHECK(std::abs(sv.amplitude(0b01) - 1.0) < 1e-15);
        auto other = basis_state(2, 0b10);
        other.apply(ControlledOp{{{1, false}}, 0, gates::pauli_x()});
        CHECK(std::abs(other.amplitude(0b10) - 1.0) < 1e-15);
    }
    SECTION("ry puts sin(angle) on |1>") {
        Statevector sv(1);
        sv.apply(SingleQubitOp{0, gates::ry(0.3)});
        CHECK(sv.amplitude(1).real() == Approx(std::sin(0.3)).margin(1e-15));
    }
}

TEST_CASE("invalid gates are rejected", "[statevector]") {
    Statevector sv(3);
    CHECK_THROWS_AS(sv.apply(SingleQubitOp{3, gates::hadamard()}), InvalidGateError);
    CHECK_THROWS_AS(sv.apply(ControlledOp{{{1, true}}, 1, gates::pauli_x()}), InvalidGateError);
    CHECK_THROWS_AS(sv.apply(SingleQubitOp{0, Mat2{2.0, 0.0, 0.0, 1.0}}), InvalidGateError);
    CHECK_THROWS_AS(sv.apply(SelectivePhaseOp{{0, 1}, 4, 0.1}), InvalidGateError);
    CHECK_THROWS_AS(sv.apply(BlockOp{{0, 1}, ComplexMatrix(2, 2)}), InvalidGateError);
    ComplexMatrix not_unitary = ComplexMatrix::identity(4);
    not_unitary(0, 1) = 0.5;
    CHECK_THROWS_AS(sv.apply(BlockOp{{0, 1}, not_unitary}), InvalidGateError);
    CHECK_THROWS_AS(sv.apply(BlockOp{{0, 0}, ComplexMatrix::identity(4)}), InvalidGateError);
}

TEST_CASE("circuits and inverses", "[statevector][circuit]") {
    SECTION("empty circuit leaves the state alone") {
        auto sv = plus_state();
        const auto before = sv;
        sv.apply(Circuit{});
        CHECK(sv.distance(before) == 0.0);
    }
    SECTION("H H is the identity") {
        Circuit c;
        c.push(SingleQubitOp{0, gates::hadamard()}).push(SingleQubitOp{0, gates::hadamard()});
        Statevector sv(1);
        sv.apply(c);
        CHECK(std::abs(sv.amplitude(0) - 1.0) < 1e-15);
    }
    SECTION("inverse reverses order and conjugates") {
        Circuit c("c");
        c.push(SingleQubitOp{0, gates::phase(0.4)}).push(SelectivePhaseOp{{0, 1}, 2, 0.7});
        const auto inv = c.inverse();
        REQUIRE(inv.size() == 2);
        CHECK(std::get<SelectivePhaseOp>(inv.ops()[0]).angle == -0.7);
        CHECK(std::abs(std::get<SingleQubitOp>(inv.ops()[1]).matrix[3] - std::polar(1.0, -0.4)) < 1e-15);
    }
    SECTION("random circuits: apply then apply_inverse is identity") {
        std::mt19937_64 gen(7);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto circuit = testing::random_circuit(4, 50, seed);
            auto sv = Statevector::from_amplitudes(testing::random_amplitudes(4, gen));
            const auto original = sv;
            sv.apply(circuit);
            sv.apply_inverse(circuit);
            CHECK(sv.distance(original) <= 1e-10);
            sv.apply(circuit.inverse());
            sv.apply(circuit);
            CHECK(sv.distance(original) <= 1e-10);
        }
    }
}

TEST_CASE("gate application invariants", "[statevector][property]") {
    std::mt19937_64 gen(11);
    SECTION("norm is preserved after every op") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            auto sv = Statevector::from_amplitudes(testing::random_amplitudes(5, gen));
            for (const auto &op : testing::random_circuit(5, 40, seed + 100)) {
                sv.apply(op);
                CHECK(std::abs(1.0 - sv.norm_squared()) <= 1e-10);
            }
        }
    }
    SECTION("linearity") {
        const Complex a{0.3, -0.4};
        const Complex b{0.5, 0.7};
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto circuit = testing::random_circuit(3, 20, seed + 200);
            const auto s1 = testing::random_amplitudes(3, gen);
            const auto s2 = testing::random_amplitudes(3, gen);
            // Linear combination normalized so it fits a Statevector; rescale after.
            std::vector<Complex> mix(8);
            double norm = 0.0;
            for (std::size_t i = 0; i < 8; ++i) {
                mix[i] = a * s1[i] + b * s2[i];
                norm += std::norm(mix[i]);
            }
            norm = std::sqrt(norm);
            for (auto &m : mix) {
                m /= norm;
            }
            auto v1 = Statevector::from_amplitudes(s1);
            auto v2 = Statevector::from_amplitudes(s2);
            auto vm = Statevector::from_amplitudes(mix);
            v1.apply(circuit);
            v2.apply(circuit);
            vm.apply(circuit);
            for (std::size_t i = 0; i < 8; ++i) {
                const Complex expected = a * v1.amplitudes()[i] + b * v2.amplitudes()[i];
                CHECK(std::abs(vm.amplitudes()[i] * norm - expected) <= 1e-10);
            }
        }
    }
    SECTION("block unitary agrees with its gate decomposition") {
        // CNOT(control 0 -> target 1) as a dense block vs. a ControlledOp.
        ComplexMatrix cnot(4, 4);
        cnot(0, 0) = 1.0;
        cnot(3, 1) = 1.0;
        cnot(2, 2) = 1.0;
        cnot(1, 3) = 1.0;
        // H (x) phase as one block on (q2, q0) vs. two single-qubit gates.
        ComplexMatrix hp(4, 4);
        const auto h = gates::hadamard();
        const auto ph = gates::phase(0.9);
        for (std::size_t r = 0; r < 4; ++r) {
            for (std::size_t c = 0; c < 4; ++c) {
                // local bit 0 -> q2 (H), local bit 1 -> q0 (phase)
                hp(r, c) = h[(r & 1U) * 2 + (c & 1U)] * ph[(r >> 1U) * 2 + (c >> 1U)];
            }
        }
        for (int trial = 0; trial < 5; ++trial) {
            const auto amps = testing::random_amplitudes(3, gen);
            auto by_block = Statevector::from_amplitudes(amps);
            auto by_gates = Statevector::from_amplitudes(amps);
            by_block.apply(BlockOp{{0, 1}, cnot});
            by_block.apply(BlockOp{{2, 0}, hp});
            by_gates.apply(ControlledOp{{{0, true}}, 1, gates::pauli_x()});
            by_gates.apply(SingleQubitOp{2, h});
            by_gates.apply(SingleQubitOp{0, ph});
            CHECK(by_block.distance(by_gates) <= 1e-10);
        }
    }
}

TEST_CASE("measure_qubit", "[statevector][measure]") {
    SECTION("|1> gives 1 with certainty") {
        auto sv = basis_state(1, 1);
        const auto out = sv.measure_qubit(0, std::uint64_t{5});
        CHECK(out.bit == 1);
        CHECK(out.probability == Approx(1.0));
    }
    SECTION("|+> frequency over 10000 seeded shots") {
        const auto plus = plus_state();
        Rng rng(2024);
        int ones = 0;
        for (int s = 0; s < 10000; ++s) {
            auto copy = plus;
            ones += copy.measure_qubit(0, rng).bit;
        }
        const double freq = ones / 10000.0;
        CHECK(freq >= 0.485);
        CHECK(freq <= 0.515);
    }
    SECTION("Bell correlation") {
        for (std::uint64_t seed = 0; seed < 16; ++seed) {
            auto sv = bell_state();
            const auto out = sv.measure_qubit(0, seed);
            CHECK(out.probability == Approx(0.5));
            CHECK(sv.probability_of_one(1) == Approx(static_cast<double>(out.bit)).margin(1e-14));
            CHECK(std::abs(sv.norm_squared() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("project", "[statevector][measure]") {
    SECTION("|+> onto 1") {
        auto sv = plus_state();
        CHECK(sv.project(0, 1) == Approx(0.5));
        CHECK(std::abs(sv.amplitude(1) - 1.0) < 1e-15);
    }
    SECTION("|0> onto 1 is a zero-probability branch") {
        Statevector sv(1);
        CHECK_THROWS_AS(sv.project(0, 1), DegenerateBranchError);
    }
    SECTION("branch probabilities sum to one") {
        std::mt19937_64 gen(3);
        for (int trial = 0; trial < 20; ++trial) {
            const auto amps = testing::random_amplitudes(4, gen);
            for (std::size_t q = 0; q < 4; ++q) {
                auto s0 = Statevector::from_amplitudes(amps);
                auto s1 = Statevector::from_amplitudes(amps);
                CHECK(std::abs(s0.project(q, 0) + s1.project(q, 1) - 1.0) <= 1e-12);
            }
        }
    }
    SECTION("register projection") {
        auto sv = bell_state();
        const std::vector<std::size_t> both{0, 1};
        CHECK(sv.project_register(both, 3) == Approx(0.5));
        CHECK(std::abs(sv.amplitude(3) - 1.0) < 1e-15);
    }
}

TEST_CASE("sample_counts", "[statevector][sampling]") {
    SECTION("|0> always reads 0") {
        Statevector sv(1);
        const std::vector<std::size_t> q0{0};
        const auto h = sv.sample_counts(q0, 100, 1);
        REQUIRE(h.size() == 1);
        CHECK(h.at(0) == 100);
    }
    SECTION("uniform two-qubit state, 3 sigma bins") {
        Statevector sv(2);
        sv.apply(SingleQubitOp{0, gates::hadamard()});
        sv.apply(SingleQubitOp{1, gates::hadamard()});
        const std::vector<std::size_t> both{0, 1};
        const auto h = sv.sample_counts(both, 4000, 99);
        const double sigma = std::sqrt(4000.0 * 0.25 * 0.75);
        std::uint64_t total = 0;
        for (std::uint64_t v = 0; v < 4; ++v) {
            CHECK(std::abs(static_cast<double>(h.at(v)) - 1000.0) <= 3.0 * sigma);
            total += h.at(v);
        }
        CHECK(total == 4000);
    }
    SECTION("marginal of a subset, reordered") {
        // |q2 q1 q0> = |1 0 1> with certainty; subset (q2, q0) reads 0b11.
        auto sv = basis_state(3, 0b101);
        const std::vector<std::size_t> sub{2, 0};
        const auto h = sv.sample_counts(sub, 10, 0);
        CHECK(h.at(0b11) == 10);
    }
    SECTION("deterministic per seed") {
        std::mt19937_64 gen(1);
        const auto sv = Statevector::from_amplitudes(testing::random_amplitudes(4, gen));
        const std::vector<std::size_t> sub{0, 2, 3};
        CHECK(sv.sample_counts(sub, 500, 42) == sv.sample_counts(sub, 500, 42));
        CHECK(sv.sample_counts(sub, 500, 42) != sv.sample_counts(sub, 500, 43));
    }
    SECTION("errors") {
        Statevector sv(2);
        CHECK_THROWS_AS(sv.sample_counts({}, 10, 0), InvalidGateError);
        const std::vector<std::size_t> q0{0};
        CHECK_THROWS_AS(sv.sample_counts(q0, 0, 0), InvalidGateError);
    }
}

TEST_CASE("dump_amplitudes", "[statevector][dump]") {
    SECTION("full dump of |+>") {
        const auto dump = plus_state().dump_amplitudes();
        REQUIRE(dump.size() == 2);
        CHECK(dump[0].first == 0);
        CHECK(std::abs(dump[0].second - 0.7071067811865476) < 1e-12);
        CHECK(std::abs(dump[1].second - 0.7071067811865476) < 1e-12);
    }
    SECTION("subset dump of a product state returns the factor") {
        // (cos a |0> + e^{ib} sin a |1>) on q1, (|0> + |1>)/sqrt2 on q0 and q2
        Statevector sv(3);
        sv.apply(SingleQubitOp{1, gates::ry(0.4)});
        sv.apply(SingleQubitOp{1, gates::phase(1.1)});
        sv.apply(SingleQubitOp{0, gates::hadamard()});
        sv.apply(SingleQubitOp{2, gates::hadamard()});
        const std::vector<std::size_t> sub{1};
        const auto dump = sv.dump_amplitudes(sub);
        REQUIRE(dump.size() == 2);
        // Compare up to global phase via the ratio.
        const Complex ratio = dump[1].second / dump[0].second;
        CHECK(std::abs(ratio - std::polar(std::tan(0.4), 1.1)) < 1e-12);
        CHECK(std::abs(std::norm(dump[0].second) + std::norm(dump[1].second) - 1.0) < 1e-12);
    }
    SECTION("entangled cut is rejected") {
        const auto sv = bell_state();
        const std::vector<std::size_t> q0{0};
        CHECK_THROWS_AS(sv.dump_amplitudes(q0), EntangledCutError);
    }
}

TEST_CASE("rng stream is the standard mt19937_64 sequence", "[rng]") {
    // The C++ standard pins the 10000th output of a default-seeded mt19937_64.
    Rng rng(5489U);
    std::uint64_t v = 0;
    for (int i = 0; i < 10000; ++i) {
        v = rng.next_u64();
    }
    CHECK(v == 9981545732273789042ULL);
    Rng a(1);
    Rng b(1);
    for (int i = 0; i < 100; ++i) {
        const double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}
