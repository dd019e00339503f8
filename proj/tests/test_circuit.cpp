/*
   Copyright 2026 The memphase Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "memphase/circuit.hpp"
#include "memphase/errors.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace memphase;

namespace {

// Permutation matrix of a classical reversible gate, built bit by bit.
Eigen::MatrixXcd classical_gate(std::size_t qubits, std::vector<std::size_t> controls, std::size_t target)
{
    const Eigen::Index dim = Eigen::Index{1} << qubits;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    auto mask = [&](std::size_t q) { return Eigen::Index{1} << (qubits - 1 - q); };
    for (Eigen::Index x = 0; x < dim; ++x) {
        bool fire = true;
        for (std::size_t c : controls)
            fire = fire && (x & mask(c));
        u(fire ? x ^ mask(target) : x, x) = 1.0;
    }
    return u;
}

double bell_fidelity_after(const std::vector<std::size_t>& flipped)
{
    auto state = tqc_encode(prepare_bell_with_ancillas());
    for (std::size_t q : flipped)
        state = apply_pauli_z(state, q);
    const auto decoded = tqc_decode(state);
    const std::vector<std::size_t> keep{tqc::kReference, tqc::kSystem};
    return entanglement_fidelity(partial_trace(decoded, keep), bell_state());
}

} // namespace

TEST_CASE("gate unitaries")
{
    const auto h = gate_unitary(Gate::hadamard(0), 1);
    CHECK((h * h - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-15);
    CHECK(std::abs(h(1, 1) + 1.0 / std::sqrt(2.0)) < 1e-15);

    CHECK((gate_unitary(Gate::cnot(0, 1), 2) - classical_gate(2, {0}, 1)).norm() == 0.0);
    CHECK((gate_unitary(Gate::cnot(2, 0), 3) - classical_gate(3, {2}, 0)).norm() == 0.0);
    CHECK((gate_unitary(Gate::toffoli(2, 3, 1), 4) - classical_gate(4, {2, 3}, 1)).norm() == 0.0);
    CHECK((gate_unitary(Gate::toffoli(0, 2, 1), 3) - classical_gate(3, {0, 2}, 1)).norm() == 0.0);

    for (const Gate& g : {Gate::hadamard(2), Gate::cnot(3, 0), Gate::toffoli(1, 3, 2)}) {
        const auto u = gate_unitary(g, 4);
        CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(16, 16)).norm() < 1e-14);
    }
}

TEST_CASE("gate argument errors")
{
    CHECK_THROWS_AS(gate_unitary(Gate::hadamard(3), 3), IndexError);
    CHECK_THROWS_AS(gate_unitary(Gate::cnot(1, 1), 2), IndexError);
    CHECK_THROWS_AS(gate_unitary(Gate::cnot(4, 1), 3), IndexError);
    CHECK_THROWS_AS(gate_unitary(Gate::toffoli(0, 0, 1), 3), IndexError);
    CHECK_THROWS_AS(gate_unitary(Gate{GateKind::CNOT, 0, {}}, 2), IndexError);
    CHECK_THROWS_AS(apply_pauli_z(DensityMatrix::maximally_mixed(2), 2), IndexError);
}

TEST_CASE("decoder undoes the encoder when the ancillas start in |00>")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::MatrixXcd rq = oracle::random_density(4, rng);
        Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(16, 16);
        for (Eigen::Index i = 0; i < 4; ++i)
            for (Eigen::Index j = 0; j < 4; ++j)
                full(4 * i, 4 * j) = rq(i, j);
        const DensityMatrix start(full);
        CHECK((tqc_decode(tqc_encode(start)).matrix() - full).norm() < 1e-14);
    }
}

TEST_CASE("encoded state is pure and the reference stays maximally mixed")
{
    const auto encoded = tqc_encode(prepare_bell_with_ancillas());
    CHECK(encoded.purity() == doctest::Approx(1.0).epsilon(1e-14));
    const std::vector<std::size_t> r{tqc::kReference};
    CHECK((partial_trace(encoded, r).matrix() - Eigen::MatrixXcd::Identity(2, 2) / 2.0).norm() < 1e-15);
    const std::vector<std::size_t> qab{1, 2, 3};
    CHECK(partial_trace(encoded, qab).purity() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("single phase flips are corrected")
{
    CHECK(bell_fidelity_after({}) == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t q : tqc::kTransmitted)
        CHECK(std::abs(bell_fidelity_after({q}) - 1.0) < 1e-12);
    // Two flips defeat the code and flip the logical phase.
    CHECK(bell_fidelity_after({tqc::kSystem, tqc::kAncillaA}) < 1e-12);
    CHECK(bell_fidelity_after({tqc::kAncillaA, tqc::kAncillaB}) < 1e-12);
    CHECK(bell_fidelity_after({1, 2, 3}) < 1e-12);
}

TEST_CASE("partial trace")
{
    std::mt19937_64 rng(8);
    const Eigen::MatrixXcd a = oracle::random_density(2, rng);
    const Eigen::MatrixXcd b = oracle::random_density(4, rng);
    Eigen::MatrixXcd ab(8, 8);
    for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index j = 0; j < 2; ++j)
            ab.block(4 * i, 4 * j, 4, 4) = a(i, j) * b;
    const DensityMatrix joint(ab);
    const std::vector<std::size_t> first{0};
    const std::vector<std::size_t> rest{1, 2};
    const std::vector<std::size_t> everything{0, 1, 2};
    CHECK((partial_trace(joint, first).matrix() - a).norm() < 1e-14);
    CHECK((partial_trace(joint, rest).matrix() - b).norm() < 1e-14);
    CHECK((partial_trace(joint, everything).matrix() - ab).norm() == 0.0);

    const std::vector<std::size_t> twice{1, 1};
    const std::vector<std::size_t> outside{4};
    CHECK_THROWS_AS(partial_trace(joint, twice), IndexError);
    CHECK_THROWS_AS(partial_trace(joint, outside), IndexError);
}

TEST_CASE("entanglement fidelity")
{
    const auto bell = bell_state();
    CHECK(bell.norm() == doctest::Approx(1.0));
    CHECK(entanglement_fidelity(DensityMatrix::pure(bell), bell) == doctest::Approx(1.0));
    CHECK(entanglement_fidelity(DensityMatrix::maximally_mixed(2), bell) == doctest::Approx(0.25));
    CHECK_THROWS_AS(entanglement_fidelity(DensityMatrix::maximally_mixed(3), bell), DimensionMismatch);
    CHECK_THROWS_AS(entanglement_fidelity(DensityMatrix::maximally_mixed(2), 2.0 * bell), DomainError);
    CHECK_THROWS_AS(tqc_encode(DensityMatrix::maximally_mixed(3)), DimensionMismatch);
}
