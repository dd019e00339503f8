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

#pragma once

#include "memphase/channel.hpp"

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace memphase {

enum class GateKind { Hadamard, CNOT, Toffoli };

struct Gate {
    GateKind kind;
    std::size_t target;
    std::vector<std::size_t> controls;

    static Gate hadamard(std::size_t target) { return {GateKind::Hadamard, target, {}}; }
    static Gate cnot(std::size_t control, std::size_t target) { return {GateKind::CNOT, target, {control}}; }
    static Gate toffoli(std::size_t c1, std::size_t c2, std::size_t target)
    {
        return {GateKind::Toffoli, target, {c1, c2}};
    }
};

/// Register layout of the three-qubit code pipeline: reference R, system Q,
/// ancillas A and B. The channel sees Q, A, B in that transmission order.
namespace tqc {
inline constexpr std::size_t kReference = 0;
inline constexpr std::size_t kSystem = 1;
inline constexpr std::size_t kAncillaA = 2;
inline constexpr std::size_t kAncillaB = 3;
inline constexpr std::size_t kQubits = 4;
inline constexpr std::array<std::size_t, 3> kTransmitted = {kSystem, kAncillaA, kAncillaB};
} // namespace tqc

using JointState = DensityMatrix;

/// Full 2^n x 2^n unitary of `gate` on an n-qubit register. Throws IndexError.
Eigen::MatrixXcd gate_unitary(const Gate& gate, std::size_t qubits);

DensityMatrix apply_gate(const DensityMatrix& state, const Gate& gate);
DensityMatrix apply_circuit(const DensityMatrix& state, std::span<const Gate> gates);

/// Pauli Z on one qubit, used to inject a deterministic phase flip.
DensityMatrix apply_pauli_z(const DensityMatrix& state, std::size_t qubit);

/// (|00> + |11>) / sqrt(2) on (R, Q).
Eigen::VectorXcd bell_state();

/// |psi_RQ> (x) |00>_AB as a density matrix on (R, Q, A, B).
JointState prepare_bell_with_ancillas();

/// CNOT(Q->A), CNOT(Q->B), then H on Q, A, B.
std::vector<Gate> tqc_encoder();
/// H on Q, A, B, CNOT(Q->A), CNOT(Q->B), Toffoli(A, B -> Q).
std::vector<Gate> tqc_decoder();

JointState tqc_encode(const JointState& state);
JointState tqc_decode(const JointState& state);

/// Reduced state on the listed qubits (kept in ascending order).
DensityMatrix partial_trace(const DensityMatrix& state, std::span<const std::size_t> keep);

/// <psi| rho |psi> for a normalized pure reference state.
double entanglement_fidelity(const DensityMatrix& rho, const Eigen::VectorXcd& psi);

} // namespace memphase
