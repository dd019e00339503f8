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

#include <algorithm>
#include <cmath>
#include <numbers>

namespace memphase {

namespace {

using Index = Eigen::Index;

Index mask_of(std::size_t qubit, std::size_t qubits)
{
    return Index{1} << (qubits - 1 - qubit);
}

void check_gate(const Gate& gate, std::size_t qubits)
{
    const std::size_t expected = gate.kind == GateKind::Hadamard ? 0 : gate.kind == GateKind::CNOT ? 1 : 2;
    if (gate.controls.size() != expected)
        throw IndexError("wrong number of control qubits for gate");
    if (gate.target >= qubits)
        throw IndexError("gate target " + std::to_string(gate.target) + " outside register");
    for (std::size_t i = 0; i < gate.controls.size(); ++i) {
        const std::size_t c = gate.controls[i];
        if (c >= qubits)
            throw IndexError("gate control " + std::to_string(c) + " outside register");
        if (c == gate.target)
            throw IndexError("gate control coincides with its target");
        if (i > 0 && gate.controls[0] == c)
            throw IndexError("gate controls must be distinct");
    }
}

} // namespace

Eigen::MatrixXcd gate_unitary(const Gate& gate, std::size_t qubits)
{
    check_gate(gate, qubits);
    const Index dim = Index{1} << qubits;
    const Index target = mask_of(gate.target, qubits);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);

    if (gate.kind == GateKind::Hadamard) {
        const double h = 1.0 / std::numbers::sqrt2;
        for (Index x = 0; x < dim; ++x) {
            const Index partner = x ^ target;
            // <x|H|x> = +h unless the target bit is 1.
            u(x, x) = (x & target) ? -h : h;
            u(partner, x) = h;
        }
        return u;
    }

    Index control = 0;
    for (std::size_t c : gate.controls)
        control |= mask_of(c, qubits);
    for (Index x = 0; x < dim; ++x) {
        const Index y = (x & control) == control ? x ^ target : x;
        u(y, x) = 1.0;
    }
    return u;
}

DensityMatrix apply_gate(const DensityMatrix& state, const Gate& gate)
{
    const Eigen::MatrixXcd u = gate_unitary(gate, state.qubits());
    return DensityMatrix(u * state.matrix() * u.adjoint());
}

DensityMatrix apply_circuit(const DensityMatrix& state, std::span<const Gate> gates)
{
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(state.dim(), state.dim());
    for (const Gate& g : gates)
        total = gate_unitary(g, state.qubits()) * total;
    return DensityMatrix(total * state.matrix() * total.adjoint());
}

DensityMatrix apply_pauli_z(const DensityMatrix& state, std::size_t qubit)
{
    if (qubit >= state.qubits())
        throw IndexError("Pauli Z qubit outside register");
    const Index mask = mask_of(qubit, state.qubits());
    Eigen::MatrixXcd rho = state.matrix();
    for (Index j = 0; j < state.dim(); ++j)
        for (Index l = 0; l < state.dim(); ++l)
            if (static_cast<bool>(j & mask) != static_cast<bool>(l & mask))
                rho(j, l) = -rho(j, l);
    return DensityMatrix(std::move(rho));
}

Eigen::VectorXcd bell_state()
{
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi(0) = psi(3) = 1.0 / std::numbers::sqrt2;
    return psi;
}

JointState prepare_bell_with_ancillas()
{
    const Eigen::VectorXcd rq = bell_state();
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(16);
    // Ancillas A, B are the two least significant bits, both |0>.
    for (Index x = 0; x < 4; ++x)
        psi(x << 2) = rq(x);
    return DensityMatrix::pure(psi);
}

std::vector<Gate> tqc_encoder()
{
    using namespace tqc;
    return {Gate::cnot(kSystem, kAncillaA), Gate::cnot(kSystem, kAncillaB), Gate::hadamard(kSystem),
            Gate::hadamard(kAncillaA), Gate::hadamard(kAncillaB)};
}

std::vector<Gate> tqc_decoder()
{
    using namespace tqc;
    return {Gate::hadamard(kSystem),           Gate::hadamard(kAncillaA),
            Gate::hadamard(kAncillaB),         Gate::cnot(kSystem, kAncillaA),
            Gate::cnot(kSystem, kAncillaB),    Gate::toffoli(kAncillaA, kAncillaB, kSystem)};
}

JointState tqc_encode(const JointState& state)
{
    if (state.qubits() != tqc::kQubits)
        throw DimensionMismatch("three-qubit code pipeline expects the (R, Q, A, B) register");
    const auto gates = tqc_encoder();
    return apply_circuit(state, gates);
}

JointState tqc_decode(const JointState& state)
{
    if (state.qubits() != tqc::kQubits)
        throw DimensionMismatch("three-qubit code pipeline expects the (R, Q, A, B) register");
    const auto gates = tqc_decoder();
    return apply_circuit(state, gates);
}

DensityMatrix partial_trace(const DensityMatrix& state, std::span<const std::size_t> keep)
{
    const std::size_t n = state.qubits();
    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
        throw IndexError("partial trace keeps a qubit twice");
    if (!kept.empty() && kept.back() >= n)
        throw IndexError("partial trace qubit outside register");

    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < n; ++q)
        if (!std::binary_search(kept.begin(), kept.end(), q))
            traced.push_back(q);

    auto spread = [&](Index bits, const std::vector<std::size_t>& qubits) {
        Index full = 0;
        for (std::size_t i = 0; i < qubits.size(); ++i)
            if ((bits >> (qubits.size() - 1 - i)) & 1)
                full |= mask_of(qubits[i], n);
        return full;
    };

    const Index dk = Index{1} << kept.size();
    const Index dt = Index{1} << traced.size();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
    for (Index a = 0; a < dk; ++a) {
        const Index fa = spread(a, kept);
        for (Index b = 0; b < dk; ++b) {
            const Index fb = spread(b, kept);
            std::complex<double> sum = 0.0;
            for (Index e = 0; e < dt; ++e) {
                const Index fe = spread(e, traced);
                sum += state(fa | fe, fb | fe);
            }
            out(a, b) = sum;
        }
    }
    return DensityMatrix(std::move(out));
}

double entanglement_fidelity(const DensityMatrix& rho, const Eigen::VectorXcd& psi)
{
    if (psi.size() != rho.dim())
        throw DimensionMismatch("reference state dimension differs from the density matrix");
    if (std::abs(psi.squaredNorm() - 1.0) > 1e-12)
        throw DomainError("reference state must be normalized");
    return (psi.adjoint() * rho.matrix() * psi)(0, 0).real();
}

} // namespace memphase
