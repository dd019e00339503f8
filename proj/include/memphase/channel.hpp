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

#include "memphase/correlation.hpp"

#include <Eigen/Core>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace memphase {

/// Basis pair (j, l) of n-bit strings labelling the coherence |j><l|.
/// Bit k (k = 0 is the leftmost character / first channel use) of j is j_k.
class CoherenceLabel {
public:
    CoherenceLabel(std::uint32_t j, std::uint32_t l, std::size_t length);
    /// From bit strings such as "010"; both strings must have equal length.
    static CoherenceLabel parse(const std::string& j, const std::string& l);

    std::uint32_t j() const { return j_; }
    std::uint32_t l() const { return l_; }
    std::size_t length() const { return length_; }
    int j_bit(std::size_t k) const;
    int l_bit(std::size_t k) const;
    /// s_k = l_k - j_k in {-1, 0, +1}.
    std::vector<int> weights() const;
    std::string j_string() const;
    std::string l_string() const;

private:
    std::uint32_t j_;
    std::uint32_t l_;
    std::size_t length_;
};

/// Exponent sum_k s_k^2 + 2 sum_{k > k'} s_k s_k' mu_{k-k'}.
double decay_exponent(std::span<const int> weights, const PhaseCovariance& cov);
double decay_exponent(const CoherenceLabel& label, const PhaseCovariance& cov);

/// D_jl = g^exponent. Throws DimensionMismatch if the label length differs
/// from the number of uses.
double decay_factor(const CoherenceLabel& label, const PhaseCovariance& cov);

/// Same quantity in covariance form, exp(-2 sum_{k,k'} s_k s_k' <phi_k phi_k'>).
double decay_factor_from_covariance(const CoherenceLabel& label, const PhaseCovariance& cov);

/// Dense density matrix on n qubits. Qubit 0 is the most significant bit of
/// the basis index.
class DensityMatrix {
public:
    explicit DensityMatrix(Eigen::MatrixXcd rho);

    static DensityMatrix pure(const Eigen::VectorXcd& psi);
    static DensityMatrix maximally_mixed(std::size_t qubits);

    std::size_t qubits() const { return qubits_; }
    Eigen::Index dim() const { return rho_.rows(); }
    const Eigen::MatrixXcd& matrix() const { return rho_; }
    std::complex<double> operator()(Eigen::Index j, Eigen::Index l) const { return rho_(j, l); }

    std::complex<double> trace() const { return rho_.trace(); }
    double hermiticity_error() const;
    double min_eigenvalue() const;
    double purity() const;

    /// Throws DomainError unless Hermitian and unit-trace to 1e-12 with
    /// eigenvalues >= -1e-10.
    void validate() const;

private:
    Eigen::MatrixXcd rho_;
    std::size_t qubits_;
};

/// Correlated dephasing over the qubits listed in `positions`, in use order:
/// every element rho_jl is multiplied by the decay factor of (j, l)
/// restricted to those qubits. Other qubits are spectators.
DensityMatrix apply_channel(const DensityMatrix& rho, const PhaseCovariance& cov,
                            std::span<const std::size_t> positions);

} // namespace memphase
