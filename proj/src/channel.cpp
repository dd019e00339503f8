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

#include "memphase/channel.hpp"

#include "memphase/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace memphase {

namespace {

std::uint32_t parse_bits(const std::string& s)
{
    std::uint32_t v = 0;
    for (char c : s) {
        if (c != '0' && c != '1')
            throw DomainError("basis label '" + s + "' must contain only 0 and 1");
        v = (v << 1) | static_cast<std::uint32_t>(c - '0');
    }
    return v;
}

std::string to_bits(std::uint32_t v, std::size_t n)
{
    std::string s(n, '0');
    for (std::size_t k = 0; k < n; ++k)
        if ((v >> (n - 1 - k)) & 1u)
            s[k] = '1';
    return s;
}

int bit_of(Eigen::Index index, std::size_t qubit, std::size_t qubits)
{
    return static_cast<int>((index >> (qubits - 1 - qubit)) & 1);
}

} // namespace

CoherenceLabel::CoherenceLabel(std::uint32_t j, std::uint32_t l, std::size_t length)
    : j_(j), l_(l), length_(length)
{
    if (length == 0 || length > 31)
        throw DomainError("coherence label length must be in [1, 31]");
    if ((j >> length) != 0 || (l >> length) != 0)
        throw DomainError("basis index does not fit in the label length");
}

CoherenceLabel CoherenceLabel::parse(const std::string& j, const std::string& l)
{
    if (j.size() != l.size())
        throw DimensionMismatch("basis labels '" + j + "' and '" + l + "' differ in length");
    return CoherenceLabel(parse_bits(j), parse_bits(l), j.size());
}

int CoherenceLabel::j_bit(std::size_t k) const
{
    return static_cast<int>((j_ >> (length_ - 1 - k)) & 1u);
}

int CoherenceLabel::l_bit(std::size_t k) const
{
    return static_cast<int>((l_ >> (length_ - 1 - k)) & 1u);
}

std::vector<int> CoherenceLabel::weights() const
{
    std::vector<int> s(length_);
    for (std::size_t k = 0; k < length_; ++k)
        s[k] = l_bit(k) - j_bit(k);
    return s;
}

std::string CoherenceLabel::j_string() const { return to_bits(j_, length_); }
std::string CoherenceLabel::l_string() const { return to_bits(l_, length_); }

double decay_exponent(std::span<const int> weights, const PhaseCovariance& cov)
{
    if (weights.size() != cov.uses()) {
        std::ostringstream msg;
        msg << "label covers " << weights.size() << " uses but the covariance has " << cov.uses();
        throw DimensionMismatch(msg.str());
    }
    double exponent = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        exponent += weights[k] * weights[k];
        for (std::size_t kp = 0; kp < k; ++kp)
            exponent += 2.0 * weights[k] * weights[kp] * cov.mu(k - kp);
    }
    return exponent;
}

double decay_exponent(const CoherenceLabel& label, const PhaseCovariance& cov)
{
    const auto s = label.weights();
    return decay_exponent(s, cov);
}

double decay_factor(const CoherenceLabel& label, const PhaseCovariance& cov)
{
    return std::pow(cov.damping(), decay_exponent(label, cov));
}

double decay_factor_from_covariance(const CoherenceLabel& label, const PhaseCovariance& cov)
{
    const auto s = label.weights();
    if (s.size() != cov.uses())
        throw DimensionMismatch("label length differs from the number of channel uses");
    double quad = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k)
        for (std::size_t kp = 0; kp < s.size(); ++kp)
            quad += s[k] * s[kp] * cov.covariance(k, kp);
    return std::exp(-2.0 * quad);
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd rho) : rho_(std::move(rho)), qubits_(0)
{
    if (rho_.rows() != rho_.cols() || rho_.rows() == 0)
        throw DimensionMismatch("density matrix must be square and non-empty");
    Eigen::Index d = rho_.rows();
    while (d > 1) {
        if (d % 2 != 0)
            throw DimensionMismatch("density matrix dimension must be a power of two");
        d /= 2;
        ++qubits_;
    }
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi)
{
    return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t qubits)
{
    const Eigen::Index d = Eigen::Index{1} << qubits;
    return DensityMatrix(Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d));
}

double DensityMatrix::hermiticity_error() const
{
    return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const
{
    const Eigen::MatrixXcd herm = 0.5 * (rho_ + rho_.adjoint());
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(herm, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

double DensityMatrix::purity() const
{
    return (rho_ * rho_).trace().real();
}

void DensityMatrix::validate() const
{
    std::ostringstream msg;
    if (hermiticity_error() > 1e-12)
        msg << "not Hermitian (error " << hermiticity_error() << "); ";
    if (std::abs(trace() - 1.0) > 1e-12)
        msg << "trace " << trace() << " != 1; ";
    if (min_eigenvalue() < -1e-10)
        msg << "negative eigenvalue " << min_eigenvalue() << "; ";
    if (!msg.str().empty())
        throw DomainError("invalid density matrix: " + msg.str());
}

DensityMatrix apply_channel(const DensityMatrix& rho, const PhaseCovariance& cov,
                            std::span<const std::size_t> positions)
{
    if (positions.size() != cov.uses()) {
        std::ostringstream msg;
        msg << positions.size() << " transmitted qubits for a covariance over " << cov.uses() << " uses";
        throw DimensionMismatch(msg.str());
    }
    const std::size_t n = rho.qubits();
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (positions[i] >= n)
            throw PositionOutOfRange("qubit position " + std::to_string(positions[i]) + " outside register");
        for (std::size_t k = 0; k < i; ++k)
            if (positions[k] == positions[i])
                throw PositionOutOfRange("qubit position " + std::to_string(positions[i]) + " listed twice");
    }

    Eigen::MatrixXcd out = rho.matrix();
    std::vector<int> s(positions.size());
    for (Eigen::Index j = 0; j < rho.dim(); ++j) {
        for (Eigen::Index l = 0; l < rho.dim(); ++l) {
            bool population = true;
            for (std::size_t k = 0; k < positions.size(); ++k) {
                s[k] = bit_of(l, positions[k], n) - bit_of(j, positions[k], n);
                population = population && s[k] == 0;
            }
            if (!population)
                out(j, l) *= std::pow(cov.damping(), decay_exponent(s, cov));
        }
    }

    DensityMatrix result(std::move(out));
    if (result.min_eigenvalue() < -1e-10)
        throw NotPositiveSemidefinite("channel output lost positivity; check the correlation coefficients");
    return result;
}

} // namespace memphase
