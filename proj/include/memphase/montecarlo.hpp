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
#include "memphase/correlation.hpp"
#include "memphase/parallel.hpp"
#include "memphase/spectrum.hpp"

#include <Eigen/Core>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace memphase {

/// Samples are generated and reduced in fixed-size chunks; chunk c draws
/// from substream(seed, c). Results therefore do not depend on how many
/// workers process the chunks.
inline constexpr std::size_t kChunkSize = std::size_t{1} << 14;

/// Independent generator for stream `stream` of a run seeded with `seed`.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream);

/// n realizations of (phi_1 .. phi_N), stored row-major.
class PhaseEnsemble {
public:
    PhaseEnsemble(std::size_t uses, std::size_t samples, std::uint64_t seed);

    std::size_t uses() const { return uses_; }
    std::size_t size() const { return samples_; }
    std::uint64_t seed() const { return seed_; }
    std::span<const double> sample(std::size_t i) const { return {data_.data() + i * uses_, uses_}; }
    std::span<double> sample(std::size_t i) { return {data_.data() + i * uses_, uses_}; }
    const std::vector<double>& data() const { return data_; }

private:
    std::size_t uses_;
    std::size_t samples_;
    std::uint64_t seed_;
    std::vector<double> data_;
};

struct McEstimate {
    std::complex<double> value;
    /// Standard errors of the real and imaginary parts.
    std::complex<double> std_error;
    std::size_t samples = 0;
    std::uint64_t seed = 0;

    double standard_error() const { return std_error.real(); }
};

/// Exact zero-mean Gaussian draws phi = F z with F F^T = Sigma, F taken from
/// the symmetric eigendecomposition so rank-deficient Sigma (mu = 1) works.
PhaseEnsemble sample_phases_direct(const PhaseCovariance& cov, std::uint64_t seed, std::size_t n);

/// Simulates the Ornstein-Uhlenbeck drive with its exact discrete update and
/// integrates it (trapezoid rule, step <= dt) over each transit window.
/// Gaps between windows are crossed in one exact step. Throws StepTooCoarse
/// if dt > tau_p / 50.
PhaseEnsemble sample_phases_trajectory(const LorentzianSpectrum& spec, const ChannelParams& params,
                                       std::uint64_t seed, std::size_t n, double dt);

/// Empirical mean of exp(2i sum_k s_k phi_k) over the ensemble.
McEstimate mc_decay_factor(const CoherenceLabel& label, const PhaseEnsemble& ensemble);

/// Three-qubit code fidelity averaged over phase realizations: each
/// realization applies the unitary exp(-i sigma_z phi_k) to Q, A, B of the
/// encoded state; the averaged state is decoded and compared with the Bell
/// pair. Standard error from batch means.
McEstimate mc_tqc_fidelity(const PhaseEnsemble& ensemble, std::size_t batches = 20);

struct MomentEstimate {
    Eigen::VectorXd mean;
    Eigen::VectorXd mean_error;
    /// Raw second moments <phi_k phi_k'> (the process mean is zero).
    Eigen::MatrixXd covariance;
    Eigen::MatrixXd covariance_error;
};

MomentEstimate sample_moments(const PhaseEnsemble& ensemble);

} // namespace memphase
