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

#include "memphase/spectrum.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <string>
#include <vector>

namespace memphase {

/// Timing of the transmission: carrier k enters at first_entry + k * spacing
/// and stays inside for transit_time.
struct ChannelParams {
    double coupling = 1.0;     // lambda
    double transit_time = 1.0; // tau_p
    double spacing = 1.0;      // tau, >= tau_p
    std::size_t uses = 1;      // N
    double first_entry = 0.0;

    void validate() const;
    double entry_time(std::size_t k) const { return first_entry + static_cast<double>(k) * spacing; }
};

/// Stationary phase statistics for N uses: <phi_k phi_k'> = eta2 * mu[|k - k'|].
///
/// Immutable once built; every factory checks mu[0] == 1, |mu[m]| <= 1 and
/// positive semidefiniteness of the assembled covariance matrix.
class PhaseCovariance {
public:
    /// Throws NotPositiveSemidefinite or DomainError.
    static PhaseCovariance from_coefficients(double eta2, std::vector<double> mu);
    /// Same, with eta2 = -ln(g) / 2.
    static PhaseCovariance from_damping(double g, std::vector<double> mu);

    double eta2() const { return eta2_; }
    /// Single-use coherence damping g = exp(-2 eta2).
    double damping() const { return damping_; }
    std::size_t uses() const { return mu_.size(); }
    const std::vector<double>& mu() const { return mu_; }
    double mu(std::size_t lag) const { return mu_.at(lag); }
    double covariance(std::size_t k, std::size_t kp) const;
    Eigen::MatrixXd matrix() const;

private:
    PhaseCovariance(double eta2, std::vector<double> mu);

    double eta2_;
    double damping_;
    std::vector<double> mu_;
};

/// Phase covariance from the spectral kernel, one kernel integral per lag.
PhaseCovariance covariance_from_spectrum(const PowerSpectrum& spec, const ChannelParams& params,
                                         const KernelOptions& opts = {});

/// Independent time-domain route: nested adaptive quadrature of
/// (lambda^2 / 4) C(t1 - t2) over the two transit windows. Not available for
/// white noise.
PhaseCovariance covariance_from_autocorrelation(const PowerSpectrum& spec, const ChannelParams& params);

/// Single-use error probability (1 - g) / 2, for g in (0, 1].
double epsilon_from_g(double g);
/// Inverse of epsilon_from_g, for epsilon in [0, 1/2).
double g_from_epsilon(double epsilon);

struct MuFeasibility {
    enum class Violation { None, Mu1OutOfRange, Negative, BelowLowerBound, AboveMu1 };

    Violation violation = Violation::None;
    double lower_bound = 0.0; // max(0, 2 mu1^2 - 1)

    bool feasible() const { return violation == Violation::None; }
    std::string message() const;
};

/// Feasible iff 0 <= mu1 <= 1 and max(0, 2 mu1^2 - 1) <= mu2 <= mu1.
MuFeasibility check_mu_feasible(double mu1, double mu2);

} // namespace memphase
