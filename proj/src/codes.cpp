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

#include "memphase/codes.hpp"

#include "memphase/channel.hpp"
#include "memphase/circuit.hpp"
#include "memphase/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace memphase {

namespace {

void require_damping(double g)
{
    if (!(g > 0.0 && g <= 1.0))
        throw DomainError("damping g must lie in (0, 1]");
}

} // namespace

double fe_single(double g)
{
    require_damping(g);
    return 0.5 * (1.0 + g);
}

double fe_tqc_general(double g, double mu_qa, double mu_qb, double mu_ab)
{
    require_damping(g);
    if (!std::isfinite(mu_qa) || !std::isfinite(mu_qb) || !std::isfinite(mu_ab))
        throw DomainError("correlation coefficients must be finite");
    const double bracket = std::pow(g, 2.0 * mu_qa - 2.0 * mu_qb - 2.0 * mu_ab) +
                           std::pow(g, -2.0 * mu_qa + 2.0 * mu_qb - 2.0 * mu_ab) +
                           std::pow(g, -2.0 * mu_qa - 2.0 * mu_qb + 2.0 * mu_ab) +
                           std::pow(g, 2.0 * mu_qa + 2.0 * mu_qb + 2.0 * mu_ab);
    return 0.5 + 0.75 * g - g * g * g / 16.0 * bracket;
}

double fe_tqc_memory(double g, double mu1, double mu2)
{
    require_damping(g);
    if (!std::isfinite(mu1) || !std::isfinite(mu2))
        throw DomainError("correlation coefficients must be finite");
    const double bracket = 2.0 * std::pow(g, -2.0 * mu2) + std::pow(g, 2.0 * mu2 - 4.0 * mu1) +
                           std::pow(g, 2.0 * mu2 + 4.0 * mu1);
    return 0.5 + 0.75 * g - g * g * g / 16.0 * bracket;
}

double fe_tqc_approx(double epsilon, double mu1, double mu2)
{
    return 1.0 - (3.0 + 4.0 * mu1 * mu1 + 2.0 * mu2 * mu2) * epsilon * epsilon;
}

double pe_two_qubit(double g, double mu1)
{
    require_damping(g);
    return 0.5 * (1.0 - std::pow(g, 2.0 * (1.0 - mu1)));
}

TqcEvaluation evaluate_tqc(const CodePoint& point)
{
    TqcEvaluation out;
    out.fidelity = fe_tqc_memory(point.g, point.mu1, point.mu2);
    out.error_probability = 1.0 - out.fidelity;
    out.feasibility = point.feasibility();
    return out;
}

Mu2Optimum mu2_opt(double g, double mu1)
{
    if (!(g > 0.0 && g < 1.0))
        throw DomainError("mu2_opt needs g in (0, 1); log base g is degenerate at g = 1");
    if (!(mu1 >= 0.0 && mu1 <= 1.0))
        throw DomainError("mu1 must lie in [0, 1]");
    const double mean = 0.5 * (std::pow(g, 4.0 * mu1) + std::pow(g, -4.0 * mu1));
    Mu2Optimum opt;
    opt.value = -0.25 * std::log(mean) / std::log(g);
    const double lower = std::max(0.0, 2.0 * mu1 * mu1 - 1.0);
    opt.clamped = std::clamp(opt.value, lower, mu1);
    opt.inside_band = opt.value >= lower && opt.value <= mu1;
    return opt;
}

double fe_tqc_via_circuit(const PhaseCovariance& cov)
{
    if (cov.uses() != 3)
        throw DimensionMismatch("three-qubit code needs a covariance over 3 uses");
    const JointState encoded = tqc_encode(prepare_bell_with_ancillas());
    const JointState transmitted = apply_channel(encoded, cov, tqc::kTransmitted);
    const JointState decoded = tqc_decode(transmitted);
    constexpr std::array<std::size_t, 2> rq{tqc::kReference, tqc::kSystem};
    return entanglement_fidelity(partial_trace(decoded, rq), bell_state());
}

double fe_single_via_circuit(const PhaseCovariance& cov)
{
    if (cov.uses() != 1)
        throw DimensionMismatch("single-use fidelity needs a covariance over 1 use");
    const DensityMatrix bell = DensityMatrix::pure(bell_state());
    constexpr std::array<std::size_t, 1> q{1};
    return entanglement_fidelity(apply_channel(bell, cov, q), bell_state());
}

} // namespace memphase
