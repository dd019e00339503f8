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

#include "memphase/correlation.hpp"

#include "memphase/errors.hpp"
#include "memphase/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace memphase {

void ChannelParams::validate() const
{
    if (!(transit_time > 0.0) || !std::isfinite(transit_time))
        throw DomainError("transit_time must be positive");
    if (!(spacing >= transit_time) || !std::isfinite(spacing))
        throw DomainError("spacing must be >= transit_time so transit windows do not overlap");
    if (uses < 1)
        throw DomainError("at least one channel use is required");
    if (!std::isfinite(coupling))
        throw DomainError("coupling must be finite");
    if (!std::isfinite(first_entry))
        throw DomainError("first_entry must be finite");
}

PhaseCovariance::PhaseCovariance(double eta2, std::vector<double> mu)
    : eta2_(eta2), damping_(std::exp(-2.0 * eta2)), mu_(std::move(mu))
{
}

PhaseCovariance PhaseCovariance::from_coefficients(double eta2, std::vector<double> mu)
{
    if (!(eta2 >= 0.0) || !std::isfinite(eta2))
        throw DomainError("phase variance eta2 must be finite and >= 0");
    if (mu.empty())
        throw DomainError("at least one correlation coefficient (mu_0 = 1) is required");
    if (mu[0] != 1.0)
        throw DomainError("mu_0 must be exactly 1");
    for (double m : mu)
        if (!(std::abs(m) <= 1.0))
            throw DomainError("correlation coefficients must lie in [-1, 1]");

    PhaseCovariance cov(eta2, std::move(mu));
    if (cov.uses() > 1) {
        // Normalized Toeplitz matrix; scale by eta2 only for the threshold.
        Eigen::MatrixXd corr(cov.uses(), cov.uses());
        for (std::size_t k = 0; k < cov.uses(); ++k)
            for (std::size_t kp = 0; kp < cov.uses(); ++kp)
                corr(k, kp) = cov.mu_[k > kp ? k - kp : kp - k];
        const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(corr, Eigen::EigenvaluesOnly)
                                   .eigenvalues()
                                   .minCoeff();
        if (min_eig < -1e-10) {
            std::ostringstream msg;
            msg << "phase covariance has eigenvalue " << min_eig * eta2 << " (normalized " << min_eig
                << "); the correlation coefficients are inconsistent";
            throw NotPositiveSemidefinite(msg.str());
        }
    }
    return cov;
}

PhaseCovariance PhaseCovariance::from_damping(double g, std::vector<double> mu)
{
    if (!(g > 0.0 && g <= 1.0))
        throw DomainError("damping g must lie in (0, 1]");
    return from_coefficients(-0.5 * std::log(g), std::move(mu));
}

double PhaseCovariance::covariance(std::size_t k, std::size_t kp) const
{
    return eta2_ * mu_.at(k > kp ? k - kp : kp - k);
}

Eigen::MatrixXd PhaseCovariance::matrix() const
{
    const auto n = static_cast<Eigen::Index>(uses());
    Eigen::MatrixXd sigma(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index kp = 0; kp < n; ++kp)
            sigma(k, kp) = covariance(static_cast<std::size_t>(k), static_cast<std::size_t>(kp));
    return sigma;
}

PhaseCovariance covariance_from_spectrum(const PowerSpectrum& spec, const ChannelParams& params,
                                         const KernelOptions& opts)
{
    params.validate();
    const double i0 = kernel_integral(spec, params.transit_time, 0.0, opts);
    std::vector<double> mu{1.0};
    for (std::size_t m = 1; m < params.uses; ++m) {
        const double lag = static_cast<double>(m) * params.spacing;
        mu.push_back(kernel_integral(spec, params.transit_time, lag, opts) / i0);
    }
    return PhaseCovariance::from_coefficients(params.coupling * params.coupling * i0, std::move(mu));
}

namespace {

// integral over [t_a, t_a + T] x [t_b, t_b + T] of C(t1 - t2).
double window_double_integral(const PowerSpectrum& spec, double t_a, double t_b, double transit)
{
    const double c0 = process_variance(spec);
    quadrature::Options inner_opts{1e-13 * c0 * transit, 1e-13, 20000};
    quadrature::Options outer_opts{1e-12 * c0 * transit * transit, 1e-12, 20000};

    auto inner = [&](double t1) {
        // C has a kink at t2 = t1.
        const std::array<double, 1> kink{t1};
        auto f = [&](double t2) { return autocorrelation(spec, t1 - t2); };
        return quadrature::integrate(f, t_b, t_b + transit, inner_opts, kink).value;
    };
    // The inner integral is only C^1 where the windows touch.
    const std::array<double, 2> outer_cuts{t_b, t_b + transit};
    return quadrature::integrate(inner, t_a, t_a + transit, outer_opts, outer_cuts).value;
}

} // namespace

PhaseCovariance covariance_from_autocorrelation(const PowerSpectrum& spec, const ChannelParams& params)
{
    params.validate();
    validate(spec);
    if (is_white(spec))
        throw WhiteNoiseUndefined("time-domain covariance needs a pointwise autocorrelation");

    const double scale = params.coupling * params.coupling / 4.0;
    const double t0 = params.entry_time(0);
    const double diag = window_double_integral(spec, t0, t0, params.transit_time);
    std::vector<double> mu{1.0};
    for (std::size_t m = 1; m < params.uses; ++m)
        mu.push_back(window_double_integral(spec, params.entry_time(m), t0, params.transit_time) / diag);
    return PhaseCovariance::from_coefficients(scale * diag, std::move(mu));
}

double epsilon_from_g(double g)
{
    if (!(g > 0.0 && g <= 1.0))
        throw DomainError("damping g must lie in (0, 1]");
    return 0.5 * (1.0 - g);
}

double g_from_epsilon(double epsilon)
{
    if (!(epsilon >= 0.0 && epsilon < 0.5))
        throw DomainError("error probability epsilon must lie in [0, 1/2)");
    return 1.0 - 2.0 * epsilon;
}

std::string MuFeasibility::message() const
{
    std::ostringstream out;
    switch (violation) {
    case Violation::None:
        return "feasible";
    case Violation::Mu1OutOfRange:
        return "mu1 outside [0, 1]";
    case Violation::Negative:
        return "mu2 < 0 (anti-correlation is not modelled)";
    case Violation::BelowLowerBound:
        out << "mu2 below lower bound 2 mu1^2 - 1 = " << lower_bound;
        return out.str();
    case Violation::AboveMu1:
        return "mu2 > mu1";
    }
    return "unknown";
}

MuFeasibility check_mu_feasible(double mu1, double mu2)
{
    MuFeasibility verdict;
    verdict.lower_bound = std::max(0.0, 2.0 * mu1 * mu1 - 1.0);
    using V = MuFeasibility::Violation;
    if (!(mu1 >= 0.0 && mu1 <= 1.0))
        verdict.violation = V::Mu1OutOfRange;
    else if (!(mu2 >= 0.0))
        verdict.violation = V::Negative;
    else if (mu2 < 2.0 * mu1 * mu1 - 1.0)
        verdict.violation = V::BelowLowerBound;
    else if (mu2 > mu1)
        verdict.violation = V::AboveMu1;
    return verdict;
}

} // namespace memphase
