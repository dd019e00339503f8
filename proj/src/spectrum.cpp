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

#include "memphase/spectrum.hpp"

#include "memphase/errors.hpp"
#include "memphase/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

namespace memphase {

namespace {

using std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// (1 - cos(a w)) / w^2, finite at w = 0.
double transit_factor(double a, double w)
{
    if (w < 1e-3 / a) {
        const double a2 = a * a;
        const double w2 = w * w;
        return a2 / 2.0 - a2 * a2 * w2 / 24.0 + a2 * a2 * a2 * w2 * w2 / 720.0;
    }
    const double s = std::sin(0.5 * a * w);
    return 2.0 * s * s / (w * w);
}

// Breakpoints at every half period of the fastest cosine in the integrand.
std::vector<double> half_period_cuts(double lo, double hi, double fastest)
{
    std::vector<double> cuts;
    if (fastest <= 0.0)
        return cuts;
    const double step = pi / fastest;
    const auto count = static_cast<std::size_t>(std::ceil((hi - lo) / step));
    if (count > 2000000)
        throw QuadratureNonConvergence("kernel integrand oscillates too fast for panel quadrature");
    cuts.reserve(count);
    for (double x = (std::floor(lo / step) + 1.0) * step; x < hi; x += step)
        cuts.push_back(x);
    return cuts;
}

double raw_kernel(const PowerSpectrum& spec, double a, double b, double abs_tol)
{
    auto integrand = [&](double w) {
        return spectral_density(spec, w) / (2.0 * pi) * transit_factor(a, w) * std::cos(b * w);
    };

    if (const auto* band = std::get_if<OneOverFSpectrum>(&spec)) {
        const auto cuts = half_period_cuts(band->omega_min, band->omega_max, a + b);
        quadrature::Options opts{abs_tol, 0.0, 400000};
        return quadrature::integrate(integrand, band->omega_min, band->omega_max, opts, cuts).value;
    }

    // Body up to the cutoff, then the tail with h(w) = S(w) / (2 pi w^2)
    // and (1 - cos aw) cos bw = cos bw - cos((a+b)w)/2 - cos((a-b)w)/2.
    double cutoff = 100.0 * pi / a;
    if (const auto* lor = std::get_if<LorentzianSpectrum>(&spec))
        cutoff = std::max(cutoff, 50.0 * lor->rate);

    const auto cuts = half_period_cuts(0.0, cutoff, a + b);
    quadrature::Options body_opts{0.5 * abs_tol, 0.0, 400000};
    const double body = quadrature::integrate(integrand, 0.0, cutoff, body_opts, cuts).value;

    auto envelope = [&](double w) { return spectral_density(spec, w) / (2.0 * pi * w * w); };
    quadrature::Options tail_opts{abs_tol / 6.0, 0.0, 400000};
    auto tail = [&](double c) {
        if (std::abs(c) <= 1e-12 * a)
            c = 0.0;
        return quadrature::integrate_cosine_tail(envelope, c, cutoff, tail_opts).value;
    };
    return body + tail(b) - 0.5 * tail(a + b) - 0.5 * tail(a - b);
}

} // namespace

void validate(const PowerSpectrum& spec)
{
    std::visit(overloaded{
                   [](const WhiteSpectrum& s) {
                       if (!(s.level > 0.0) || !std::isfinite(s.level))
                           throw DomainError("white spectrum level must be positive");
                   },
                   [](const LorentzianSpectrum& s) {
                       if (!(s.variance > 0.0) || !std::isfinite(s.variance))
                           throw DomainError("Lorentzian variance must be positive");
                       if (!(s.rate > 0.0) || !std::isfinite(s.rate))
                           throw DomainError("Lorentzian rate must be positive");
                   },
                   [](const OneOverFSpectrum& s) {
                       if (!(s.amplitude > 0.0) || !std::isfinite(s.amplitude))
                           throw DomainError("1/f amplitude must be positive");
                       if (!(s.omega_min > 0.0) || !(s.omega_max > s.omega_min) ||
                           !std::isfinite(s.omega_max))
                           throw DomainError("1/f cutoffs must satisfy 0 < omega_min < omega_max");
                   },
               },
               spec);
}

std::string describe(const PowerSpectrum& spec)
{
    std::ostringstream out;
    out.precision(17);
    std::visit(overloaded{
                   [&](const WhiteSpectrum& s) { out << "white(level=" << s.level << ")"; },
                   [&](const LorentzianSpectrum& s) {
                       out << "lorentzian(variance=" << s.variance << ", rate=" << s.rate << ")";
                   },
                   [&](const OneOverFSpectrum& s) {
                       out << "one_over_f(amplitude=" << s.amplitude << ", omega_min=" << s.omega_min
                           << ", omega_max=" << s.omega_max << ")";
                   },
               },
               spec);
    return out.str();
}

double spectral_density(const PowerSpectrum& spec, double omega)
{
    if (omega < 0.0)
        throw DomainError("spectral density is one-sided; omega must be >= 0");
    return std::visit(overloaded{
                          [](const WhiteSpectrum& s) { return s.level; },
                          [&](const LorentzianSpectrum& s) {
                              return 2.0 * s.variance * s.rate / (s.rate * s.rate + omega * omega);
                          },
                          [&](const OneOverFSpectrum& s) {
                              if (omega < s.omega_min || omega > s.omega_max)
                                  return 0.0;
                              return s.amplitude / omega;
                          },
                      },
                      spec);
}

double process_variance(const PowerSpectrum& spec)
{
    return std::visit(overloaded{
                          [](const WhiteSpectrum&) -> double {
                              throw WhiteNoiseUndefined("white noise has infinite variance");
                          },
                          [](const LorentzianSpectrum& s) { return s.variance; },
                          [](const OneOverFSpectrum& s) {
                              return s.amplitude / pi * std::log(s.omega_max / s.omega_min);
                          },
                      },
                      spec);
}

double autocorrelation(const PowerSpectrum& spec, double tau)
{
    return std::visit(
        overloaded{
            [](const WhiteSpectrum&) -> double {
                throw WhiteNoiseUndefined(
                    "white noise autocorrelation is a delta function; use kernel_integral");
            },
            [&](const LorentzianSpectrum& s) { return s.variance * std::exp(-s.rate * std::abs(tau)); },
            [&](const OneOverFSpectrum& s) {
                const double t = std::abs(tau);
                if (t == 0.0)
                    return process_variance(spec);
                auto integrand = [&](double w) { return s.amplitude / w * std::cos(w * t) / pi; };
                const auto cuts = half_period_cuts(s.omega_min, s.omega_max, t);
                quadrature::Options opts{1e-14 * process_variance(spec), 0.0, 400000};
                return quadrature::integrate(integrand, s.omega_min, s.omega_max, opts, cuts).value;
            },
        },
        spec);
}

double kernel_integral(const PowerSpectrum& spec, double tau_p, double delta, const KernelOptions& opts)
{
    validate(spec);
    if (!(tau_p > 0.0) || !std::isfinite(tau_p))
        throw DomainError("transit time tau_p must be positive");
    if (!std::isfinite(delta))
        throw DomainError("lag delta must be finite");
    const double b = std::abs(delta);

    // I(0) has a nonnegative integrand, so a relative tolerance is meaningful.
    // A first pass without refinement fixes the magnitude of the tolerance.
    const double rough = raw_kernel(spec, tau_p, 0.0, std::numeric_limits<double>::infinity());
    const double scale = raw_kernel(spec, tau_p, 0.0, 1e-12 * std::abs(rough));
    if (b == 0.0)
        return scale;
    return raw_kernel(spec, tau_p, b, opts.rel_tol * scale);
}

double white_kernel_exact(double level, double tau_p, double delta)
{
    const double a = tau_p;
    const double b = std::abs(delta);
    return level / 8.0 * (std::abs(a + b) + std::abs(a - b) - 2.0 * b);
}

} // namespace memphase
