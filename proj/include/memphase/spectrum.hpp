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

#include <string>
#include <variant>

namespace memphase {

/// Flat one-sided spectrum S(w) = level.
struct WhiteSpectrum {
    double level = 1.0;
};

/// Ornstein-Uhlenbeck drive: C(t) = variance * exp(-rate |t|),
/// S(w) = 2 variance rate / (rate^2 + w^2).
struct LorentzianSpectrum {
    double variance = 1.0;
    double rate = 1.0;
};

/// Banded 1/f noise: S(w) = amplitude / w on [omega_min, omega_max], 0 elsewhere.
struct OneOverFSpectrum {
    double amplitude = 1.0;
    double omega_min = 0.1;
    double omega_max = 10.0;
};

using PowerSpectrum = std::variant<WhiteSpectrum, LorentzianSpectrum, OneOverFSpectrum>;

/// Throws DomainError if the parameters do not define a valid spectrum.
void validate(const PowerSpectrum& spec);

std::string describe(const PowerSpectrum& spec);

inline bool is_white(const PowerSpectrum& spec)
{
    return std::holds_alternative<WhiteSpectrum>(spec);
}

/// S(w) for w >= 0.
double spectral_density(const PowerSpectrum& spec, double omega);

/// C(t) = (1/pi) * integral_0^inf S(w) cos(w t) dw. Closed form for the
/// Lorentzian, adaptive quadrature for 1/f. White noise has no pointwise
/// autocorrelation and throws WhiteNoiseUndefined.
double autocorrelation(const PowerSpectrum& spec, double tau);

/// C(0). Throws WhiteNoiseUndefined for white noise.
double process_variance(const PowerSpectrum& spec);

struct KernelOptions {
    /// Absolute tolerance expressed as a fraction of I(0).
    double rel_tol = 1e-10;
};

/// I(delta) = integral_0^inf (dw / 2pi) S(w) (1 - cos(w tau_p)) / w^2 cos(w delta).
///
/// The integrand is split at the half periods of its cosines and integrated
/// panel by panel up to a cutoff; the remaining semi-infinite tail is summed
/// as three alternating series (one per cosine frequency) with Wynn
/// extrapolation. Below w = 1e-3 / tau_p the transit factor is replaced by
/// its Taylor series, which removes the 0/0 at the origin.
double kernel_integral(const PowerSpectrum& spec, double tau_p, double delta,
                       const KernelOptions& opts = {});

/// Closed form of kernel_integral for white noise:
/// (level / 8) (|tau_p + delta| + |tau_p - delta| - 2 |delta|).
double white_kernel_exact(double level, double tau_p, double delta);

} // namespace memphase
