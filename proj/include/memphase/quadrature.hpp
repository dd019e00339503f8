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

#include <cstddef>
#include <functional>
#include <span>

namespace memphase::quadrature {

struct Result {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
    /// Part of `error` that is rounding noise and cannot be refined away.
    double roundoff = 0.0;
};

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 0.0;
    std::size_t max_intervals = 200000;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 15-point Gauss-Kronrod integration over [a, b].
///
/// The interval is first cut at the supplied breakpoints (values outside
/// (a, b) are ignored), then the panel with the largest error estimate is
/// bisected until the summed estimate is below max(abs_tol, rel_tol*|I|),
/// or until every panel is at its rounding floor. Throws
/// QuadratureNonConvergence when max_intervals is exhausted.
Result integrate(const Integrand& f, double a, double b, const Options& opts,
                 std::span<const double> breakpoints = {});

/// Single 15-point Kronrod panel with its embedded 7-point Gauss error
/// estimate. Exposed for tests.
Result kronrod15(const Integrand& f, double a, double b);

/// Integral of h(x) cos(c x) over [from, inf), for h decaying monotonically
/// to zero. The half-period panels between zeros of cos(c x) form an
/// alternating series, whose limit is extrapolated with the Wynn epsilon
/// algorithm. c == 0 is handled by the substitution x = from / u.
Result integrate_cosine_tail(const Integrand& h, double c, double from,
                             const Options& opts);

/// Wynn epsilon extrapolation of a sequence of partial sums. Returns the
/// best estimate of the limit and an error estimate from the last two
/// extrapolants.
Result wynn_epsilon(std::span<const double> partial_sums);

} // namespace memphase::quadrature
