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

#include "memphase/quadrature.hpp"

#include "memphase/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

namespace memphase::quadrature {

namespace {

// Kronrod abscissae on [-1, 1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    Result r;
    bool operator<(const Panel& other) const { return r.error < other.r.error; }
};

} // namespace

Result kronrod15(const Integrand& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double abs_half = std::abs(half);

    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    double res_abs = std::abs(kronrod);

    std::array<double, 7> f_left{};
    std::array<double, 7> f_right{};
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kNodes[j];
        f_left[j] = f(center - dx);
        f_right[j] = f(center + dx);
        const double sum = f_left[j] + f_right[j];
        kronrod += kKronrodWeights[j] * sum;
        res_abs += kKronrodWeights[j] * (std::abs(f_left[j]) + std::abs(f_right[j]));
        if (j % 2 == 1)
            gauss += kGaussWeights[j / 2] * sum;
    }

    const double mean = 0.5 * kronrod;
    double res_asc = kKronrodWeights[7] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j)
        res_asc += kKronrodWeights[j] * (std::abs(f_left[j] - mean) + std::abs(f_right[j] - mean));

    Result r;
    r.value = kronrod * half;
    r.evaluations = 15;
    res_abs *= abs_half;
    res_asc *= abs_half;

    // QUADPACK error heuristic.
    double err = std::abs((kronrod - gauss) * half);
    if (res_asc != 0.0 && err != 0.0)
        err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double tiny = std::numeric_limits<double>::min();
    if (res_abs > tiny / (50.0 * eps)) {
        r.roundoff = 50.0 * eps * res_abs;
        err = std::max(r.roundoff, err);
    }
    r.error = err;
    return r;
}

Result integrate(const Integrand& f, double a, double b, const Options& opts,
                 std::span<const double> breakpoints)
{
    if (a == b)
        return {};
    if (b < a) {
        Result r = integrate(f, b, a, opts, breakpoints);
        r.value = -r.value;
        return r;
    }

    std::vector<double> cuts{a};
    for (double x : breakpoints)
        if (x > a && x < b)
            cuts.push_back(x);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<Panel> panels;
    double total = 0.0;
    double total_err = 0.0;
    double total_floor = 0.0;
    std::size_t evaluations = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Panel p{cuts[i], cuts[i + 1], kronrod15(f, cuts[i], cuts[i + 1])};
        total += p.r.value;
        total_err += p.r.error;
        total_floor += p.r.roundoff;
        evaluations += p.r.evaluations;
        panels.push(p);
    }

    auto tolerance = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };

    auto at_floor = [&] { return total_err <= 2.0 * total_floor; };

    while (total_err > tolerance() && !at_floor()) {
        if (panels.size() >= opts.max_intervals) {
            std::ostringstream msg;
            msg << "adaptive quadrature on [" << a << ", " << b << "] stopped at "
                << panels.size() << " panels with error estimate " << total_err
                << " above tolerance " << tolerance();
            throw QuadratureNonConvergence(msg.str());
        }
        Panel worst = panels.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Panel cannot be split any further in floating point.
            throw QuadratureNonConvergence("adaptive quadrature reached machine resolution");
        }
        panels.pop();
        Panel left{worst.a, mid, kronrod15(f, worst.a, mid)};
        Panel right{mid, worst.b, kronrod15(f, mid, worst.b)};
        total += left.r.value + right.r.value - worst.r.value;
        total_err += left.r.error + right.r.error - worst.r.error;
        total_floor += left.r.roundoff + right.r.roundoff - worst.r.roundoff;
        evaluations += 30;
        panels.push(left);
        panels.push(right);
    }

    // Re-sum to avoid drift from the running updates.
    Result out;
    out.evaluations = evaluations;
    while (!panels.empty()) {
        out.value += panels.top().r.value;
        out.error += panels.top().r.error;
        out.roundoff += panels.top().r.roundoff;
        panels.pop();
    }
    return out;
}

Result wynn_epsilon(std::span<const double> partial_sums)
{
    const std::size_t n = partial_sums.size();
    if (n == 0)
        return {};
    if (n < 3)
        return {partial_sums[n - 1],
                n == 2 ? std::abs(partial_sums[1] - partial_sums[0])
                       : std::numeric_limits<double>::infinity(),
                0};

    // prev = column k-1, cur = column k; even columns hold the extrapolants.
    std::vector<double> prev(n + 1, 0.0);
    std::vector<double> cur(partial_sums.begin(), partial_sums.end());
    std::vector<double> estimates{cur.back()};
    for (std::size_t k = 1; cur.size() > 1; ++k) {
        std::vector<double> next(cur.size() - 1);
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            const double diff = cur[i + 1] - cur[i];
            if (diff == 0.0) {
                // Column has converged exactly.
                const double v = (k % 2 == 1) ? cur[i + 1] : prev[i + 1];
                return {v, 0.0, 0};
            }
            next[i] = prev[i + 1] + 1.0 / diff;
        }
        prev = std::move(cur);
        cur = std::move(next);
        if (k % 2 == 0)
            estimates.push_back(cur.back());
    }

    const std::size_t m = estimates.size();
    const double best = estimates[m - 1];
    double err = std::numeric_limits<double>::infinity();
    if (m >= 2)
        err = std::abs(estimates[m - 1] - estimates[m - 2]);
    if (m >= 3)
        err = std::max(err, std::abs(estimates[m - 2] - estimates[m - 3]));
    return {best, err, 0};
}

Result integrate_cosine_tail(const Integrand& h, double c, double from, const Options& opts)
{
    if (!(from > 0.0))
        throw DomainError("cosine tail integral needs a positive lower limit");

    if (c == 0.0) {
        auto mapped = [&](double u) { return h(from / u) * from / (u * u); };
        return integrate(mapped, 0.0, 1.0, opts);
    }

    const double w = std::abs(c);
    const double half_period = std::numbers::pi / w;
    const double k0 = std::ceil(from * w / std::numbers::pi - 0.5);
    double zero = (k0 + 0.5) * half_period;
    auto integrand = [&](double x) { return h(x) * std::cos(w * x); };

    Options term_opts = opts;
    term_opts.abs_tol = opts.abs_tol * 1e-2;
    term_opts.rel_tol = 0.0;

    Result head = integrate(integrand, from, zero, term_opts);

    constexpr std::size_t kMinTerms = 8;
    constexpr std::size_t kMaxTerms = 120;
    std::vector<double> partial;
    double sum = 0.0;
    double quad_err = head.error;
    double quad_floor = head.roundoff;
    std::size_t evaluations = head.evaluations;
    Result limit;
    for (std::size_t i = 0; i < kMaxTerms; ++i) {
        const Result term = integrate(integrand, zero, zero + half_period, term_opts);
        zero += half_period;
        sum += term.value;
        quad_err += term.error;
        quad_floor += term.roundoff;
        evaluations += term.evaluations;
        partial.push_back(sum);
        if (partial.size() < kMinTerms)
            continue;
        const std::size_t window = std::min<std::size_t>(partial.size(), 30);
        limit = wynn_epsilon(std::span<const double>(partial).last(window));
        // The plain partial sum is already converged once a term is negligible.
        if (std::abs(term.value) <= 0.1 * opts.abs_tol) {
            limit = {sum, std::abs(term.value), 0};
        }
        if (limit.error + quad_err <= std::max(opts.abs_tol, 2.0 * quad_floor)) {
            return {head.value + limit.value, limit.error + quad_err, evaluations};
        }
    }
    std::ostringstream msg;
    msg << "oscillatory tail from " << from << " with frequency " << c
        << " did not converge; error estimate " << limit.error + quad_err;
    throw QuadratureNonConvergence(msg.str());
}

} // namespace memphase::quadrature
