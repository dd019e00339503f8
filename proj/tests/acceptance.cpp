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

// Acceptance run: one line per criterion, nonzero exit if any fails.

#include "memphase/channel.hpp"
#include "memphase/circuit.hpp"
#include "memphase/codes.hpp"
#include "memphase/correlation.hpp"
#include "memphase/montecarlo.hpp"

#include "oracles.hpp"

#include <Eigen/Core>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace memphase;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double budget_seconds;
    std::function<Outcome()> check;
};

std::string fmt(const char* pattern, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

double pe_tqc(double g, double mu1, double mu2) { return 1.0 - fe_tqc_memory(g, mu1, mu2); }

Outcome single_use_fidelity()
{
    double worst = 0.0;
    for (double g : {0.2, 0.5, 0.998}) {
        const double f = fe_single_via_circuit(PhaseCovariance::from_damping(g, {1.0}));
        worst = std::max(worst, std::abs(f - (1.0 + g) / 2.0));
    }
    return {worst <= 1e-12, fmt("max |F - (1+g)/2| = %.2e (tol 1e-12)", worst)};
}

Outcome closed_form_vs_circuit()
{
    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double g = 0.01 + 0.99 * unit(rng);
        const auto [mu1, mu2] = oracle::random_feasible_mu(rng);
        const auto cov = PhaseCovariance::from_damping(g, {1.0, mu1, mu2});
        worst = std::max(worst, std::abs(fe_tqc_via_circuit(cov) - fe_tqc_memory(g, mu1, mu2)));
    }
    return {worst <= 1e-12, fmt("50 points, max deviation %.2e (tol 1e-12)", worst)};
}

Outcome second_order_expansion()
{
    std::mt19937_64 rng(20260102);
    std::vector<std::pair<double, double>> points{{0.0, 0.0}, {1.0, 1.0}};
    while (points.size() < 20)
        points.push_back(oracle::random_feasible_mu(rng));

    // C is the smallest constant bounding every residual on the grid.
    double c_fit = 0.0;
    double worst_cubic = 0.0;
    for (const auto& [mu1, mu2] : points) {
        const double c2 = 3.0 + 4.0 * mu1 * mu1 + 2.0 * mu2 * mu2;
        for (int k = 0; k <= 20; ++k) {
            const double eps = std::pow(10.0, -4.0 + 2.0 * k / 20.0);
            const double residual = std::abs(pe_tqc(1.0 - 2.0 * eps, mu1, mu2) - c2 * eps * eps);
            c_fit = std::max(c_fit, residual / (eps * eps * eps));
        }
        // The residual is genuinely cubic: its coefficient matches the
        // symbolic third-order term at the small end of the range.
        const double eps = 1e-4;
        const double ratio = (pe_tqc(1.0 - 2.0 * eps, mu1, mu2) - c2 * eps * eps) / (eps * eps * eps);
        const double expected = oracle::tqc_cubic_coefficient(mu1, mu2);
        worst_cubic = std::max(worst_cubic, std::abs(ratio / expected - 1.0));
    }
    const double eps = 1e-4;
    const double g = 1.0 - 2.0 * eps;
    const double low = pe_tqc(g, 0.0, 0.0) / (eps * eps);
    const double high = pe_tqc(g, 1.0, 1.0) / (eps * eps);
    const bool ok = c_fit <= 50.0 && worst_cubic <= 0.01 && std::abs(low / 3.0 - 1.0) <= 0.01 &&
                    std::abs(high / 9.0 - 1.0) <= 0.01;
    return {ok, fmt("C = %.3f, cubic coefficient rel dev %.1e, Pe/eps^2 at 1e-4: %.5f (memoryless), %.5f (mu=1)",
                    c_fit, worst_cubic, low, high)};
}

Outcome fig2_at_1e3()
{
    const double g = 1.0 - 2.0 * 1e-3;
    double lo_seen = 1.0;
    double hi_seen = 0.0;
    bool ordering = true;
    for (int i = 0; i <= 100; ++i) {
        const double mu1 = i / 100.0;
        const double lower = pe_tqc(g, mu1, std::max(0.0, 2.0 * mu1 * mu1 - 1.0));
        const double equal = pe_tqc(g, mu1, mu1);
        lo_seen = std::min({lo_seen, lower, equal});
        hi_seen = std::max({hi_seen, lower, equal});
        if (i <= 99)
            ordering = ordering && pe_two_qubit(g, mu1) > std::max(lower, equal);
    }
    const double at_one = pe_two_qubit(g, 1.0);
    const bool ok = lo_seen >= 2.9e-6 && hi_seen <= 9.1e-6 && ordering && at_one == 0.0;
    return {ok, fmt("TQC range [%.4e, %.4e], two-qubit above TQC for mu1 <= 0.99: %s, two-qubit at mu1=1: %g", lo_seen,
                    hi_seen, ordering ? "yes" : "no", at_one)};
}

double loglog_slope(double mu1, double mu2)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = 41;
    for (int k = 0; k < n; ++k) {
        const double eps = std::pow(10.0, -4.0 + 2.0 * k / (n - 1.0));
        const double x = std::log(eps);
        const double y = std::log(pe_tqc(1.0 - 2.0 * eps, mu1, mu2));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outcome fig3_scaling()
{
    const double s0 = loglog_slope(0.0, 0.0);
    const double s1 = loglog_slope(1.0, 1.0);
    const double g = 1.0 - 2.0 * 1e-4;
    const double ratio = pe_tqc(g, 1.0, 1.0) / pe_tqc(g, 0.0, 0.0);
    const bool ok = std::abs(s0 - 2.0) <= 0.02 && std::abs(s1 - 2.0) <= 0.02 && std::abs(ratio - 3.0) <= 0.1;
    return {ok, fmt("slopes %.4f (memoryless), %.4f (mu=1), ratio at eps=1e-4 %.4f", s0, s1, ratio)};
}

Outcome route_equivalence()
{
    double worst = 0.0;
    std::string where;
    for (double rate : {0.1, 0.5, 1.0, 2.0})
        for (double tau_p : {0.5, 1.0, 1.5, 2.0})
            for (double ratio : {1.0, 1.5, 2.0, 3.0}) {
                ChannelParams p;
                p.transit_time = tau_p;
                p.spacing = ratio * tau_p;
                p.uses = 3;
                const LorentzianSpectrum spec{1.0, rate};
                const auto a = covariance_from_spectrum(spec, p);
                const auto b = covariance_from_autocorrelation(spec, p);
                const double devs[] = {std::abs(a.eta2() / b.eta2() - 1.0), std::abs(a.mu(1) / b.mu(1) - 1.0),
                                       std::abs(a.mu(2) / b.mu(2) - 1.0)};
                for (double d : devs)
                    if (d > worst) {
                        worst = d;
                        where = fmt("rate=%g tau_p=%g tau=%g", rate, tau_p, ratio * tau_p);
                    }
            }
    return {worst <= 1e-7, fmt("64 points, max relative deviation %.2e at %s (tol 1e-7)", worst, where.c_str())};
}

Outcome gaussian_identity()
{
    std::mt19937_64 rng(20260107);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::uint32_t> bits(0, 7);
    int failures = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto [mu1, mu2] = oracle::random_feasible_mu(rng);
        const auto cov = PhaseCovariance::from_coefficients(0.02 + 0.5 * unit(rng), {1.0, mu1, mu2});
        std::uint32_t j = bits(rng);
        std::uint32_t l = bits(rng);
        while (l == j)
            l = bits(rng);
        const CoherenceLabel label(j, l, 3);
        const auto est = mc_decay_factor(label, sample_phases_direct(cov, 7000 + trial, 1000000));
        const double z_re = std::abs(est.value.real() - decay_factor(label, cov)) / est.std_error.real();
        const double z_im = std::abs(est.value.imag()) / est.std_error.imag();
        worst = std::max({worst, z_re, z_im});
        if (z_re > 4.0 || z_im > 4.0)
            ++failures;
    }
    return {failures == 0, fmt("20 cases at n=1e6, largest |z| = %.2f (tol 4), failures %d", worst, failures)};
}

Outcome trajectory_oracle()
{
    const double coupling = 1.0;
    const double variance = 1.0;
    const double rate = 1.0;
    ChannelParams p;
    p.coupling = coupling;
    p.transit_time = 1.0;
    p.spacing = 1.5;
    p.uses = 3;
    const auto moments = sample_moments(
        sample_phases_trajectory(LorentzianSpectrum{variance, rate}, p, 8008, 100000, p.transit_time / 200.0));

    double worst = 0.0;
    for (Eigen::Index k = 0; k < 3; ++k)
        for (Eigen::Index kp = 0; kp < 3; ++kp) {
            const double lag = std::abs(static_cast<double>(k - kp)) * p.spacing;
            const double exact = k == kp ? oracle::lorentzian_eta2(coupling, variance, rate, p.transit_time)
                                         : oracle::lorentzian_cross(coupling, variance, rate, p.transit_time, lag);
            const double allowed = 4.0 * moments.covariance_error(k, kp) + 0.02 * std::abs(exact);
            worst = std::max(worst, std::abs(moments.covariance(k, kp) - exact) / allowed);
        }
    return {worst <= 1.0, fmt("max deviation / (4 SE + 2%%) = %.3f", worst)};
}

Outcome mc_circuit()
{
    const double g = 1.0 - 2.0 * 0.05;
    std::string detail;
    bool ok = true;
    std::uint64_t seed = 9009;
    for (auto [mu1, mu2] : {std::pair{0.0, 0.0}, std::pair{1.0, 1.0}, std::pair{0.5, 0.25}}) {
        const auto cov = PhaseCovariance::from_damping(g, {1.0, mu1, mu2});
        const auto est = mc_tqc_fidelity(sample_phases_direct(cov, seed++, 1000000));
        const double z = std::abs(est.value.real() - fe_tqc_memory(g, mu1, mu2)) / est.standard_error();
        ok = ok && z <= 4.0;
        detail += fmt("(%g,%g) z=%.2f ", mu1, mu2, z);
    }
    return {ok, detail + "(tol 4)"};
}

Outcome mu2_minimum()
{
    const double g = 0.998;
    const double h = 1e-5;
    double worst_slope = 0.0;
    double off_slope = 1.0;
    bool minimum = true;
    int inside = 0;
    for (double mu1 : {0.2, 0.5, 0.8}) {
        const double opt = mu2_opt(g, mu1).value;
        const double slope = (pe_tqc(g, mu1, opt + h) - pe_tqc(g, mu1, opt - h)) / (2.0 * h);
        worst_slope = std::max(worst_slope, std::abs(slope));
        // The same difference quotient is far from zero away from the optimum.
        const double off = (pe_tqc(g, mu1, opt + 0.1 + h) - pe_tqc(g, mu1, opt + 0.1 - h)) / (2.0 * h);
        off_slope = std::min(off_slope, std::abs(off));
        const double lo = std::max(0.0, 2.0 * mu1 * mu1 - 1.0);
        if (opt < lo || opt > mu1)
            continue;
        ++inside;
        const double best = pe_tqc(g, mu1, opt);
        for (int i = 0; i <= 1000; ++i)
            minimum = minimum && best <= pe_tqc(g, mu1, lo + (mu1 - lo) * i / 1000.0);
    }
    return {worst_slope <= 1e-8 && minimum && inside > 0,
            fmt("max |dPe/dmu2| = %.2e (tol 1e-8; %.2e at mu2_opt + 0.1), grid minimum confirmed at %d in-band "
                "points: %s",
                worst_slope, off_slope, inside, minimum ? "yes" : "no")};
}

Outcome single_flip_correction()
{
    double worst = 0.0;
    const std::vector<std::size_t> keep{tqc::kReference, tqc::kSystem};
    for (std::size_t q : tqc::kTransmitted) {
        const auto flipped = apply_pauli_z(tqc_encode(prepare_bell_with_ancillas()), q);
        const double f = entanglement_fidelity(partial_trace(tqc_decode(flipped), keep), bell_state());
        worst = std::max(worst, std::abs(f - 1.0));
    }
    return {worst <= 1e-12, fmt("max |F - 1| over Z on Q, A, B = %.2e (tol 1e-12)", worst)};
}

Outcome channel_invariants()
{
    std::mt19937_64 rng(20260112);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double trace_err = 0.0;
    double herm_err = 0.0;
    double min_eig = 1.0;
    bool populations = true;
    double factor_err = 0.0;
    const std::vector<std::size_t> all{0, 1, 2};
    for (int trial = 0; trial < 200; ++trial) {
        const auto [mu1, mu2] = oracle::random_feasible_mu(rng);
        const double g = 0.01 + 0.99 * unit(rng);
        const auto cov = PhaseCovariance::from_damping(g, {1.0, mu1, mu2});
        const DensityMatrix rho(oracle::random_density(8, rng));
        const auto out = apply_channel(rho, cov, all);
        trace_err = std::max(trace_err, std::abs(out.trace() - rho.trace()));
        herm_err = std::max(herm_err, out.hermiticity_error());
        min_eig = std::min(min_eig, out.min_eigenvalue());
        for (Eigen::Index i = 0; i < 8; ++i)
            populations = populations && out(i, i) == rho(i, i);

        const auto memoryless = apply_channel(rho, PhaseCovariance::from_damping(g, {1.0, 0.0, 0.0}), all);
        const auto single = PhaseCovariance::from_damping(g, {1.0});
        DensityMatrix chained = rho;
        for (std::size_t q : all) {
            const std::vector<std::size_t> one{q};
            chained = apply_channel(chained, single, one);
        }
        factor_err = std::max(factor_err, (memoryless.matrix() - chained.matrix()).cwiseAbs().maxCoeff());
    }
    const bool ok = trace_err <= 1e-12 && herm_err <= 1e-12 && min_eig >= -1e-10 && populations && factor_err <= 1e-12;
    return {ok, fmt("trace %.1e, hermiticity %.1e, min eigenvalue %.2e, populations exact: %s, factorization %.1e",
                    trace_err, herm_err, min_eig, populations ? "yes" : "no", factor_err)};
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "single-use fidelity from the circuit equals (1+g)/2", 1.0, single_use_fidelity},
        {2, "three-qubit closed form equals the circuit", 5.0, closed_form_vs_circuit},
        {3, "second-order expansion with cubic remainder", 5.0, second_order_expansion},
        {4, "error curves at eps = 1e-3 versus mu1", 5.0, fig2_at_1e3},
        {5, "quadratic scaling and memory penalty", 5.0, fig3_scaling},
        {6, "time-domain and spectral covariance routes agree", 30.0, route_equivalence},
        {7, "Gaussian average equals the decay factor", 60.0, gaussian_identity},
        {8, "OU trajectories reproduce the phase covariance", 120.0, trajectory_oracle},
        {9, "sampled three-qubit fidelity at eps = 0.05", 120.0, mc_circuit},
        {10, "mu2 optimum is a stationary minimum", 5.0, mu2_minimum},
        {11, "single phase flips are corrected", 1.0, single_flip_correction},
        {12, "channel invariants on random states", 10.0, channel_invariants},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.check();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = seconds <= c.budget_seconds;
        const bool passed = outcome.passed && in_time;
        failed += passed ? 0 : 1;
        std::printf("[%s] %2d %s: %s; %.2f s (budget %.0f s%s)\n", passed ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    outcome.detail.c_str(), seconds, c.budget_seconds, in_time ? "" : ", exceeded");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
