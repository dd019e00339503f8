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

#include "memphase/montecarlo.hpp"

#include "memphase/circuit.hpp"
#include "memphase/errors.hpp"
#include "memphase/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

namespace memphase {

namespace {

std::atomic<std::size_t> g_worker_override{0};

std::size_t chunk_count(std::size_t n)
{
    return (n + kChunkSize - 1) / kChunkSize;
}

// Running mean and sum of squared deviations; merged in chunk order.
struct Moments {
    double count = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x)
    {
        count += 1.0;
        const double d = x - mean;
        mean += d / count;
        m2 += d * (x - mean);
    }

    void merge(const Moments& o)
    {
        if (o.count == 0.0)
            return;
        const double total = count + o.count;
        const double d = o.mean - mean;
        mean += d * o.count / total;
        m2 += o.m2 + d * d * count * o.count / total;
        count = total;
    }

    double std_error() const
    {
        if (count < 2.0)
            return 0.0;
        return std::sqrt(m2 / (count - 1.0) / count);
    }
};

} // namespace

std::size_t worker_count()
{
    if (const std::size_t forced = g_worker_override.load(); forced > 0)
        return forced;
    if (const char* env = std::getenv("MEMPHASE_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0)
                return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void set_worker_count(std::size_t workers)
{
    g_worker_override.store(workers);
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      0x6d706873u};
    return std::mt19937_64(seq);
}

PhaseEnsemble::PhaseEnsemble(std::size_t uses, std::size_t samples, std::uint64_t seed)
    : uses_(uses), samples_(samples), seed_(seed), data_(uses * samples, 0.0)
{
}

PhaseEnsemble sample_phases_direct(const PhaseCovariance& cov, std::uint64_t seed, std::size_t n)
{
    const Eigen::MatrixXd sigma = cov.matrix();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma);
    if (eig.info() != Eigen::Success)
        throw NotPositiveSemidefinite("eigendecomposition of the phase covariance failed");
    Eigen::VectorXd values = eig.eigenvalues();
    if (values.minCoeff() < -1e-10 * std::max(cov.eta2(), 1e-300))
        throw NotPositiveSemidefinite("phase covariance is not positive semidefinite");
    values = values.cwiseMax(0.0).cwiseSqrt();
    const Eigen::MatrixXd factor = eig.eigenvectors() * values.asDiagonal();

    const std::size_t uses = cov.uses();
    PhaseEnsemble ensemble(uses, n, seed);
    run_parallel(chunk_count(n), [&](std::size_t c) {
        auto rng = substream(seed, c);
        std::normal_distribution<double> normal;
        Eigen::VectorXd z(static_cast<Eigen::Index>(uses));
        const std::size_t end = std::min(n, (c + 1) * kChunkSize);
        for (std::size_t i = c * kChunkSize; i < end; ++i) {
            for (Eigen::Index k = 0; k < z.size(); ++k)
                z(k) = normal(rng);
            Eigen::Map<Eigen::VectorXd>(ensemble.sample(i).data(), z.size()) = factor * z;
        }
    });
    return ensemble;
}

PhaseEnsemble sample_phases_trajectory(const LorentzianSpectrum& spec, const ChannelParams& params,
                                       std::uint64_t seed, std::size_t n, double dt)
{
    validate(PowerSpectrum{spec});
    params.validate();
    if (!(dt > 0.0) || dt > params.transit_time / 50.0)
        throw StepTooCoarse("trajectory step dt must be in (0, tau_p / 50]");

    struct Step {
        double decay;
        double noise;
        double weight;  // (lambda / 2) * h / 2 for the trapezoid, 0 in gaps
        std::size_t window;
    };
    const auto substeps = static_cast<std::size_t>(std::ceil(params.transit_time / dt - 1e-9));
    const double h = params.transit_time / static_cast<double>(substeps);
    auto make_step = [&](double length, double weight, std::size_t window) {
        const double decay = std::exp(-spec.rate * length);
        return Step{decay, std::sqrt(spec.variance * (1.0 - decay * decay)), weight, window};
    };

    std::vector<Step> schedule;
    const double weight = 0.5 * params.coupling * 0.5 * h;
    for (std::size_t k = 0; k < params.uses; ++k) {
        for (std::size_t i = 0; i < substeps; ++i)
            schedule.push_back(make_step(h, weight, k));
        const double gap = params.spacing - params.transit_time;
        if (k + 1 < params.uses && gap > 0.0)
            schedule.push_back(make_step(gap, 0.0, k));
    }

    const double stationary_sd = std::sqrt(spec.variance);
    PhaseEnsemble ensemble(params.uses, n, seed);
    run_parallel(chunk_count(n), [&](std::size_t c) {
        auto rng = substream(seed, c);
        std::normal_distribution<double> normal;
        const std::size_t end = std::min(n, (c + 1) * kChunkSize);
        for (std::size_t i = c * kChunkSize; i < end; ++i) {
            auto phases = ensemble.sample(i);
            double xi = stationary_sd * normal(rng);
            for (const Step& s : schedule) {
                const double next = xi * s.decay + s.noise * normal(rng);
                phases[s.window] += s.weight * (xi + next);
                xi = next;
            }
        }
    });
    return ensemble;
}

McEstimate mc_decay_factor(const CoherenceLabel& label, const PhaseEnsemble& ensemble)
{
    if (ensemble.size() == 0)
        throw EmptyEnsemble("decay factor estimate needs at least one sample");
    if (label.length() != ensemble.uses())
        throw DimensionMismatch("label length differs from the ensemble dimension");
    const auto s = label.weights();

    const std::size_t chunks = chunk_count(ensemble.size());
    std::vector<std::array<Moments, 2>> partial(chunks);
    run_parallel(chunks, [&](std::size_t c) {
        const std::size_t end = std::min(ensemble.size(), (c + 1) * kChunkSize);
        for (std::size_t i = c * kChunkSize; i < end; ++i) {
            const auto phi = ensemble.sample(i);
            double angle = 0.0;
            for (std::size_t k = 0; k < s.size(); ++k)
                angle += s[k] * phi[k];
            partial[c][0].add(std::cos(2.0 * angle));
            partial[c][1].add(std::sin(2.0 * angle));
        }
    });

    Moments re;
    Moments im;
    for (const auto& p : partial) {
        re.merge(p[0]);
        im.merge(p[1]);
    }
    return {{re.mean, im.mean}, {re.std_error(), im.std_error()}, ensemble.size(), ensemble.seed()};
}

McEstimate mc_tqc_fidelity(const PhaseEnsemble& ensemble, std::size_t batches)
{
    if (ensemble.size() == 0)
        throw EmptyEnsemble("fidelity estimate needs at least one sample");
    if (ensemble.uses() != 3)
        throw DimensionMismatch("three-qubit code needs a 3-use ensemble");
    batches = std::clamp<std::size_t>(batches, 1, ensemble.size());

    const JointState encoded = tqc_encode(prepare_bell_with_ancillas());
    constexpr std::array<std::size_t, 2> rq{tqc::kReference, tqc::kSystem};
    const Eigen::VectorXcd bell = bell_state();

    // Q, A, B are the three least significant bits of the register index,
    // Q the most significant of them.
    std::array<std::array<int, 3>, 8> signs{};
    for (int a = 0; a < 8; ++a)
        for (int k = 0; k < 3; ++k)
            signs[a][k] = ((a >> (2 - k)) & 1) ? -1 : 1;

    const std::size_t n = ensemble.size();
    std::vector<double> fidelity(batches);
    std::vector<std::size_t> sizes(batches);
    run_parallel(batches, [&](std::size_t b) {
        const std::size_t begin = b * n / batches;
        const std::size_t end = (b + 1) * n / batches;
        Eigen::Matrix<std::complex<double>, 8, 8> phase_avg = Eigen::Matrix<std::complex<double>, 8, 8>::Zero();
        std::array<std::complex<double>, 8> u{};
        for (std::size_t i = begin; i < end; ++i) {
            const auto phi = ensemble.sample(i);
            for (int a = 0; a < 8; ++a) {
                const double theta = signs[a][0] * phi[0] + signs[a][1] * phi[1] + signs[a][2] * phi[2];
                u[a] = std::polar(1.0, -theta);
            }
            for (int a = 0; a < 8; ++a)
                for (int c = 0; c < 8; ++c)
                    phase_avg(a, c) += u[a] * std::conj(u[c]);
        }
        const double count = static_cast<double>(end - begin);
        Eigen::MatrixXcd rho = encoded.matrix();
        for (Eigen::Index j = 0; j < rho.rows(); ++j)
            for (Eigen::Index l = 0; l < rho.cols(); ++l)
                rho(j, l) *= phase_avg(j & 7, l & 7) / count;
        const JointState decoded = tqc_decode(DensityMatrix(std::move(rho)));
        fidelity[b] = entanglement_fidelity(partial_trace(decoded, rq), bell);
        sizes[b] = end - begin;
    });

    double weighted = 0.0;
    for (std::size_t b = 0; b < batches; ++b)
        weighted += fidelity[b] * static_cast<double>(sizes[b]);
    const double value = weighted / static_cast<double>(n);

    double spread = 0.0;
    double batch_mean = 0.0;
    for (double f : fidelity)
        batch_mean += f;
    batch_mean /= static_cast<double>(batches);
    for (double f : fidelity)
        spread += (f - batch_mean) * (f - batch_mean);
    const double b = static_cast<double>(batches);
    const double se = batches > 1 ? std::sqrt(spread / (b * (b - 1.0))) : 0.0;
    return {{value, 0.0}, {se, 0.0}, n, ensemble.seed()};
}

MomentEstimate sample_moments(const PhaseEnsemble& ensemble)
{
    if (ensemble.size() == 0)
        throw EmptyEnsemble("moment estimate needs at least one sample");
    const std::size_t d = ensemble.uses();
    const std::size_t chunks = chunk_count(ensemble.size());
    // d means followed by d*d products per chunk.
    std::vector<std::vector<Moments>> partial(chunks, std::vector<Moments>(d + d * d));
    run_parallel(chunks, [&](std::size_t c) {
        const std::size_t end = std::min(ensemble.size(), (c + 1) * kChunkSize);
        auto& acc = partial[c];
        for (std::size_t i = c * kChunkSize; i < end; ++i) {
            const auto phi = ensemble.sample(i);
            for (std::size_t k = 0; k < d; ++k) {
                acc[k].add(phi[k]);
                for (std::size_t kp = 0; kp < d; ++kp)
                    acc[d + k * d + kp].add(phi[k] * phi[kp]);
            }
        }
    });
    std::vector<Moments> total(d + d * d);
    for (const auto& p : partial)
        for (std::size_t i = 0; i < total.size(); ++i)
            total[i].merge(p[i]);

    const auto dim = static_cast<Eigen::Index>(d);
    MomentEstimate out{Eigen::VectorXd(dim), Eigen::VectorXd(dim), Eigen::MatrixXd(dim, dim),
                       Eigen::MatrixXd(dim, dim)};
    for (std::size_t k = 0; k < d; ++k) {
        const auto ki = static_cast<Eigen::Index>(k);
        out.mean(ki) = total[k].mean;
        out.mean_error(ki) = total[k].std_error();
        for (std::size_t kp = 0; kp < d; ++kp) {
            const auto kpi = static_cast<Eigen::Index>(kp);
            out.covariance(ki, kpi) = total[d + k * d + kp].mean;
            out.covariance_error(ki, kpi) = total[d + k * d + kp].std_error();
        }
    }
    return out;
}

} // namespace memphase
