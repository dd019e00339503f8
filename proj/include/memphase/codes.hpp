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

#include "memphase/correlation.hpp"

namespace memphase {

/// Operating point of a code: single-use damping g and the lag-1 and lag-2
/// correlation coefficients.
struct CodePoint {
    double g = 1.0;
    double mu1 = 0.0;
    double mu2 = 0.0;

    static CodePoint from_epsilon(double epsilon, double mu1, double mu2)
    {
        return {g_from_epsilon(epsilon), mu1, mu2};
    }
    double epsilon() const { return epsilon_from_g(g); }
    MuFeasibility feasibility() const { return check_mu_feasible(mu1, mu2); }
};

/// Uncoded single use: (1 + g) / 2.
double fe_single(double g);

/// Three-qubit code fidelity with general pairwise correlations between the
/// uses carrying Q, A and B.
double fe_tqc_general(double g, double mu_qa, double mu_qb, double mu_ab);

/// Stationary case mu_QA = mu_AB = mu1, mu_QB = mu2.
double fe_tqc_memory(double g, double mu1, double mu2);

/// Second-order expansion 1 - (3 + 4 mu1^2 + 2 mu2^2) eps^2, intended for
/// eps <= 0.05. Not range-checked.
double fe_tqc_approx(double epsilon, double mu1, double mu2);

/// Error probability of the two-qubit code on span{|01>, |10>}:
/// (1 - g^(2 - 2 mu1)) / 2.
double pe_two_qubit(double g, double mu1);

struct TqcEvaluation {
    double fidelity = 1.0;
    double error_probability = 0.0;
    MuFeasibility feasibility;
};

/// Memory TQC fidelity at a code point, with the (mu1, mu2)
/// feasibility verdict attached. Infeasible points are still evaluated.
TqcEvaluation evaluate_tqc(const CodePoint& point);

struct Mu2Optimum {
    double value = 0.0;         // unconstrained stationary point
    double clamped = 0.0;       // value projected on the feasible band
    bool inside_band = false;
};

/// Stationary point of the memory TQC error in mu2,
/// -0.25 log_g[(g^(4 mu1) + g^(-4 mu1)) / 2]. Needs g in (0, 1).
Mu2Optimum mu2_opt(double g, double mu1);

/// Exact fidelity of the full pipeline: Bell pair with ancillas, encoder,
/// correlated channel on (Q, A, B), decoder, trace over A and B.
double fe_tqc_via_circuit(const PhaseCovariance& cov);

/// Single-use fidelity from the pipeline: half of the Bell pair through one use.
double fe_single_via_circuit(const PhaseCovariance& cov);

} // namespace memphase
