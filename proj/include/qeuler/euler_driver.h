// Copyright 2026 The qeuler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QEULER_EULER_DRIVER_H
#define QEULER_EULER_DRIVER_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qeuler/nonlin_step.h"
#include "qeuler/polysys.h"

namespace qeuler {

struct ResourcePlan {
    std::size_t m = 0;
    double epsilon = 0.0;
    /// eps^2 / 2, the per-pair success probability of a measure-preserving step.
    double p = 0.0;
    double lambda = 0.0;
    double base = 16.0;
    /// log10 of N0 = (base / p)^m.
    double log10_n0 = 0.0;
    /// True when N0 below is the exact ceiling of (base / p)^m.
    bool exact = false;
    std::uint64_t n0 = 0;
    /// Alternative copy counts, log10: (8 / p)^m and (gamma / p)^m with gamma = 2 sqrt2 / eps.
    double log10_n_base8 = 0.0;
    double log10_n_gamma = 0.0;
    double gamma = 0.0;
};

/// lambda defaults to p / 2. Requires m >= 1, eps > 0, p < 1 and 0 < lambda < p.
ResourcePlan plan_resources(std::size_t m, double epsilon, double base = 16.0, std::optional<double> lambda = std::nullopt);

struct NoiseModel {
    double eta = 0.0;
    std::uint64_t stream = 0;
};

struct RunReport {
    /// iterates[j] is the decoded state after j steps (iterates[0] = z0).
    std::vector<CVector> iterates;
    /// Per-step post-selection probability and recovered ||F||.
    std::vector<double> probabilities;
    std::vector<double> norm_factors;
    /// Monte-Carlo: copy_counts[0] = N0, copy_counts[j] = states produced in round j.
    std::vector<std::uint64_t> copy_counts;
    /// Monte-Carlo: rounds whose success count fell to lambda * pairs or below.
    std::vector<std::size_t> flagged_rounds;
    bool success = true;
    std::string message;
    /// Noise study, indexed by step 0..m: max over trials of the observed
    /// distance and the closed-form bound.
    std::vector<double> delta_observed;
    std::vector<double> delta_bound;
    std::size_t trials = 0;
    std::size_t bound_violations = 0;
    std::size_t recurrence_violations = 0;
    double gamma = 0.0;
    double epsilon = 0.0;
    /// Integration only: step size, and the advisory measure-preservation residual.
    double h = 0.0;
    std::optional<double> measure_residual;
};

/// m exact steps on the success branch, chaining the post-selected states.
RunReport run_deterministic(
    const PolynomialMap &map, const CVector &z0, std::size_t m, std::optional<double> epsilon = std::nullopt);

struct BranchingResult {
    std::vector<std::uint64_t> copy_counts;
    std::vector<std::size_t> flagged_rounds;
    bool success = true;
    /// 1-based round at which the copy count fell below the threshold.
    std::size_t failed_round = 0;
};

/// Copy-count simulation of the pairing process: round r draws
/// S ~ Binomial(N/2, probabilities[r-1]), keeps N := 2 floor(S/2) states, and
/// fails when S < 2^(m-r).
BranchingResult simulate_branching(
    std::uint64_t n0, std::span<const double> probabilities, double lambda, Rng &rng);

RunReport run_montecarlo(const PolynomialMap &map, const CVector &z0, const ResourcePlan &plan, Rng &rng);

enum class RunMode { deterministic, montecarlo };

struct IntegrateOptions {
    RunMode mode = RunMode::deterministic;
    std::optional<double> epsilon;
    double plan_base = 16.0;
    std::optional<double> lambda;
    std::uint64_t seed = 0;
};

/// Quantum Euler integration to time t in m steps of h = t / m.
RunReport integrate(const OdeSystem &sys, const CVector &z0, double t, std::size_t m, const IntegrateOptions &options = {});

/// (eta / 3) (((3 gamma)^(m+1) - 1) / (3 gamma - 1) - 1).
double error_bound(double eta, double gamma, std::size_t m);

/// gamma = 2 sqrt2 / eps.
double error_gamma(double epsilon);

/// Runs `trials` noisy m-step iterations with V = U exp(i eta G) and
/// compares each against the ideal orbit. Quadratic maps only.
RunReport noise_study(
    const PolynomialMap &map,
    const CVector &z0,
    std::size_t m,
    std::optional<double> epsilon,
    const NoiseModel &noise,
    std::size_t trials,
    std::uint64_t master_seed);

}  // namespace qeuler

#endif  // QEULER_EULER_DRIVER_H
