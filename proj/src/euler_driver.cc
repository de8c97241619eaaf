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

#include "qeuler/euler_driver.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qeuler {

ResourcePlan plan_resources(std::size_t m, double epsilon, double base, std::optional<double> lambda) {
    if (m == 0) {
        throw std::invalid_argument("resource plan needs m >= 1");
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("resource plan needs eps > 0");
    }
    if (!(base > 0.0)) {
        throw std::invalid_argument("copy-count base must be positive");
    }
    ResourcePlan plan;
    plan.m = m;
    plan.epsilon = epsilon;
    plan.p = epsilon * epsilon / 2.0;
    plan.base = base;
    plan.lambda = lambda.value_or(plan.p / 2.0);
    if (!(plan.p < 1.0)) {
        throw std::invalid_argument("success probability eps^2/2 must be below 1");
    }
    if (!(plan.lambda > 0.0 && plan.lambda < plan.p)) {
        throw std::invalid_argument("lambda must satisfy 0 < lambda < p");
    }
    const double md = static_cast<double>(m);
    plan.gamma = error_gamma(epsilon);
    plan.log10_n0 = md * std::log10(base / plan.p);
    plan.log10_n_base8 = md * std::log10(8.0 / plan.p);
    plan.log10_n_gamma = md * std::log10(plan.gamma / plan.p);
    if (plan.log10_n0 < md * std::log10(2.0)) {
        throw std::invalid_argument("plan gives fewer than 2^m initial copies");
    }

    // The double evaluation of (base/p)^m carries a relative error of about
    // (m+1) ulp; the ceiling is only trusted while that stays below 1/4.
    const double rel_error = 4.0 * (md + 1.0) * std::ldexp(1.0, -53);
    const double x = std::pow(base / plan.p, md);
    if (std::isfinite(x) && x * rel_error < 0.25 && x < std::ldexp(1.0, 63)) {
        const double nearest = std::nearbyint(x);
        const double value = std::abs(x - nearest) <= x * rel_error ? nearest : std::ceil(x);
        plan.n0 = static_cast<std::uint64_t>(value);
        plan.exact = true;
    }
    return plan;
}

RunReport run_deterministic(const PolynomialMap &map, const CVector &z0, std::size_t m, std::optional<double> epsilon) {
    const StepOperator op(map, epsilon);
    RunReport report;
    report.epsilon = op.epsilon();
    report.iterates.push_back(z0);
    AmplitudeState state = encode(z0);
    for (std::size_t j = 1; j <= m; ++j) {
        StepOutcome out = step_state(state, op);
        if (out.probability < 1e-15) {
            throw std::runtime_error("vanishing success probability at step " + std::to_string(j));
        }
        state = *out.posterior;
        report.iterates.push_back(decode(state));
        report.probabilities.push_back(out.probability);
        report.norm_factors.push_back(out.norm_factor);
    }
    return report;
}

BranchingResult simulate_branching(std::uint64_t n0, std::span<const double> probabilities, double lambda, Rng &rng) {
    BranchingResult result;
    result.copy_counts.push_back(n0);
    const std::size_t m = probabilities.size();
    std::uint64_t copies = n0;
    for (std::size_t round = 1; round <= m; ++round) {
        const std::uint64_t pairs = copies / 2;
        const std::uint64_t produced = rng.binomial(pairs, probabilities[round - 1]);
        result.copy_counts.push_back(produced);
        if (static_cast<double>(produced) <= lambda * static_cast<double>(pairs)) {
            result.flagged_rounds.push_back(round);
        }
        const std::uint64_t threshold = std::uint64_t{1} << (m - round);
        if (produced < threshold) {
            result.success = false;
            result.failed_round = round;
            break;
        }
        copies = 2 * (produced / 2);
    }
    return result;
}

RunReport run_montecarlo(const PolynomialMap &map, const CVector &z0, const ResourcePlan &plan, Rng &rng) {
    if (!plan.exact) {
        throw std::invalid_argument("Monte-Carlo run needs an exactly representable initial copy count");
    }
    RunReport report = run_deterministic(map, z0, plan.m, plan.epsilon);
    BranchingResult branching = simulate_branching(plan.n0, report.probabilities, plan.lambda, rng);
    report.copy_counts = std::move(branching.copy_counts);
    report.flagged_rounds = std::move(branching.flagged_rounds);
    report.success = branching.success;
    if (!branching.success) {
        const std::size_t r = branching.failed_round;
        const std::size_t kept = report.copy_counts[r] > 0 ? r : r - 1;
        report.iterates.resize(kept + 1);
        report.probabilities.resize(r);
        report.norm_factors.resize(r);
        report.message = "algorithm failed: round " + std::to_string(r) + " produced " +
                         std::to_string(report.copy_counts[r]) + " states, below 2^" + std::to_string(plan.m - r);
    }
    return report;
}

RunReport integrate(const OdeSystem &sys, const CVector &z0, double t, std::size_t m, const IntegrateOptions &options) {
    if (!(t > 0.0) || m == 0) {
        throw std::invalid_argument("integration needs t > 0 and m >= 1");
    }
    const double h = t / static_cast<double>(m);
    const PolynomialMap map = euler_map(sys, h);
    const MeasureCheck check = check_ode_measure_preserving(sys, 64, 1e-9, options.seed);

    RunReport report;
    if (options.mode == RunMode::deterministic) {
        report = run_deterministic(map, z0, m, options.epsilon);
    } else {
        const double eps = StepOperator(map, options.epsilon).epsilon();
        const ResourcePlan plan = plan_resources(m, eps, options.plan_base, options.lambda);
        Rng rng = Rng::stream(options.seed, 0);
        report = run_montecarlo(map, z0, plan, rng);
    }
    report.h = h;
    report.measure_residual = check.residual;
    if (!check.preserving) {
        std::string warning = "system is not measure preserving (residual " + std::to_string(check.residual) +
                              "); success probabilities deviate from eps^2/2";
        report.message = report.message.empty() ? warning : report.message + "; " + warning;
    }
    return report;
}

double error_gamma(double epsilon) {
    return 2.0 * std::sqrt(2.0) / epsilon;
}

double error_bound(double eta, double gamma, std::size_t m) {
    if (!(eta >= 0.0) || !(gamma > 0.0) || m == 0) {
        throw std::invalid_argument("error bound needs eta >= 0, gamma > 0, m >= 1");
    }
    const double x = 3.0 * gamma;
    if (std::abs(x - 1.0) < 1e-12) {
        return eta / 3.0 * static_cast<double>(m);
    }
    return eta / 3.0 * ((std::pow(x, static_cast<double>(m + 1)) - 1.0) / (x - 1.0) - 1.0);
}

namespace {

CMatrix random_unit_hermitian_exp(std::size_t dim, double eta, Rng &rng) {
    const auto d = static_cast<Eigen::Index>(dim);
    CMatrix x(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            x(i, j) = Complex(rng.normal(), rng.normal());
        }
    }
    const CMatrix g = (x + x.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(g);
    const Eigen::VectorXd values = solver.eigenvalues();
    const double scale = values.cwiseAbs().maxCoeff();
    CVector phases(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        phases[i] = std::exp(Complex(0.0, eta * values[i] / scale));
    }
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

// One post-selected step under an arbitrary dense step unitary; the second
// register is projected onto |0> before renormalizing.
AmplitudeState noisy_step(
    const AmplitudeState &input, const CMatrix &step, std::size_t register_dim, double *probability = nullptr) {
    const CVector joint = tensor_power(input, 2).amps();
    const CVector out = step * joint;
    const auto d = static_cast<Eigen::Index>(register_dim);
    const auto levels = static_cast<Eigen::Index>(input.levels());
    CVector first(levels);
    for (Eigen::Index alpha = 0; alpha < levels; ++alpha) {
        first[alpha] = out[d + alpha * levels];
    }
    const double norm = first.norm();
    if (probability != nullptr) {
        *probability = out.tail(d).squaredNorm() / out.squaredNorm();
    }
    if (!(norm > 0.0)) {
        throw std::domain_error("zero-probability sector");
    }
    return AmplitudeState(align_anchor_phase(first / norm));
}

}  // namespace

RunReport noise_study(
    const PolynomialMap &map,
    const CVector &z0,
    std::size_t m,
    std::optional<double> epsilon,
    const NoiseModel &noise,
    std::size_t trials,
    std::uint64_t master_seed) {
    if (map.degree() != 2) {
        throw std::invalid_argument("noise study is defined for quadratic maps");
    }
    if (m == 0 || trials == 0) {
        throw std::invalid_argument("noise study needs m >= 1 and at least one trial");
    }
    if (!(noise.eta >= 0.0)) {
        throw std::invalid_argument("noise level must be non-negative");
    }
    const StepOperator op(map, epsilon);
    const CMatrix ideal_step = op.unitary();
    const std::size_t dim = op.register_dim();

    RunReport report;
    report.epsilon = op.epsilon();
    report.gamma = error_gamma(op.epsilon());
    report.trials = trials;

    std::vector<AmplitudeState> ideal;
    ideal.push_back(encode(z0));
    report.iterates.push_back(z0);
    for (std::size_t j = 1; j <= m; ++j) {
        double probability = 0.0;
        ideal.push_back(noisy_step(ideal.back(), ideal_step, dim, &probability));
        report.probabilities.push_back(probability);
        report.iterates.push_back(decode(ideal.back()));
    }

    report.delta_observed.assign(m + 1, 0.0);
    report.delta_bound.assign(m + 1, 0.0);
    for (std::size_t j = 1; j <= m; ++j) {
        report.delta_bound[j] = error_bound(noise.eta, report.gamma, j);
    }

    const std::uint64_t study_seed = derive_stream_seed(master_seed, noise.stream);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::stream(study_seed, trial);
        const CMatrix step = noise.eta > 0.0 ? CMatrix(ideal_step * random_unit_hermitian_exp(2 * dim, noise.eta, rng))
                                             : ideal_step;
        AmplitudeState state = ideal.front();
        double previous = 0.0;
        for (std::size_t j = 1; j <= m; ++j) {
            state = noisy_step(state, step, dim);
            const double delta = distance(state, ideal[j]);
            report.delta_observed[j] = std::max(report.delta_observed[j], delta);
            if (delta > report.delta_bound[j]) {
                ++report.bound_violations;
            }
            if (delta > report.gamma * (3.0 * previous + noise.eta)) {
                ++report.recurrence_violations;
            }
            previous = delta;
        }
    }
    report.success = report.bound_violations == 0 && report.recurrence_violations == 0;
    if (noise.eta * std::pow(3.0 * report.gamma, static_cast<double>(m)) >= 1.0) {
        report.message = "warning: eta (3 gamma)^m >= 1, the bound is vacuous";
    }
    return report;
}

}  // namespace qeuler
