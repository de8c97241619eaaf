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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "qeuler/euler_driver.h"
#include "qeuler/observables.h"
#include "qeuler/systems.h"

using namespace qeuler;

TEST(observables, identity_and_projector) {
    Rng rng(1);
    const CVector z = rng.unit_vector(4, false);
    const AmplitudeState s = encode(z);
    const Expectation id = expectation(s, Observable::identity(5));
    EXPECT_NEAR(id.state_value, 1.0, 1e-14);
    EXPECT_NEAR(id.paper_value, 2.0, 1e-14);
    for (std::size_t j = 1; j <= 4; ++j) {
        const Expectation e = expectation(s, Observable::projector(5, j));
        EXPECT_NEAR(e.state_value, std::norm(z[static_cast<Eigen::Index>(j - 1)]) / 2, 1e-15);
        EXPECT_NEAR(e.paper_value, std::norm(z[static_cast<Eigen::Index>(j - 1)]), 1e-15);
    }
}

TEST(observables, diagonal_on_doubling_orbit_within_spectrum) {
    const RunReport r = run_deterministic(power_map(2), CVector::Constant(1, std::polar(1.0, 0.3)), 4);
    const Observable M = Observable::diagonal(Eigen::Vector2d(0.0, 1.0));
    for (const auto &z : r.iterates) {
        CVector amps(2);
        amps << 1.0, z[0];
        const double v = expectation(AmplitudeState(amps / amps.norm()), M).state_value;
        EXPECT_GE(v, M.eigenvalues().minCoeff() - 1e-15);
        EXPECT_LE(v, M.eigenvalues().maxCoeff() + 1e-15);
        EXPECT_NEAR(v, 0.5, 1e-12);
    }
}

TEST(observables, rejects_non_hermitian) {
    CMatrix m(2, 2);
    m << 1.0, 1.0, 0.0, 1.0;
    EXPECT_THROW(Observable{m}, std::invalid_argument);
    EXPECT_THROW(Observable(CMatrix::Identity(2, 3)), std::invalid_argument);
    EXPECT_THROW(Observable::projector(3, 3), std::invalid_argument);
}

TEST(observables, hoeffding_shots) {
    EXPECT_EQ(hoeffding_shots(1.0, 0.05, 0.05), 738u);
    EXPECT_EQ(hoeffding_shots(2.0, 0.05, 0.05), 2952u);
    EXPECT_EQ(hoeffding_shots(0.0, 0.05, 0.05), 1u);
    EXPECT_THROW(hoeffding_shots(1.0, 0.0, 0.05), std::invalid_argument);
    EXPECT_EQ(Observable::projector(4, 2).spread(), 1.0);
    EXPECT_NEAR(Observable::fourier(4, 1).norm_bound(), 1.0, 1e-12);
}

TEST(observables, identity_estimate_is_exact) {
    Rng rng(2);
    const AmplitudeState s = encode(rng.unit_vector(3, false));
    const SampledEstimate e = sample_expectation(s, Observable::identity(4), 0.05, 0.05, rng);
    EXPECT_EQ(e.estimate, 1.0);
}

TEST(observables, sampled_coverage) {
    Rng rng(3);
    const AmplitudeState s = encode(rng.unit_vector(4, false));
    for (const auto &M : {Observable::projector(5, 2), Observable::fourier(5, 1)}) {
        const double truth = expectation(s, M).state_value;
        int inside = 0;
        for (int rep = 0; rep < 500; ++rep) {
            const SampledEstimate e = sample_expectation(s, M, 0.05, 0.05, rng);
            EXPECT_EQ(e.shots, 738u);
            inside += std::abs(e.estimate - truth) <= 0.05;
        }
        EXPECT_GE(inside, 475) << M.name();
    }
}

TEST(observables, fourier_spectrum_examples) {
    for (std::size_t n : {1, 3, 4, 7}) {
        const CVector flat = CVector::Constant(static_cast<Eigen::Index>(n), 1.0 / std::sqrt(static_cast<double>(n)));
        const CVector S = fourier_spectrum(flat);
        for (std::size_t k = 1; k < n; ++k) {
            EXPECT_LT(std::abs(S[static_cast<Eigen::Index>(k - 1)]), 1e-14);
        }
        EXPECT_LT(std::abs(S[static_cast<Eigen::Index>(n - 1)] - 1.0), 1e-14);
    }
    const CVector one = CVector::Constant(1, Complex(0.6, 0.8));
    EXPECT_LT(std::abs(fourier_spectrum(one)[0] - one[0]), 1e-15);
}

TEST(observables, fourier_parseval_and_observable) {
    Rng rng(4);
    for (std::size_t n = 1; n <= 8; ++n) {
        const CVector z = rng.unit_vector(n, false);
        const CVector S = fourier_spectrum(z);
        EXPECT_NEAR(S.squaredNorm(), z.squaredNorm(), 1e-12);
        const AmplitudeState s = encode(z);
        for (std::size_t k = 1; k <= n; ++k) {
            EXPECT_NEAR(
                expectation(s, Observable::fourier(n + 1, k)).state_value,
                std::norm(S[static_cast<Eigen::Index>(k - 1)]) / 2,
                1e-14);
        }
    }
}

TEST(observables, read_csv) {
    std::istringstream in("row,col,re,im\n0,0,1,0\n1,2,0,1\n2,1,0,-1\n");
    const Observable M = read_observable_csv(in, 3, "pauli_y");
    EXPECT_EQ(M.name(), "pauli_y");
    EXPECT_EQ(M.matrix()(1, 2), Complex(0.0, 1.0));
    EXPECT_NEAR(M.norm_bound(), 1.0, 1e-14);
    std::istringstream bad("row,col,re,im\n0,1,1,0\n");
    EXPECT_THROW(read_observable_csv(bad, 2), std::invalid_argument);
}
