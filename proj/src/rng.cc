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

#include "qeuler/rng.h"

#include <cmath>

namespace qeuler {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t stream_id) {
    return splitmix64(splitmix64(master_seed) ^ splitmix64(stream_id + 0x632BE59BD9B4E019ULL));
}

double Rng::uniform() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

double Rng::normal() {
    return std::normal_distribution<double>(0.0, 1.0)(engine_);
}

bool Rng::bernoulli(double p) {
    return std::bernoulli_distribution(p)(engine_);
}

std::uint64_t Rng::binomial(std::uint64_t trials, double p) {
    if (trials == 0 || p <= 0.0) {
        return 0;
    }
    if (p >= 1.0) {
        return trials;
    }
    return std::binomial_distribution<std::uint64_t>(trials, p)(engine_);
}

CVector Rng::unit_vector(std::size_t n, bool real) {
    CVector v(static_cast<Eigen::Index>(n));
    double norm = 0.0;
    while (norm < 1e-12) {
        for (auto &x : v) {
            double re = normal();
            double im = real ? 0.0 : normal();
            x = Complex(re, im);
        }
        norm = v.norm();
    }
    return v / norm;
}

CVector Rng::ball_point(std::size_t n, bool real) {
    CVector v = unit_vector(n, real);
    double real_dim = real ? static_cast<double>(n) : 2.0 * static_cast<double>(n);
    return v * std::pow(uniform(), 1.0 / real_dim);
}

}  // namespace qeuler
