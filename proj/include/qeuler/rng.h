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

#ifndef QEULER_RNG_H
#define QEULER_RNG_H

#include <cstdint>
#include <random>

#include "qeuler/types.h"

namespace qeuler {

/// Mixes a master seed and a stream id into an independent 64-bit seed.
/// Trial k of an experiment always draws from stream k, so results do not
/// depend on the order in which trials are executed.
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t stream_id);

class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {
    }
    static Rng stream(std::uint64_t master_seed, std::uint64_t stream_id) {
        return Rng(derive_stream_seed(master_seed, stream_id));
    }

    double uniform();
    double normal();
    bool bernoulli(double p);
    std::uint64_t binomial(std::uint64_t trials, double p);

    /// Uniformly distributed point on the unit sphere of C^n (or R^n).
    CVector unit_vector(std::size_t n, bool real);
    /// Uniformly distributed point in the closed unit ball of C^n (or R^n).
    CVector ball_point(std::size_t n, bool real);

    std::mt19937_64 &engine() {
        return engine_;
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace qeuler

#endif  // QEULER_RNG_H
