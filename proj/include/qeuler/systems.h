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

#ifndef QEULER_SYSTEMS_H
#define QEULER_SYSTEMS_H

#include <utility>
#include <vector>

#include "qeuler/polysys.h"

namespace qeuler {

/// Simple undirected graph on vertices 0..vertex_count-1.
struct GraphSpec {
    std::size_t vertex_count = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t max_degree = 8;

    /// Throws on self-loops, repeated edges, out-of-range vertices or a
    /// vertex whose degree exceeds max_degree.
    void check() const;
    std::vector<std::size_t> degrees() const;

    static GraphSpec path(std::size_t vertex_count);
    static GraphSpec cycle(std::size_t vertex_count);
};

/// dx_j/dt = x_{j+1} x_{j+2} + x_{j-1} x_{j-2} - 2 x_{j+1} x_{j-1}, periodic. n >= 5.
OdeSystem orszag_mclaughlin(std::size_t n);

/// Conjugate-doubled discrete nonlinear Schrodinger equation
///   -i dz_v/dt = 2 deg(v) z_v - sum_{w~v} z_w + |z_v|^k z_v
/// in rescaled variables u = z / scale. Variables 1..V hold u_v and V+1..2V
/// hold w_v, which follows the conjugate equation; w = conj(u) is invariant.
struct NlsSystem {
    OdeSystem system;
    std::size_t vertex_count = 0;
    double scale = 1.0;

    /// (z, conj z) / scale.
    CVector to_state(const CVector &z) const;
    /// scale * (first V components).
    CVector from_state(const CVector &x) const;
};

/// k must be even. Degree of the doubled system is max(1, k + 1).
NlsSystem discrete_nls(const GraphSpec &graph, std::size_t k, double scale = 1.0);

/// Scale that makes (z, conj z) / scale a unit vector.
double nls_unit_scale(const CVector &z);

struct LorenzParameters {
    double sigma = 10.0;
    double rho = 28.0;
    double beta = 8.0 / 3.0;
};

OdeSystem lorenz(const LorenzParameters &params = {});

/// f_alpha = z_alpha.
PolynomialMap identity_map(std::size_t n);
/// n = 1, z -> z^degree.
PolynomialMap power_map(std::size_t degree);
/// f_alpha = z_{perm[alpha-1]} (1-based targets).
PolynomialMap permutation_map(const std::vector<std::size_t> &perm);

}  // namespace qeuler

#endif  // QEULER_SYSTEMS_H
