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

#include "qeuler/systems.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace qeuler {

void GraphSpec::check() const {
    if (vertex_count == 0) {
        throw std::invalid_argument("graph needs at least one vertex");
    }
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto [a, b] : edges) {
        if (a >= vertex_count || b >= vertex_count) {
            throw std::invalid_argument("edge endpoint out of range");
        }
        if (a == b) {
            throw std::invalid_argument("self-loop at vertex " + std::to_string(a));
        }
        if (!seen.insert(std::minmax(a, b)).second) {
            throw std::invalid_argument("repeated edge " + std::to_string(a) + "-" + std::to_string(b));
        }
    }
    for (std::size_t d : degrees()) {
        if (d > max_degree) {
            throw std::invalid_argument("vertex degree exceeds bound " + std::to_string(max_degree));
        }
    }
}

std::vector<std::size_t> GraphSpec::degrees() const {
    std::vector<std::size_t> deg(vertex_count, 0);
    for (auto [a, b] : edges) {
        ++deg[a];
        ++deg[b];
    }
    return deg;
}

GraphSpec GraphSpec::path(std::size_t vertex_count) {
    GraphSpec g;
    g.vertex_count = vertex_count;
    for (std::size_t v = 0; v + 1 < vertex_count; ++v) {
        g.edges.emplace_back(v, v + 1);
    }
    return g;
}

GraphSpec GraphSpec::cycle(std::size_t vertex_count) {
    GraphSpec g = path(vertex_count);
    if (vertex_count > 2) {
        g.edges.emplace_back(vertex_count - 1, 0);
    }
    return g;
}

OdeSystem orszag_mclaughlin(std::size_t n) {
    if (n < 5) {
        throw std::invalid_argument("Orszag-McLaughlin system needs n >= 5");
    }
    // 1-based cyclic index.
    auto at = [n](std::size_t j, long offset) {
        long k = (static_cast<long>(j) - 1 + offset) % static_cast<long>(n);
        return static_cast<std::size_t>(k < 0 ? k + static_cast<long>(n) : k) + 1;
    };
    std::vector<Term> terms;
    for (std::size_t j = 1; j <= n; ++j) {
        terms.push_back({j, {at(j, 1), at(j, 2)}, 1.0});
        terms.push_back({j, {at(j, -1), at(j, -2)}, 1.0});
        terms.push_back({j, {at(j, 1), at(j, -1)}, -2.0});
    }
    return OdeSystem(n, 2, std::move(terms), /*real_variables=*/true, /*measure_preserving_claimed=*/true);
}

CVector NlsSystem::to_state(const CVector &z) const {
    const auto v = static_cast<Eigen::Index>(vertex_count);
    if (z.size() != v) {
        throw std::invalid_argument("NLS state needs one amplitude per vertex");
    }
    CVector x(2 * v);
    x.head(v) = z / scale;
    x.tail(v) = z.conjugate() / scale;
    return x;
}

CVector NlsSystem::from_state(const CVector &x) const {
    const auto v = static_cast<Eigen::Index>(vertex_count);
    if (x.size() != 2 * v) {
        throw std::invalid_argument("doubled NLS state has the wrong size");
    }
    return x.head(v) * scale;
}

NlsSystem discrete_nls(const GraphSpec &graph, std::size_t k, double scale) {
    graph.check();
    if (k % 2 != 0) {
        throw std::invalid_argument("odd nonlinearity exponent k has no polynomial embedding");
    }
    if (!(scale > 0.0)) {
        throw std::invalid_argument("NLS amplitude scale must be positive");
    }
    const std::size_t V = graph.vertex_count;
    const std::size_t degree = std::max<std::size_t>(1, k + 1);
    if (degree > kMaxDegree) {
        throw std::invalid_argument("NLS degree k + 1 exceeds the maximum degree");
    }
    const auto deg = graph.degrees();
    const Complex i(0.0, 1.0);
    const double nonlinear = std::pow(scale, static_cast<double>(k));

    auto linear = [degree](std::size_t var) {
        std::vector<std::size_t> idx(degree, 0);
        idx.back() = var;
        return idx;
    };
    std::vector<Term> terms;
    // Variables: u_v -> v + 1, w_v -> V + v + 1. The w rows carry the
    // conjugated coefficients (i -> -i).
    for (int half = 0; half < 2; ++half) {
        const Complex unit = half == 0 ? i : -i;
        const std::size_t offset = half == 0 ? 0 : V;
        for (std::size_t v = 0; v < V; ++v) {
            const std::size_t row = offset + v + 1;
            Complex diag = unit * (2.0 * static_cast<double>(deg[v]));
            Complex self_nonlinear = unit * nonlinear;
            if (k == 0) {
                diag += self_nonlinear;
            }
            terms.push_back({row, linear(row), diag});
            for (auto [a, b] : graph.edges) {
                if (a == v || b == v) {
                    const std::size_t nb = a == v ? b : a;
                    terms.push_back({row, linear(offset + nb + 1), -unit});
                }
            }
            if (k > 0) {
                // (u_v w_v)^{k/2} x_row
                std::vector<std::size_t> idx;
                for (std::size_t r = 0; r < k / 2; ++r) {
                    idx.push_back(v + 1);
                    idx.push_back(V + v + 1);
                }
                idx.push_back(row);
                terms.push_back({row, idx, self_nonlinear});
            }
        }
    }
    OdeSystem sys(2 * V, degree, std::move(terms), /*real_variables=*/false, /*measure_preserving_claimed=*/true);
    return NlsSystem{std::move(sys), V, scale};
}

double nls_unit_scale(const CVector &z) {
    return std::sqrt(2.0) * z.norm();
}

OdeSystem lorenz(const LorenzParameters &params) {
    // x' = sigma (y - x), y' = x (rho - z) - y, z' = x y - beta z
    std::vector<Term> terms{
        {1, {0, 2}, params.sigma},
        {1, {0, 1}, -params.sigma},
        {2, {0, 1}, params.rho},
        {2, {1, 3}, -1.0},
        {2, {0, 2}, -1.0},
        {3, {1, 2}, 1.0},
        {3, {0, 3}, -params.beta},
    };
    return OdeSystem(3, 2, std::move(terms), /*real_variables=*/true, /*measure_preserving_claimed=*/false);
}

PolynomialMap identity_map(std::size_t n) {
    std::vector<Term> terms;
    for (std::size_t a = 1; a <= n; ++a) {
        terms.push_back({a, {0, a}, 1.0});
    }
    return PolynomialMap(n, 2, std::move(terms));
}

PolynomialMap power_map(std::size_t degree) {
    return PolynomialMap(1, degree, {Term{1, std::vector<std::size_t>(degree, 1), 1.0}});
}

PolynomialMap permutation_map(const std::vector<std::size_t> &perm) {
    std::vector<bool> seen(perm.size() + 1, false);
    for (auto target : perm) {
        if (target == 0 || target > perm.size() || seen[target]) {
            throw std::invalid_argument("permutation targets must be a permutation of 1..n");
        }
        seen[target] = true;
    }
    std::vector<Term> terms;
    for (std::size_t a = 1; a <= perm.size(); ++a) {
        terms.push_back({a, {0, perm[a - 1]}, 1.0});
    }
    return PolynomialMap(perm.size(), 2, std::move(terms));
}

}  // namespace qeuler
