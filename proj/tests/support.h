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

#ifndef QEULER_TESTS_SUPPORT_H
#define QEULER_TESTS_SUPPORT_H

#include <Eigen/Dense>
#include <algorithm>
#include <numbers>
#include <numeric>
#include <set>
#include <vector>

#include "qeuler/polysys.h"
#include "qeuler/rng.h"

namespace qeuler::fixtures {

inline std::size_t random_index(Rng &rng, std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(n)));
}

// Cayley-Dickson product on R^(2^k); the norm is multiplicative for k <= 3.
inline Eigen::VectorXd cd_conj(const Eigen::VectorXd &a) {
    Eigen::VectorXd c = -a;
    c[0] = a[0];
    return c;
}

inline Eigen::VectorXd cd_mul(const Eigen::VectorXd &a, const Eigen::VectorXd &b) {
    const auto n = a.size();
    if (n == 1) {
        return a.cwiseProduct(b);
    }
    const auto h = n / 2;
    const Eigen::VectorXd p = a.head(h), q = a.tail(h), r = b.head(h), s = b.tail(h);
    Eigen::VectorXd out(n);
    out.head(h) = cd_mul(p, r) - cd_mul(cd_conj(s), q);
    out.tail(h) = cd_mul(s, p) + cd_mul(q, cd_conj(r));
    return out;
}

struct SignedPermutation {
    std::vector<std::size_t> perm;
    std::vector<double> sign;

    Eigen::VectorXd apply(const Eigen::VectorXd &x) const {
        Eigen::VectorXd y(x.size());
        for (std::size_t i = 0; i < perm.size(); ++i) {
            y[static_cast<Eigen::Index>(i)] = sign[i] * x[static_cast<Eigen::Index>(perm[i])];
        }
        return y;
    }
};

inline SignedPermutation random_signed_permutation(Rng &rng, std::size_t n) {
    SignedPermutation p;
    p.perm.resize(n);
    std::iota(p.perm.begin(), p.perm.end(), 0);
    std::shuffle(p.perm.begin(), p.perm.end(), rng.engine());
    for (std::size_t i = 0; i < n; ++i) {
        p.sign.push_back(rng.bernoulli(0.5) ? 1.0 : -1.0);
    }
    return p;
}

// x -> P1 (y (c y)) with y = P0 x and c a signed basis unit, for real x in
// dimension 1, 2, 4 or 8. Norm preserving on the real unit sphere.
inline PolynomialMap composition_square_map(Rng &rng, std::size_t n) {
    const auto P0 = random_signed_permutation(rng, n);
    const auto P1 = random_signed_permutation(rng, n);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    c[static_cast<Eigen::Index>(random_index(rng, n))] = rng.bernoulli(0.5) ? 1.0 : -1.0;
    auto bilinear = [&](std::size_t i, std::size_t j) {
        Eigen::VectorXd u = Eigen::VectorXd::Unit(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i));
        Eigen::VectorXd v = Eigen::VectorXd::Unit(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(j));
        return P1.apply(cd_mul(P0.apply(u), cd_mul(c, P0.apply(v))));
    };
    std::vector<Term> terms;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            Eigen::VectorXd coeff = bilinear(i, j);
            if (i != j) {
                coeff += bilinear(j, i);
            }
            for (std::size_t row = 0; row < n; ++row) {
                const double a = coeff[static_cast<Eigen::Index>(row)];
                if (a != 0.0) {
                    terms.push_back({row + 1, {i + 1, j + 1}, Complex(a, 0.0)});
                }
            }
        }
    }
    return PolynomialMap(n, 2, std::move(terms), true);
}

// z -> U z with U a product of a permutation, random 2x2 unitary blocks and
// phases; written as quadratic terms z_0 z_j.
inline PolynomialMap sparse_unitary_map(Rng &rng, std::size_t n) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    CMatrix U = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        U(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(perm[i])) = std::polar(1.0, 2 * std::numbers::pi * rng.uniform());
    }
    for (std::size_t i = 0; i + 1 < n; i += 2) {
        if (!rng.bernoulli(0.5)) {
            continue;
        }
        const double theta = std::numbers::pi / 2 * rng.uniform();
        CMatrix block(2, 2);
        block << std::cos(theta), std::sin(theta) * std::polar(1.0, 2 * std::numbers::pi * rng.uniform()),
            -std::sin(theta) * std::polar(1.0, -2 * std::numbers::pi * rng.uniform()), std::cos(theta);
        // Make the block exactly unitary.
        block.col(1) = block.col(1) - block.col(0).dot(block.col(1)) * block.col(0);
        block.col(1).normalize();
        const auto r = static_cast<Eigen::Index>(i);
        U.middleRows(r, 2) = (block * U.middleRows(r, 2)).eval();
    }
    std::vector<Term> terms;
    for (Eigen::Index row = 0; row < U.rows(); ++row) {
        for (Eigen::Index col = 0; col < U.cols(); ++col) {
            if (std::abs(U(row, col)) > 0.0) {
                terms.push_back({static_cast<std::size_t>(row) + 1, {0, static_cast<std::size_t>(col) + 1}, U(row, col)});
            }
        }
    }
    return PolynomialMap(n, 2, std::move(terms));
}

// The doubling map with a random output phase.
inline PolynomialMap phased_doubling_map(Rng &rng) {
    return PolynomialMap(1, 2, {{1, {1, 1}, std::polar(1.0, 2 * std::numbers::pi * rng.uniform())}});
}

struct CorpusMap {
    PolynomialMap map;
    std::string label;
};

// At least `count` random sparse measure-preserving quadratic maps, n <= 8.
inline std::vector<CorpusMap> measure_preserving_corpus(std::uint64_t seed, std::size_t count) {
    Rng rng(seed);
    std::vector<CorpusMap> out;
    const std::size_t dims[] = {1, 2, 4, 8};
    for (std::size_t i = 0; out.size() < count; ++i) {
        switch (i % 3) {
            case 0: {
                const std::size_t n = dims[random_index(rng, 4)];
                out.push_back({composition_square_map(rng, n), "composition_square n=" + std::to_string(n)});
                break;
            }
            case 1: {
                const std::size_t n = 1 + random_index(rng, 8);
                out.push_back({sparse_unitary_map(rng, n), "sparse_unitary n=" + std::to_string(n)});
                break;
            }
            default:
                out.push_back({phased_doubling_map(rng), "doubling"});
        }
    }
    return out;
}

// Random sparse quadratic map with generic coefficients; not measure preserving.
inline PolynomialMap random_quadratic_map(Rng &rng, std::size_t n, double scale) {
    std::vector<Term> terms;
    for (std::size_t row = 1; row <= n; ++row) {
        std::set<std::vector<std::size_t>> used;
        const std::size_t available = (n + 1) * (n + 2) / 2 - 1;
        const std::size_t count = std::min(available, 1 + random_index(rng, 3));
        while (used.size() < count) {
            std::vector<std::size_t> index{random_index(rng, n + 1), random_index(rng, n + 1)};
            std::sort(index.begin(), index.end());
            if (index == std::vector<std::size_t>{0, 0}) {
                continue;
            }
            if (used.insert(index).second) {
                terms.push_back({row, index, scale * Complex(rng.normal(), rng.normal())});
            }
        }
    }
    return PolynomialMap(n, 2, std::move(terms));
}

inline double dense_sigma_max(const SparseMatrix &A) {
    const CMatrix dense(A);
    Eigen::BDCSVD<CMatrix> svd(dense);
    return svd.singularValues()[0];
}

}  // namespace qeuler::fixtures

#endif  // QEULER_TESTS_SUPPORT_H
