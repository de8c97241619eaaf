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

#ifndef QEULER_POLYSYS_H
#define QEULER_POLYSYS_H

#include <cstdint>
#include <span>
#include <vector>

#include "qeuler/types.h"

namespace qeuler {

/// One monomial of polynomial f_row. The index is the sorted multi-index of
/// the monomial written homogeneously in (z_0, ..., z_n) with z_0 = 1, so a
/// linear term z_3 in a quadratic family is stored as index {0, 3}.
/// coeff is the coefficient of the monomial itself; the symmetric tensor
/// entry a_{k1..kd} for any ordering is coeff / orderings(index).
struct Term {
    std::size_t row = 0;
    std::vector<std::size_t> index;
    Complex coeff{0.0, 0.0};
};

/// Number of distinct orderings of a sorted multi-index.
std::size_t orderings(std::span<const std::size_t> sorted_index);

/// A sparse family f_1..f_n of polynomials in z_1..z_n of degree at most
/// `degree`. Terms are canonical (sorted indices, sorted by row then index,
/// no duplicates, no zero coefficients).
class SparsePolynomials {
   public:
    SparsePolynomials(std::size_t n, std::size_t degree, std::vector<Term> terms, bool real_variables = false);

    std::size_t n() const {
        return n_;
    }
    std::size_t degree() const {
        return degree_;
    }
    const std::vector<Term> &terms() const {
        return terms_;
    }
    bool real_variables() const {
        return real_variables_;
    }

    /// (f_1(z), ..., f_n(z)) with z_0 = 1.
    CVector evaluate(const CVector &z) const;

   private:
    std::size_t n_;
    std::size_t degree_;
    std::vector<Term> terms_;
    bool real_variables_;
};

/// z -> F(z) with F = (f_1, ..., f_n) and the implicit anchor row f_0 = 1.
class PolynomialMap {
   public:
    PolynomialMap(std::size_t n, std::size_t degree, std::vector<Term> terms, bool real_variables = false);

    std::size_t n() const {
        return poly_.n();
    }
    std::size_t degree() const {
        return poly_.degree();
    }
    const std::vector<Term> &terms() const {
        return poly_.terms();
    }
    bool real_variables() const {
        return poly_.real_variables();
    }
    const SparsePolynomials &polynomials() const {
        return poly_;
    }

   private:
    SparsePolynomials poly_;
};

/// dz_j/dt = f_j(z), j = 1..n.
class OdeSystem {
   public:
    OdeSystem(
        std::size_t n,
        std::size_t degree,
        std::vector<Term> terms,
        bool real_variables = false,
        bool measure_preserving_claimed = false);

    std::size_t n() const {
        return poly_.n();
    }
    std::size_t degree() const {
        return poly_.degree();
    }
    const std::vector<Term> &terms() const {
        return poly_.terms();
    }
    bool real_variables() const {
        return poly_.real_variables();
    }
    bool measure_preserving_claimed() const {
        return measure_preserving_claimed_;
    }
    const SparsePolynomials &polynomials() const {
        return poly_;
    }
    CVector rhs(const CVector &z) const {
        return poly_.evaluate(z);
    }

   private:
    SparsePolynomials poly_;
    bool measure_preserving_claimed_;
};

struct ValidationReport {
    /// Max number of ordered multi-indices with a nonzero entry in one row.
    std::size_t s_row = 0;
    /// Max number of rows sharing one multi-index.
    std::size_t s_col = 0;
    /// Max |a| over symmetric tensor entries of rows 1..n.
    double a_max_observed = 0.0;
    /// Max over sampled unit z of |sum_alpha |f_alpha(z)|^2 - 1|.
    double measure_deviation = 0.0;
    /// Max observed ||F(x) - F(y)|| / ||x - y|| over sampled pairs in the unit ball.
    double lipschitz_estimate = 0.0;

    bool operator==(const ValidationReport &) const = default;
};

/// Classical oracle: (f_1(z), ..., f_n(z)).
CVector apply_map(const PolynomialMap &map, const CVector &z);

ValidationReport validate(const PolynomialMap &map, std::size_t sample_count, std::uint64_t rng_seed);

/// The Euler map z_j -> z_j + h f_j(z). The output degree is max(2, sys.degree()).
PolynomialMap euler_map(const OdeSystem &sys, double h, std::size_t max_degree = kMaxDegree);

struct MeasureCheck {
    bool preserving = false;
    double residual = 0.0;
};

/// Max over sampled unit z of |sum_j conj(z_j) f_j(z) + z_j conj(f_j(z))|.
MeasureCheck check_ode_measure_preserving(
    const OdeSystem &sys, std::size_t samples, double tol = 1e-9, std::uint64_t rng_seed = 0);

enum class Integrator { euler, rk4 };

/// Classical trajectory at t_k = k t / steps, k = 0..steps.
std::vector<CVector> reference_integrate(
    const OdeSystem &sys, const CVector &z0, double t, std::size_t steps, Integrator method);

}  // namespace qeuler

#endif  // QEULER_POLYSYS_H
