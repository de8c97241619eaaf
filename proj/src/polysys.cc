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

#include "qeuler/polysys.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "qeuler/rng.h"

namespace qeuler {

std::size_t orderings(std::span<const std::size_t> sorted_index) {
    // d! / prod(multiplicity!)
    std::size_t result = 1;
    std::size_t run = 0;
    for (std::size_t i = 0; i < sorted_index.size(); ++i) {
        run = (i > 0 && sorted_index[i] == sorted_index[i - 1]) ? run + 1 : 1;
        result = result * (i + 1) / run;
    }
    return result;
}

namespace {

void check_dimension(const CVector &z, std::size_t n) {
    if (static_cast<std::size_t>(z.size()) != n) {
        throw std::invalid_argument(
            "dimension mismatch: expected " + std::to_string(n) + " variables, got " + std::to_string(z.size()));
    }
}

Complex monomial(const std::vector<std::size_t> &index, const CVector &z) {
    Complex v{1.0, 0.0};
    for (std::size_t k : index) {
        if (k != 0) {
            v *= z[static_cast<Eigen::Index>(k - 1)];
        }
    }
    return v;
}

}  // namespace

SparsePolynomials::SparsePolynomials(std::size_t n, std::size_t degree, std::vector<Term> terms, bool real_variables)
    : n_(n), degree_(degree), real_variables_(real_variables) {
    if (n == 0) {
        throw std::invalid_argument("polynomial family needs at least one variable");
    }
    if (degree == 0 || degree > kMaxDegree) {
        throw std::invalid_argument("degree must be in 1.." + std::to_string(kMaxDegree));
    }
    for (auto &t : terms) {
        if (t.row < 1 || t.row > n) {
            throw std::invalid_argument("term row " + std::to_string(t.row) + " outside 1.." + std::to_string(n));
        }
        if (t.index.size() != degree) {
            throw std::invalid_argument(
                "term in row " + std::to_string(t.row) + " has " + std::to_string(t.index.size()) +
                " indices, expected " + std::to_string(degree));
        }
        for (std::size_t k : t.index) {
            if (k > n) {
                throw std::invalid_argument("monomial index " + std::to_string(k) + " outside 0.." + std::to_string(n));
            }
        }
        if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag())) {
            throw std::invalid_argument("non-finite coefficient in row " + std::to_string(t.row));
        }
        std::sort(t.index.begin(), t.index.end());
    }
    std::erase_if(terms, [](const Term &t) {
        return t.coeff == Complex{0.0, 0.0};
    });
    std::sort(terms.begin(), terms.end(), [](const Term &a, const Term &b) {
        return a.row != b.row ? a.row < b.row : a.index < b.index;
    });
    for (std::size_t i = 1; i < terms.size(); ++i) {
        if (terms[i].row == terms[i - 1].row && terms[i].index == terms[i - 1].index) {
            throw std::invalid_argument("duplicate monomial in row " + std::to_string(terms[i].row));
        }
    }
    terms_ = std::move(terms);
}

CVector SparsePolynomials::evaluate(const CVector &z) const {
    check_dimension(z, n_);
    CVector out = CVector::Zero(static_cast<Eigen::Index>(n_));
    for (const auto &t : terms_) {
        out[static_cast<Eigen::Index>(t.row - 1)] += t.coeff * monomial(t.index, z);
    }
    return out;
}

PolynomialMap::PolynomialMap(std::size_t n, std::size_t degree, std::vector<Term> terms, bool real_variables)
    : poly_(n, degree, std::move(terms), real_variables) {
    if (degree < 2) {
        throw std::invalid_argument("a polynomial map needs degree >= 2 (two or more tensor copies)");
    }
}

OdeSystem::OdeSystem(
    std::size_t n, std::size_t degree, std::vector<Term> terms, bool real_variables, bool measure_preserving_claimed)
    : poly_(n, degree, std::move(terms), real_variables), measure_preserving_claimed_(measure_preserving_claimed) {
}

CVector apply_map(const PolynomialMap &map, const CVector &z) {
    return map.polynomials().evaluate(z);
}

ValidationReport validate(const PolynomialMap &map, std::size_t sample_count, std::uint64_t rng_seed) {
    if (sample_count == 0) {
        throw std::invalid_argument("validate needs at least one sample");
    }
    ValidationReport report;

    std::map<std::size_t, std::size_t> row_entries;
    std::map<std::vector<std::size_t>, std::size_t> index_rows;
    for (const auto &t : map.terms()) {
        std::size_t perms = orderings(t.index);
        row_entries[t.row] += perms;
        index_rows[t.index] += 1;
        report.a_max_observed = std::max(report.a_max_observed, std::abs(t.coeff) / static_cast<double>(perms));
    }
    for (const auto &[row, count] : row_entries) {
        report.s_row = std::max(report.s_row, count);
    }
    for (const auto &[index, count] : index_rows) {
        report.s_col = std::max(report.s_col, count);
    }

    Rng rng(rng_seed);
    const bool real = map.real_variables();
    for (std::size_t i = 0; i < sample_count; ++i) {
        CVector z = rng.unit_vector(map.n(), real);
        double deviation = std::abs(apply_map(map, z).squaredNorm() - 1.0);
        report.measure_deviation = std::max(report.measure_deviation, deviation);
    }
    for (std::size_t i = 0; i < sample_count; ++i) {
        CVector x = rng.ball_point(map.n(), real);
        CVector y = rng.ball_point(map.n(), real);
        double gap = (x - y).norm();
        if (gap < 1e-9) {
            continue;
        }
        double ratio = (apply_map(map, x) - apply_map(map, y)).norm() / gap;
        report.lipschitz_estimate = std::max(report.lipschitz_estimate, ratio);
    }
    return report;
}

PolynomialMap euler_map(const OdeSystem &sys, double h, std::size_t max_degree) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument("Euler step size must be positive and finite");
    }
    const std::size_t degree = std::max<std::size_t>(2, sys.degree());
    if (degree > max_degree) {
        throw std::invalid_argument(
            "degree overflow: system degree " + std::to_string(sys.degree()) + " exceeds maximum " +
            std::to_string(max_degree));
    }
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, Complex> acc;
    for (std::size_t j = 1; j <= sys.n(); ++j) {
        std::vector<std::size_t> index(degree, 0);
        index.back() = j;
        acc[{j, index}] += 1.0;
    }
    for (const auto &t : sys.terms()) {
        std::vector<std::size_t> index(degree - t.index.size(), 0);
        index.insert(index.end(), t.index.begin(), t.index.end());
        std::sort(index.begin(), index.end());
        acc[{t.row, index}] += h * t.coeff;
    }
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto &[key, coeff] : acc) {
        terms.push_back(Term{key.first, key.second, coeff});
    }
    return PolynomialMap(sys.n(), degree, std::move(terms), sys.real_variables());
}

MeasureCheck check_ode_measure_preserving(
    const OdeSystem &sys, std::size_t samples, double tol, std::uint64_t rng_seed) {
    if (samples == 0) {
        throw std::invalid_argument("measure-preservation check needs at least one sample");
    }
    Rng rng(rng_seed);
    MeasureCheck check;
    for (std::size_t i = 0; i < samples; ++i) {
        CVector z = rng.unit_vector(sys.n(), sys.real_variables());
        double residual = std::abs(2.0 * z.dot(sys.rhs(z)).real());
        check.residual = std::max(check.residual, residual);
    }
    check.preserving = check.residual <= tol;
    return check;
}

std::vector<CVector> reference_integrate(
    const OdeSystem &sys, const CVector &z0, double t, std::size_t steps, Integrator method) {
    if (steps == 0) {
        throw std::invalid_argument("reference integration needs at least one step");
    }
    if (!(t > 0.0)) {
        throw std::invalid_argument("integration time must be positive");
    }
    check_dimension(z0, sys.n());
    const double h = t / static_cast<double>(steps);
    std::vector<CVector> trajectory;
    trajectory.reserve(steps + 1);
    trajectory.push_back(z0);
    CVector z = z0;
    for (std::size_t k = 0; k < steps; ++k) {
        if (method == Integrator::euler) {
            z = z + h * sys.rhs(z);
        } else {
            CVector k1 = sys.rhs(z);
            CVector k2 = sys.rhs(z + (h / 2) * k1);
            CVector k3 = sys.rhs(z + (h / 2) * k2);
            CVector k4 = sys.rhs(z + h * k3);
            z = z + (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        if (!z.allFinite()) {
            throw std::runtime_error("non-finite state after step " + std::to_string(k + 1) + " (blow-up)");
        }
        trajectory.push_back(z);
    }
    return trajectory;
}

}  // namespace qeuler
