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

#include "qeuler/observables.h"

#include <cmath>
#include <istream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qeuler {

Observable::Observable(CMatrix matrix, std::string name) : matrix_(std::move(matrix)), name_(std::move(name)) {
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("observable must be a non-empty square matrix");
    }
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("observable '" + name_ + "' is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(matrix_);
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
    norm_bound_ = eigenvalues_.cwiseAbs().maxCoeff();
}

Observable Observable::identity(std::size_t levels) {
    const auto d = static_cast<Eigen::Index>(levels);
    return Observable(CMatrix::Identity(d, d), "identity");
}

Observable Observable::projector(std::size_t levels, std::size_t j) {
    if (j >= levels) {
        throw std::invalid_argument("projector index out of range");
    }
    const auto d = static_cast<Eigen::Index>(levels);
    CMatrix m = CMatrix::Zero(d, d);
    m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = 1.0;
    return Observable(std::move(m), "projector_" + std::to_string(j));
}

Observable Observable::fourier(std::size_t levels, std::size_t k) {
    if (levels < 2) {
        throw std::invalid_argument("fourier observable needs at least one variable");
    }
    const std::size_t n = levels - 1;
    const auto d = static_cast<Eigen::Index>(levels);
    CVector chi = CVector::Zero(d);
    for (std::size_t j = 1; j <= n; ++j) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
        chi[static_cast<Eigen::Index>(j)] = std::polar(1.0 / std::sqrt(static_cast<double>(n)), angle);
    }
    CMatrix m = chi * chi.adjoint();
    m = (m + m.adjoint()) / 2.0;
    return Observable(std::move(m), "fourier_" + std::to_string(k));
}

Observable Observable::diagonal(const Eigen::VectorXd &values) {
    return Observable(CMatrix(values.cast<Complex>().asDiagonal()), "diagonal");
}

Expectation expectation(const AmplitudeState &state, const Observable &M) {
    if (state.levels() != M.levels()) {
        throw std::invalid_argument("observable dimension does not match the state");
    }
    const CVector &a = state.amps();
    const double value = a.dot(M.matrix() * a).real();
    return Expectation{value, value / state.anchor_weight()};
}

std::uint64_t hoeffding_shots(double spread, double delta, double alpha) {
    if (!(delta > 0.0) || !(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("Hoeffding budget needs delta > 0 and 0 < alpha < 1");
    }
    const double shots = spread * spread * std::log(2.0 / alpha) / (2.0 * delta * delta);
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(shots)));
}

SampledEstimate sample_expectation(
    const AmplitudeState &state, const Observable &M, double delta, double alpha, Rng &rng) {
    if (state.levels() != M.levels()) {
        throw std::invalid_argument("observable dimension does not match the state");
    }
    SampledEstimate result;
    result.shots = hoeffding_shots(M.spread(), delta, alpha);
    const CVector weights = M.eigenvectors().adjoint() * state.amps();
    std::vector<double> probs(static_cast<std::size_t>(weights.size()));
    for (Eigen::Index i = 0; i < weights.size(); ++i) {
        probs[static_cast<std::size_t>(i)] = std::norm(weights[i]);
    }
    std::discrete_distribution<std::size_t> outcome(probs.begin(), probs.end());
    double sum = 0.0;
    for (std::uint64_t s = 0; s < result.shots; ++s) {
        sum += M.eigenvalues()[static_cast<Eigen::Index>(outcome(rng.engine()))];
    }
    result.estimate = sum / static_cast<double>(result.shots);
    return result;
}

CVector fourier_spectrum(const CVector &z) {
    const auto n = z.size();
    if (n == 0) {
        throw std::invalid_argument("fourier spectrum needs n >= 1");
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    CVector s = CVector::Zero(n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        Complex acc{0.0, 0.0};
        for (Eigen::Index j = 1; j <= n; ++j) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
            acc += z[j - 1] * std::polar(1.0, angle);
        }
        s[k - 1] = acc * scale;
    }
    return s;
}

Observable read_observable_csv(std::istream &in, std::size_t levels, std::string name) {
    const auto d = static_cast<Eigen::Index>(levels);
    CMatrix m = CMatrix::Zero(d, d);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "row,col,re,im") {
            continue;
        }
        std::istringstream fields(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(fields, cell, ',')) {
            cells.push_back(cell);
        }
        if (cells.size() != 4) {
            throw std::invalid_argument("triplet CSV line " + std::to_string(line_no) + ": expected 4 fields");
        }
        const long row = std::stol(cells[0]);
        const long col = std::stol(cells[1]);
        if (row < 0 || col < 0 || row >= d || col >= d) {
            throw std::invalid_argument("triplet CSV line " + std::to_string(line_no) + ": index out of range");
        }
        m(row, col) += Complex(std::stod(cells[2]), std::stod(cells[3]));
    }
    return Observable(std::move(m), std::move(name));
}

}  // namespace qeuler
