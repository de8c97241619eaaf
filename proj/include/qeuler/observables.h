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

#ifndef QEULER_OBSERVABLES_H
#define QEULER_OBSERVABLES_H

#include <cstdint>
#include <iosfwd>
#include <string>

#include "qeuler/qstate.h"
#include "qeuler/rng.h"
#include "qeuler/types.h"

namespace qeuler {

/// Hermitian observable on one (n+1)-level register.
class Observable {
   public:
    /// Throws std::invalid_argument if `matrix` is not square or not
    /// Hermitian within 1e-12.
    explicit Observable(CMatrix matrix, std::string name = "matrix");

    static Observable identity(std::size_t levels);
    /// |j><j|.
    static Observable projector(std::size_t levels, std::size_t j);
    /// |chi_k><chi_k| with chi_k = n^(-1/2) sum_{j=1..n} e^{-2 pi i j k / n} |j>, so that
    /// <phi|fourier_k|phi> = |S_k|^2 / 2 for an encoded state.
    static Observable fourier(std::size_t levels, std::size_t k);
    static Observable diagonal(const Eigen::VectorXd &values);

    const CMatrix &matrix() const {
        return matrix_;
    }
    const std::string &name() const {
        return name_;
    }
    std::size_t levels() const {
        return static_cast<std::size_t>(matrix_.rows());
    }
    /// ||M|| (largest |eigenvalue|).
    double norm_bound() const {
        return norm_bound_;
    }
    /// lambda_max - lambda_min, the range of a single measurement outcome.
    double spread() const {
        return eigenvalues_.maxCoeff() - eigenvalues_.minCoeff();
    }
    const Eigen::VectorXd &eigenvalues() const {
        return eigenvalues_;
    }
    const CMatrix &eigenvectors() const {
        return eigenvectors_;
    }

   private:
    CMatrix matrix_;
    std::string name_;
    Eigen::VectorXd eigenvalues_;
    CMatrix eigenvectors_;
    double norm_bound_ = 0.0;
};

struct Expectation {
    /// <phi|M|phi>.
    double state_value = 0.0;
    /// sum_{j,k=0..n} conj(z_j) M_jk z_k with z_0 = 1, which is 2 <phi|M|phi>
    /// for a state with anchor weight 1/2.
    double paper_value = 0.0;
};

Expectation expectation(const AmplitudeState &state, const Observable &M);

/// ceil(spread^2 ln(2/alpha) / (2 delta^2)).
std::uint64_t hoeffding_shots(double spread, double delta, double alpha);

struct SampledEstimate {
    double estimate = 0.0;
    std::uint64_t shots = 0;
};

/// Simulated projective measurement of M in its eigenbasis, repeated
/// hoeffding_shots times; returns the sample mean.
SampledEstimate sample_expectation(const AmplitudeState &state, const Observable &M, double delta, double alpha, Rng &rng);

/// S_k = n^(-1/2) sum_{j=1..n} z_j e^{2 pi i j k / n}, returned for k = 1..n
/// (element k-1 holds S_k).
CVector fourier_spectrum(const CVector &z);

/// Reads the "row,col,re,im" triplet CSV into a levels x levels observable.
Observable read_observable_csv(std::istream &in, std::size_t levels, std::string name = "csv");

}  // namespace qeuler

#endif  // QEULER_OBSERVABLES_H
