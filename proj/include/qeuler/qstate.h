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

#ifndef QEULER_QSTATE_H
#define QEULER_QSTATE_H

#include <iosfwd>

#include "qeuler/types.h"

namespace qeuler {

/// Normalized state of one (n+1)-level register. Basis index 0 is the
/// anchor; index j >= 1 carries variable z_j (up to the anchor's scale).
class AmplitudeState {
   public:
    /// Throws std::invalid_argument unless |amps| = 1 within `tol`.
    explicit AmplitudeState(CVector amps, double tol = 1e-10);

    const CVector &amps() const {
        return amps_;
    }
    std::size_t levels() const {
        return static_cast<std::size_t>(amps_.size());
    }
    std::size_t variable_count() const {
        return levels() - 1;
    }
    /// |amps[0]|^2.
    double anchor_weight() const {
        return std::norm(amps_[0]);
    }

   private:
    CVector amps_;
};

/// d copies of an (n+1)-level register followed by one ancilla qubit.
/// Layout is ancilla-slowest: index = ancilla * (n+1)^d + register_index,
/// with the first register the most significant digit of register_index.
class JointState {
   public:
    JointState(CVector amps, std::size_t levels, std::size_t copies);

    const CVector &amps() const {
        return amps_;
    }
    std::size_t levels() const {
        return levels_;
    }
    std::size_t copies() const {
        return copies_;
    }
    /// (n+1)^d, the size of one ancilla sector.
    std::size_t register_dim() const {
        return static_cast<std::size_t>(amps_.size()) / 2;
    }
    auto sector(int ancilla) const {
        auto d = static_cast<Eigen::Index>(register_dim());
        return amps_.segment(ancilla * d, d);
    }

   private:
    CVector amps_;
    std::size_t levels_;
    std::size_t copies_;
};

/// (1/sqrt2)(|0> + sum_j z_j |j>). Requires | |z|^2 - 1 | <= tol.
AmplitudeState encode(const CVector &z, double tol = 1e-10);

/// z_j = amps[j] / amps[0]. Requires |amps[0]| >= 1e-6.
CVector decode(const AmplitudeState &state);

/// Copy of `amps` rotated by the global phase that makes amps[anchor] real
/// and non-negative.
CVector align_anchor_phase(const CVector &amps, Eigen::Index anchor = 0);

/// state^{(x) d} (x) |0>_ancilla. Throws when (n+1)^d exceeds `register_cap`.
JointState tensor_power(const AmplitudeState &state, std::size_t copies, std::size_t register_cap = kDefaultRegisterCap);

/// min over theta of || a - e^{i theta} b ||.
double distance(const CVector &a, const CVector &b);
double distance(const AmplitudeState &a, const AmplitudeState &b);
double distance(const JointState &a, const JointState &b);

/// CSV with header "basis_index,re,im".
void write_state_csv(std::ostream &out, const CVector &amps);

}  // namespace qeuler

#endif  // QEULER_QSTATE_H
