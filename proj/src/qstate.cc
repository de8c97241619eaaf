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

#include "qeuler/qstate.h"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "qeuler/io.h"

namespace qeuler {

AmplitudeState::AmplitudeState(CVector amps, double tol) : amps_(std::move(amps)) {
    if (amps_.size() < 2) {
        throw std::invalid_argument("amplitude state needs the anchor and at least one variable");
    }
    if (!amps_.allFinite()) {
        throw std::invalid_argument("non-finite amplitudes");
    }
    double norm = amps_.norm();
    if (std::abs(norm - 1.0) > tol) {
        throw std::invalid_argument("amplitude state is not normalized (norm " + std::to_string(norm) + ")");
    }
}

JointState::JointState(CVector amps, std::size_t levels, std::size_t copies)
    : amps_(std::move(amps)), levels_(levels), copies_(copies) {
    std::size_t reg = 1;
    for (std::size_t i = 0; i < copies; ++i) {
        reg *= levels;
    }
    if (static_cast<std::size_t>(amps_.size()) != 2 * reg) {
        throw std::invalid_argument("joint state size does not match 2 * levels^copies");
    }
}

AmplitudeState encode(const CVector &z, double tol) {
    if (z.size() == 0) {
        throw std::invalid_argument("cannot encode an empty vector");
    }
    double sq = z.squaredNorm();
    if (!(std::abs(sq - 1.0) <= tol)) {
        throw std::invalid_argument("normalization violated: |z|^2 = " + std::to_string(sq));
    }
    CVector amps(z.size() + 1);
    const double r = 1.0 / std::sqrt(2.0);
    amps[0] = r;
    amps.tail(z.size()) = z * r;
    return AmplitudeState(std::move(amps), 2 * tol + 1e-12);
}

CVector decode(const AmplitudeState &state) {
    const CVector aligned = align_anchor_phase(state.amps());
    if (std::abs(aligned[0]) < 1e-6) {
        throw std::domain_error("vanishing anchor amplitude");
    }
    const Eigen::Index n = aligned.size() - 1;
    return aligned.tail(n) / aligned[0].real();
}

CVector align_anchor_phase(const CVector &amps, Eigen::Index anchor) {
    const Complex a = amps[anchor];
    const double mag = std::abs(a);
    if (mag == 0.0) {
        return amps;
    }
    CVector out = amps * (std::conj(a) / mag);
    out[anchor] = Complex(mag, 0.0);
    return out;
}

JointState tensor_power(const AmplitudeState &state, std::size_t copies, std::size_t register_cap) {
    if (copies < 2) {
        throw std::invalid_argument("tensor power needs at least two copies");
    }
    const std::size_t levels = state.levels();
    std::size_t reg = 1;
    for (std::size_t i = 0; i < copies; ++i) {
        if (reg > register_cap / levels) {
            throw std::length_error("register dimension cap exceeded");
        }
        reg *= levels;
    }
    CVector product = state.amps();
    for (std::size_t i = 1; i < copies; ++i) {
        CVector next(product.size() * state.amps().size());
        for (Eigen::Index a = 0; a < product.size(); ++a) {
            next.segment(a * state.amps().size(), state.amps().size()) = product[a] * state.amps();
        }
        product = std::move(next);
    }
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(2 * reg));
    amps.head(static_cast<Eigen::Index>(reg)) = product;
    return JointState(std::move(amps), levels, copies);
}

double distance(const CVector &a, const CVector &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("dimension mismatch in distance");
    }
    const Complex overlap = b.dot(a);
    const double mag = std::abs(overlap);
    const Complex phase = mag > 0.0 ? overlap / mag : Complex(1.0, 0.0);
    return (a - phase * b).norm();
}

double distance(const AmplitudeState &a, const AmplitudeState &b) {
    return distance(a.amps(), b.amps());
}

double distance(const JointState &a, const JointState &b) {
    return distance(a.amps(), b.amps());
}

void write_state_csv(std::ostream &out, const CVector &amps) {
    out << "basis_index,re,im\n";
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        out << i << ',' << format_double(amps[i].real()) << ',' << format_double(amps[i].imag()) << '\n';
    }
}

}  // namespace qeuler
