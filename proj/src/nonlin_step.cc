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

#include "qeuler/nonlin_step.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "qeuler/io.h"

namespace qeuler {

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        r *= base;
    }
    return r;
}

CMatrix sqrt_one_minus(const CMatrix &gram, double eps) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(gram);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed");
    }
    Eigen::VectorXd values = solver.eigenvalues();
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        values[i] = std::sqrt(std::max(0.0, 1.0 - eps * eps * values[i]));
    }
    const CMatrix &vecs = solver.eigenvectors();
    return vecs * values.cast<Complex>().asDiagonal() * vecs.adjoint();
}

}  // namespace

SparseMatrix build_A(const PolynomialMap &map) {
    const std::size_t levels = map.n() + 1;
    const std::size_t copies = map.degree();
    const std::size_t dim = ipow(levels, copies);
    const std::size_t row_stride = ipow(levels, copies - 1);

    std::vector<Eigen::Triplet<Complex>> triplets;
    triplets.emplace_back(0, 0, Complex(1.0, 0.0));
    for (const auto &t : map.terms()) {
        const Complex entry = t.coeff / static_cast<double>(orderings(t.index));
        const auto row = static_cast<Eigen::Index>(t.row * row_stride);
        std::vector<std::size_t> perm = t.index;
        do {
            std::size_t col = 0;
            for (std::size_t k : perm) {
                col = col * levels + k;
            }
            triplets.emplace_back(row, static_cast<Eigen::Index>(col), entry);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    SparseMatrix A(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    A.setFromTriplets(triplets.begin(), triplets.end());
    A.makeCompressed();
    return A;
}

OperatorNorm operator_norm(const SparseMatrix &A, const PowerIterationOptions &options) {
    OperatorNorm result;

    std::vector<std::size_t> col_count(static_cast<std::size_t>(A.cols()), 0);
    std::size_t max_row = 0;
    for (Eigen::Index r = 0; r < A.outerSize(); ++r) {
        std::size_t row_count = 0;
        for (SparseMatrix::InnerIterator it(A, r); it; ++it) {
            if (it.value() == Complex(0.0, 0.0)) {
                continue;
            }
            ++row_count;
            ++col_count[static_cast<std::size_t>(it.col())];
            result.a_max = std::max(result.a_max, std::abs(it.value()));
        }
        max_row = std::max(max_row, row_count);
    }
    const std::size_t max_col = *std::max_element(col_count.begin(), col_count.end());
    result.sparsity = 2 * std::max(max_row, max_col);
    result.h_norm_bound = static_cast<double>(result.sparsity) * result.a_max;

    // Fixed pseudo-random start so the iterate is never orthogonal to the top
    // singular vector by symmetry.
    Rng rng(0x51A7E5EEDULL);
    CVector v = rng.unit_vector(static_cast<std::size_t>(A.cols()), false);
    double lambda = 0.0;
    for (std::size_t it = 0; it < options.max_iterations; ++it) {
        CVector w = A.adjoint() * (A * v);
        lambda = v.dot(w).real();
        double residual = (w - lambda * v).norm();
        double wn = w.norm();
        if (wn == 0.0) {
            break;
        }
        if (residual <= options.tolerance * std::max(lambda, 1e-300)) {
            result.h_norm = std::sqrt(std::max(lambda, 0.0));
            return result;
        }
        v = w / wn;
    }
    throw std::runtime_error("power iteration did not converge");
}

double default_epsilon(double h_norm_bound) {
    return 0.9 / h_norm_bound;
}

StepOperator::StepOperator(const PolynomialMap &map, std::optional<double> epsilon)
    : levels_(map.n() + 1),
      copies_(map.degree()),
      register_dim_(ipow(map.n() + 1, map.degree())),
      A_(build_A(map)),
      norm_(operator_norm(A_)),
      epsilon_(epsilon.value_or(default_epsilon(norm_.h_norm_bound))) {
    if (!std::isfinite(epsilon_) || epsilon_ < 0.0) {
        throw std::domain_error("step parameter must be finite and non-negative");
    }
    if (epsilon_ * norm_.h_norm > 1.0 + 1e-12) {
        throw std::domain_error(
            "step parameter out of range: eps * ||H|| = " + std::to_string(epsilon_ * norm_.h_norm) + " > 1");
    }
    const CMatrix dense = CMatrix(A_);
    sqrt_sector0_ = sqrt_one_minus(dense.adjoint() * dense, epsilon_);
    sqrt_sector1_ = sqrt_one_minus(dense * dense.adjoint(), epsilon_);
}

CVector StepOperator::apply_hamiltonian(const CVector &joint) const {
    const auto d = static_cast<Eigen::Index>(register_dim_);
    if (joint.size() != 2 * d) {
        throw std::invalid_argument("joint state dimension does not match the operator");
    }
    const Complex i(0.0, 1.0);
    CVector out(2 * d);
    out.head(d) = i * (A_.adjoint() * joint.tail(d));
    out.tail(d) = -i * (A_ * joint.head(d));
    return out;
}

CVector StepOperator::apply(const CVector &joint) const {
    const auto d = static_cast<Eigen::Index>(register_dim_);
    if (joint.size() != 2 * d) {
        throw std::invalid_argument("joint state dimension does not match the operator");
    }
    CVector out(2 * d);
    out.head(d) = sqrt_sector0_ * joint.head(d) - epsilon_ * (A_.adjoint() * joint.tail(d));
    out.tail(d) = epsilon_ * (A_ * joint.head(d)) + sqrt_sector1_ * joint.tail(d);
    return out;
}

CMatrix StepOperator::unitary() const {
    const auto d = static_cast<Eigen::Index>(register_dim_);
    const CMatrix dense = CMatrix(A_);
    CMatrix w(2 * d, 2 * d);
    w.topLeftCorner(d, d) = sqrt_sector0_;
    w.topRightCorner(d, d) = -epsilon_ * dense.adjoint();
    w.bottomLeftCorner(d, d) = epsilon_ * dense;
    w.bottomRightCorner(d, d) = sqrt_sector1_;
    return w;
}

JointState apply_step(const JointState &joint, const StepOperator &op) {
    if (joint.levels() != op.levels() || joint.copies() != op.copies()) {
        throw std::invalid_argument("joint state layout does not match the operator");
    }
    if (!joint.amps().allFinite()) {
        throw std::domain_error("non-finite amplitudes");
    }
    CVector out = op.apply(joint.amps());
    if (!out.allFinite()) {
        throw std::domain_error("non-finite amplitudes after step");
    }
    return JointState(std::move(out), joint.levels(), joint.copies());
}

StepOutcome postselect(const JointState &evolved, int outcome) {
    if (outcome != 0 && outcome != 1) {
        throw std::invalid_argument("ancilla outcome must be 0 or 1");
    }
    const CVector sector = evolved.sector(outcome);
    const double total = evolved.amps().squaredNorm();
    const double mass = sector.squaredNorm();
    if (!(mass > 0.0)) {
        throw std::domain_error("zero-probability sector");
    }
    StepOutcome result;
    result.success = outcome == 1;
    result.probability = std::clamp(mass / total, 0.0, 1.0);
    if (outcome == 0) {
        return result;
    }

    const std::size_t levels = evolved.levels();
    const std::size_t stride = evolved.register_dim() / levels;
    CVector first(static_cast<Eigen::Index>(levels));
    for (std::size_t alpha = 0; alpha < levels; ++alpha) {
        first[static_cast<Eigen::Index>(alpha)] = sector[static_cast<Eigen::Index>(alpha * stride)];
    }
    const double kept = first.squaredNorm();
    const double residual = (mass - kept) / mass;
    if (residual > 1e-10) {
        throw std::logic_error(
            "post-selected state left " + std::to_string(residual) + " of its mass outside |alpha 0..0>");
    }
    result.posterior.emplace(align_anchor_phase(first / std::sqrt(kept)));
    return result;
}

StepOutcome step_state(const AmplitudeState &input, const StepOperator &op, StepMode mode, Rng *rng) {
    if (input.levels() != op.levels()) {
        throw std::invalid_argument("state dimension does not match the operator");
    }
    const JointState evolved = apply_step(tensor_power(input, op.copies()), op);
    const double p1 = evolved.sector(1).squaredNorm() / evolved.amps().squaredNorm();
    int outcome = 1;
    if (mode == StepMode::sampled) {
        if (rng == nullptr) {
            throw std::invalid_argument("sampled mode needs a random stream");
        }
        outcome = rng->bernoulli(std::clamp(p1, 0.0, 1.0)) ? 1 : 0;
    }
    StepOutcome result = postselect(evolved, outcome);
    const double eps = op.epsilon();
    if (eps > 0.0) {
        const double anchor_power = std::pow(input.anchor_weight(), static_cast<double>(op.copies()));
        result.norm_factor = std::sqrt(std::max(0.0, p1 / (eps * eps * anchor_power) - 1.0));
    }
    return result;
}

StepOutcome quantum_step(
    const CVector &z, const PolynomialMap &map, std::optional<double> epsilon, StepMode mode, Rng *rng) {
    const StepOperator op(map, epsilon);
    return step_state(encode(z), op, mode, rng);
}

void write_triplets_csv(std::ostream &out, const SparseMatrix &m) {
    out << "row,col,re,im\n";
    for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
        for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
            out << it.row() << ',' << it.col() << ',' << format_double(it.value().real()) << ','
                << format_double(it.value().imag()) << '\n';
        }
    }
}

}  // namespace qeuler
