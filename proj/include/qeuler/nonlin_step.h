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

#ifndef QEULER_NONLIN_STEP_H
#define QEULER_NONLIN_STEP_H

#include <iosfwd>
#include <limits>
#include <optional>

#include "qeuler/polysys.h"
#include "qeuler/qstate.h"
#include "qeuler/rng.h"
#include "qeuler/types.h"

namespace qeuler {

/// A = sum a^(alpha)_{k1..kd} |alpha 0..0><k1..kd| over the (n+1)^d register
/// space, including the anchor row a^(0)_{0..0} = 1.
SparseMatrix build_A(const PolynomialMap &map);

struct PowerIterationOptions {
    std::size_t max_iterations = 100000;
    double tolerance = 1e-12;
};

struct OperatorNorm {
    /// sigma_max(A) = ||H||.
    double h_norm = 0.0;
    /// s * a_max, with s = 2 max(row nnz, column nnz) and a_max = max |A_ij|.
    double h_norm_bound = 0.0;
    std::size_t sparsity = 0;
    double a_max = 0.0;
};

/// Largest singular value of A by power iteration on A^dagger A, plus the
/// row/column-sum bound. Throws std::runtime_error on non-convergence.
OperatorNorm operator_norm(const SparseMatrix &A, const PowerIterationOptions &options = {});

/// The pointer Hamiltonian H = -i A (x) |1><0| + i A^dagger (x) |0><1| for one
/// polynomial map, together with the exact step
///   W = sqrt(I - eps^2 H^2) + i eps H,
/// which is unitary whenever eps ||H|| <= 1. H^2 is block diagonal
/// (A^dagger A on the ancilla-0 sector, A A^dagger on the ancilla-1 sector),
/// so the square root is taken blockwise from two Hermitian eigendecompositions.
class StepOperator {
   public:
    /// eps defaults to 0.9 / h_norm_bound.
    explicit StepOperator(const PolynomialMap &map, std::optional<double> epsilon = std::nullopt);

    std::size_t levels() const {
        return levels_;
    }
    std::size_t copies() const {
        return copies_;
    }
    std::size_t register_dim() const {
        return register_dim_;
    }
    double epsilon() const {
        return epsilon_;
    }
    double h_norm() const {
        return norm_.h_norm;
    }
    double h_norm_bound() const {
        return norm_.h_norm_bound;
    }
    const OperatorNorm &norm() const {
        return norm_;
    }
    const SparseMatrix &A() const {
        return A_;
    }

    /// H x for a joint amplitude vector (ancilla-slowest layout).
    CVector apply_hamiltonian(const CVector &joint) const;
    /// W x.
    CVector apply(const CVector &joint) const;
    /// W as a dense (2D x 2D) matrix.
    CMatrix unitary() const;

   private:
    std::size_t levels_;
    std::size_t copies_;
    std::size_t register_dim_;
    SparseMatrix A_;
    OperatorNorm norm_;
    double epsilon_;
    CMatrix sqrt_sector0_;
    CMatrix sqrt_sector1_;
};

/// Default step parameter for an operator bound.
double default_epsilon(double h_norm_bound);

JointState apply_step(const JointState &joint, const StepOperator &op);

struct StepOutcome {
    bool success = false;
    double probability = 0.0;
    /// First register after a successful post-selection, anchor phase real.
    std::optional<AmplitudeState> posterior;
    /// ||F(w)|| for the input's decoded w, recovered from the probability and
    /// the input anchor weight. NaN until a step function fills it in.
    double norm_factor = std::numeric_limits<double>::quiet_NaN();
};

/// Measures the ancilla of an evolved joint state. Outcome 1 returns the
/// post-selected first register; the remaining registers are checked to sit
/// in |0..0> (relative residual mass < 1e-10).
StepOutcome postselect(const JointState &evolved, int outcome);

enum class StepMode { exact, sampled };

/// One nonlinear step on an arbitrary register state. In exact mode the
/// success branch is always taken; in sampled mode the outcome is drawn with
/// the exact probability and a failure discards the pair.
StepOutcome step_state(const AmplitudeState &input, const StepOperator &op, StepMode mode = StepMode::exact, Rng *rng = nullptr);

/// encode -> tensor_power -> apply_step -> postselect for a unit vector z.
StepOutcome quantum_step(
    const CVector &z,
    const PolynomialMap &map,
    std::optional<double> epsilon = std::nullopt,
    StepMode mode = StepMode::exact,
    Rng *rng = nullptr);

/// Sparse triplet CSV "row,col,re,im".
void write_triplets_csv(std::ostream &out, const SparseMatrix &m);

}  // namespace qeuler

#endif  // QEULER_NONLIN_STEP_H
