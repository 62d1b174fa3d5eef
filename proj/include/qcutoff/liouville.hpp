// Copyright 2026 The qcutoff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// GKLS generators and their matrix representations.
//
// Operators on C^d are represented in the orthonormal basis of matrix units
// F_{a*d+b} = |a><b|, i.e. row-major vectorization. In this basis the map
// X -> A X B^dagger has matrix kron(A, conj(B)), and the entries satisfy
// S_ij = tr[F_i^dagger S(F_j)].

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcutoff/matcore.hpp"

namespace qcutoff {

enum class OperatorBasis { MatrixUnitsRowMajor };

struct Superoperator {
  Eigen::Index dim = 0;  // Hilbert-space dimension d; matrix is d^2 x d^2
  CMatrix matrix;
  OperatorBasis basis = OperatorBasis::MatrixUnitsRowMajor;

  Superoperator() = default;
  Superoperator(Eigen::Index d, CMatrix m);

  CMatrix apply(const CMatrix& x) const;
  Eigen::Index side() const { return matrix.rows(); }
};

// A Hamiltonian plus Lindblad (jump) operators:
//   L(rho) = -i[H, rho] + sum_k (L_k rho L_k^dagger - 1/2 {L_k^dagger L_k, rho}).
struct LindbladModel {
  Eigen::Index dim = 0;
  std::optional<CMatrix> hamiltonian;
  std::vector<CMatrix> lindblad_ops;
  std::string label;

  // Throws ShapeError or HamiltonianError.
  void validate() const;
};

// Sum over `placement` of copies of a single-site generator acting on one
// factor of an n_sites-fold tensor product. An empty placement means every
// site.
struct TensorSumModel {
  LindbladModel site_model;
  int n_sites = 1;
  std::vector<int> placement;
};

CVector vectorize(const CMatrix& x);
CMatrix unvectorize(const CVector& v, Eigen::Index d);

Superoperator build_liouvillian(const LindbladModel& model);

using LinearAction = std::function<CMatrix(const CMatrix&)>;

// Matrix of an arbitrary linear action on d x d matrices. Linearity is
// spot-checked on random pairs; a detected violation throws DomainError.
Superoperator superop_matrix(const LinearAction& action, Eigen::Index dim,
                             std::uint64_t seed = 0, double tol = 1e-10);

// Heisenberg-picture dual: tr[A S*(B)] = tr[S(A) B].
Superoperator dual_superop(const Superoperator& s);

// T_t = exp(t L).
Superoperator channel_at(const Superoperator& liouvillian, double t);

// Explicit n-site model with every site operator embedded into the full
// Hilbert space. Site 0 is the leftmost Kronecker factor.
LindbladModel embed(const TensorSumModel& model);

Superoperator tensor_sum(const TensorSumModel& model);

// Matrix of the map S (x) R acting on operators of C^{d_S} (x) C^{d_R}.
Superoperator tensor_product(const Superoperator& s, const Superoperator& r);

Superoperator identity_superop(Eigen::Index dim);

// X -> U X U^dagger.
Superoperator unitary_conjugation(const CMatrix& u);

// |L*(1)|_2 for a generator; zero for trace-preserving dynamics.
double trace_preservation_defect(const Superoperator& liouvillian);

struct ChannelSampleCheck {
  double max_trace_error = 0.0;
  double min_eigenvalue = 1.0;
  double max_hermiticity_error = 0.0;
  bool passed(double tol = 1e-9) const {
    return max_trace_error <= tol && min_eigenvalue >= -tol &&
           max_hermiticity_error <= tol;
  }
};

// Applies the map to random pure and mixed states and records how far the
// outputs are from being density matrices.
ChannelSampleCheck check_channel_on_samples(const Superoperator& channel,
                                            int samples, std::uint64_t seed);

// Choi matrix sum_ij |i><j| (x) S(|i><j|). Only offered for d <= 8.
CMatrix choi_matrix(const Superoperator& s);

// Complete positivity via the smallest Choi eigenvalue.
bool is_completely_positive(const Superoperator& s, double tol = 1e-9);

// Operator norm of the matrix commutator [A, B].
double commutator_norm(const Superoperator& a, const Superoperator& b);

}  // namespace qcutoff
