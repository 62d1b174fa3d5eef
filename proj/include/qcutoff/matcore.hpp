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

// Dense complex matrix kernel shared by every other module.

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace qcutoff {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Largest side length of any explicit matrix (superoperators of d <= 64).
inline constexpr Eigen::Index kDeskScaleCap = 4096;

struct Tolerances {
  double equality = 1e-9;
  double backward_error = 1e-12;
};

struct EigenSystem {
  CVector eigenvalues;
  CMatrix vectors;  // unit-norm right eigenvectors as columns
  double residual = 0.0;  // max_k |A v_k - lambda_k v_k|_2
};

void require_square(const CMatrix& a, const char* what);
void require_finite(const CMatrix& a, const char* what);

// e^{tA} by scaling and squaring with a degree-13 Pade approximant.
CMatrix mat_exp(const CMatrix& a, double t = 1.0);

// Sum of singular values.
double trace_norm(const CMatrix& a);

// Largest singular value.
double operator_norm(const CMatrix& a);

// Standard Kronecker product: block (i,j) of the result is a(i,j) * b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Eigenvalues and right eigenvectors through complex Schur reduction.
// Throws NumericalError when the residual relative to max(1, |A|) exceeds
// `tol`.
EigenSystem eig(const CMatrix& a, double tol = 1e-9);

CMatrix identity(Eigen::Index n);

// Kronecker sum a (x) I + I (x) b.
CMatrix kron_sum(const CMatrix& a, const CMatrix& b);

// Number of singular values above `threshold`.
Eigen::Index numerical_rank(const CMatrix& a, double threshold);

// Orthonormal basis of the (right) null space: right singular vectors whose
// singular values fall at or below `threshold`.
CMatrix null_space(const CMatrix& a, double threshold);

// Hermitian part (A + A^dagger)/2.
CMatrix hermitian_part(const CMatrix& a);

bool is_hermitian(const CMatrix& a, double tol);

// Pauli matrices and computational basis projectors used throughout the
// model zoo and the tests.
namespace pauli {
CMatrix x();
CMatrix y();
CMatrix z();
}  // namespace pauli

// |i><j| of size n.
CMatrix ket_bra(Eigen::Index n, Eigen::Index i, Eigen::Index j);

}  // namespace qcutoff
