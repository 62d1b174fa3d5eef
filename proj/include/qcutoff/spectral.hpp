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

// Spectral analysis of generators: gap, peripheral spectrum, asymptotic
// projection, primitivity, Jordan diagnostics and decay constants.

#include <cmath>
#include <string>
#include <vector>

#include "qcutoff/liouville.hpp"
#include "qcutoff/matcore.hpp"

namespace qcutoff {

struct SpectralOptions {
  // Eigenvalue lambda is peripheral iff |Re lambda| <= tol * |L|.
  double tol = 1e-9;
  // Rank threshold for Jordan tests is jordan_tol * |L|^k.
  double jordan_tol = 1e-8;
  bool compute_jordan = true;
  bool compute_primitivity = true;
  bool compute_kappa = true;
};

struct SpectralReport {
  CVector eigenvalues;
  double residual = 0.0;
  double scale = 0.0;  // operator norm of the generator matrix
  double gap = 0.0;
  std::vector<Eigen::Index> peripheral;
  // Largest Jordan block among eigenvalues with Re lambda = -gap.
  int jordan_index = 1;
  bool primitive = false;
  // Condition number of the (unit-column) eigenvector matrix; infinite or
  // flagged when the generator is numerically defective.
  double kappa = 1.0;
  bool kappa_flagged = false;

  // Largest modulus inside the unit disk of exp(tL).
  double subdominant_modulus(double t) const { return std::exp(-t * gap); }
};

SpectralReport spectral_report(const Superoperator& liouvillian,
                               const SpectralOptions& options = {});

// Sum over peripheral eigenvalues i*w of exp(i w t) P_w, with P_w the
// spectral projector built from left/right null spaces of L - i w.
Superoperator asymptotic_projector(const Superoperator& liouvillian, double t,
                                   double tol = 1e-9);

struct PrimitivityResult {
  bool primitive = false;
  Eigen::Index kernel_dim = 0;
  Eigen::Index peripheral_count = 0;
  // Unit-trace Hermitian representative of the kernel when it is
  // one-dimensional; empty otherwise.
  CMatrix stationary_state;
  double min_eigenvalue = 0.0;
};

PrimitivityResult is_primitive(const Superoperator& liouvillian, double tol = 1e-9);

struct DecayConstants {
  double lower = 0.0;  // lower * exp(-t gap) <= eta_tr[T_t]
  double upper = 0.0;  // eta_tr[T_t] <= upper * exp(-t nu)
  double gap = 0.0;
  double nu = 0.0;
  double kappa = 1.0;
  int jordan_index = 1;
  bool defective = false;
  std::string method;
  std::string warning;
};

// Instance constants of the two-sided exponential bound for 0 < nu < gap.
DecayConstants decay_constants(const Superoperator& liouvillian, double nu,
                               const SpectralOptions& options = {});

struct NormBracket {
  double norm = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

// |T - T_phi|/(8 sqrt d) <= eta_tr[T] <= sqrt(d)/2 |T - T_phi|.
NormBracket norm_bracket(const Superoperator& channel, const Superoperator& asymptotic);

// Heisenberg-picture evolution of 1 - psi for a generator whose unique
// stationary state is psi. The smallest invariant subspace of L* containing
// 1 - psi is found by Arnoldi iteration; its eigenvalues are exactly the
// modes occupied by psi.
class OccupiedModes {
public:
  OccupiedModes(const Superoperator& liouvillian, const CMatrix& psi,
                double tol = 1e-9);

  // Slowest occupied rate: min |Re lambda| over the occupied eigenvalues.
  double nu_bar() const { return nu_bar_; }
  const CVector& eigenvalues() const { return eigenvalues_; }
  Eigen::Index subspace_dim() const { return basis_.cols(); }

  // T_t^*(1 - psi) as a d x d matrix.
  CMatrix evolve(double t) const;

  // |T_t^*(1 - psi)|_inf.
  double x(double t) const;

private:
  Eigen::Index dim_ = 0;
  CMatrix basis_;
  CMatrix hessenberg_;
  double start_norm_ = 0.0;
  CVector eigenvalues_;
  CMatrix modes_;
  CVector mode_coeffs_;
  bool use_modes_ = false;
  double nu_bar_ = 0.0;
};

double occupied_decay_rate(const Superoperator& liouvillian, const CMatrix& psi,
                           double tol = 1e-9);

}  // namespace qcutoff
