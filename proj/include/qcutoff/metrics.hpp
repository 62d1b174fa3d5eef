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

// Distances between density matrices and the inequalities relating them.

#include <cstdint>
#include <vector>

#include "qcutoff/matcore.hpp"

namespace qcutoff {

// Trace within `tol` of one, Hermitian within `tol`, smallest eigenvalue at
// least -tol. Throws DomainError otherwise.
void require_state(const CMatrix& rho, const char* what, double tol = 1e-9);

// Principal square root of a PSD matrix; negative eigenvalues from roundoff
// are clamped to zero.
CMatrix psd_sqrt(const CMatrix& a);

double trace_distance(const CMatrix& rho, const CMatrix& sigma);

// F = tr sqrt(sqrt(rho) sigma sqrt(rho)), the root fidelity.
double fidelity(const CMatrix& rho, const CMatrix& sigma);

// d_B = sqrt(1 - F).
double bures_distance(const CMatrix& rho, const CMatrix& sigma);

struct DistancePair {
  double d_tr = 0.0;
  double fidelity = 1.0;
  double d_B = 0.0;
};

DistancePair distances(const CMatrix& rho, const CMatrix& sigma);

// Quadratic part of d_B^2 around a full-rank sigma:
//   (1/4) sum_ij |<i|(rho - sigma)|j>|^2 / (lambda_i + lambda_j).
double hubner_form(const CMatrix& rho, const CMatrix& sigma);

struct TrNrmFidCheck {
  double lower_gap = 0.0;  // d_tr - d_B^2 (>= 0)
  double upper_gap = 0.0;  // sqrt(1 - F^2) - d_tr (>= 0)
  double identity_error = 0.0;  // |d_B sqrt(2 - d_B^2) - sqrt(1 - F^2)|
  bool holds(double tol = 1e-9) const {
    return lower_gap >= -tol && upper_gap >= -tol && identity_error <= tol;
  }
};

// d_B^2 <= d_tr <= d_B sqrt(2 - d_B^2) = sqrt(1 - F^2).
TrNrmFidCheck check_trnrm_fid(const DistancePair& p);

struct LinearBuresReport {
  double lambda_min = 0.0;
  double bound = 0.0;  // 1/sqrt(lambda_min)
  double radius = 0.0;  // largest radius at which every sample satisfied the bound
  int samples = 0;
  int violations = 0;  // at the final radius
  double max_ratio = 0.0;  // max d_B / d_tr over samples at the final radius
  int retries = 0;
};

// Samples states rho with d_tr(rho, sigma) <= radius and checks
// d_B(rho, sigma) <= d_tr(rho, sigma) / sqrt(lambda_min(sigma)). On a
// violation the radius is halved and sampling repeats (up to max_retries).
// Throws DomainError when sigma is not full rank.
LinearBuresReport prop1_check(const CMatrix& sigma, int samples, double radius,
                              std::uint64_t seed, int max_retries = 8);

// Largest d_B / d_tr found by a local search over perturbations of sigma
// with d_tr <= radius, started from the directions that drain the smallest
// eigenvalue.
double worst_bures_ratio(const CMatrix& sigma, double radius, std::uint64_t seed,
                         int restarts = 16);

struct OrthogonalMixturePoint {
  double delta = 0.0;
  double d_tr = 0.0;
  double fidelity = 0.0;
  double d_B = 0.0;
};

// rho_delta = delta rho + (1 - delta) sigma for rho orthogonal to sigma.
std::vector<OrthogonalMixturePoint> orthogonal_mixture(const CMatrix& rho,
                                                       const CMatrix& sigma,
                                                       const std::vector<double>& deltas);

struct ProductDistanceBounds {
  double tr_lower = 0.0;  // 1 - exp(-1/2 sum d_tr,i^2)
  double tr_upper = 0.0;  // sum d_tr,i
  double bures_sq_lower = 0.0;  // 1 - exp(-sum d_B,i^2)
  double bures_sq_upper = 0.0;  // sum d_B,i^2
};

ProductDistanceBounds product_distance_bounds(const std::vector<DistancePair>& per_factor);

// Tensor product of a list of matrices, first entry leftmost.
CMatrix kron_all(const std::vector<CMatrix>& factors);

}  // namespace qcutoff
