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

// Trace-norm and Bures contraction coefficients
//   eta[T] = sup_rho d(T(rho), T_phi(rho))
// estimated by multistart optimization over pure states, plus closed forms
// and the bound combiners for tensor products and commuting generators.

#include <cstdint>
#include <string>
#include <vector>

#include "qcutoff/liouville.hpp"
#include "qcutoff/matcore.hpp"

namespace qcutoff {

struct ContractionEstimate {
  double time = 0.0;
  // Value attained by `witness`; a certified lower bound on eta.
  double eta_lower = 0.0;
  // Certified upper bound (norm bracket or closed form), clamped to 1.
  double eta_upper = 1.0;
  // Raw norm bracket, unclamped.
  double bracket_lower = 0.0;
  double bracket_upper = 0.0;
  CVector witness;
  std::string method;
  int restarts_used = 0;
  std::uint64_t seed = 0;
  bool converged = true;
};

// 1/2 |(T - T_phi)(psi psi^dagger)|_1 for a unit vector psi.
double trace_objective(const Superoperator& channel, const Superoperator& asymptotic,
                       const CVector& psi);

// d_B(T(psi psi^dagger), T_phi(psi psi^dagger)).
double bures_objective(const Superoperator& channel, const Superoperator& asymptotic,
                       const CVector& psi);

// Multistart estimate for an explicit channel and its asymptotic part.
ContractionEstimate eta_tr_of(const Superoperator& channel, const Superoperator& asymptotic,
                              int restarts = 32, std::uint64_t seed = 0);
ContractionEstimate eta_b_of(const Superoperator& channel, const Superoperator& asymptotic,
                             int restarts = 32, std::uint64_t seed = 0);

// Estimates at time t for T_t = exp(tL), with T_phi from the peripheral
// spectrum of L.
ContractionEstimate eta_tr_estimate(const Superoperator& liouvillian, double t,
                                    int restarts = 32, std::uint64_t seed = 0);
ContractionEstimate eta_b_estimate(const Superoperator& liouvillian, double t,
                                   int restarts = 32, std::uint64_t seed = 0);

// Exact trace-norm contraction of qubit amplitude damping at rate gamma.
double eta_ad_closed_form(double gamma, double t);

struct PureFixpointBounds {
  double lower = 0.0;  // 1 - (1 - x)^n
  double upper = 0.0;  // sqrt(1 - (1 - x)^n)
  double survival = 1.0;  // (1 - x)^n, kept separately so 1 - lower is exact
};

// Bounds on eta_tr[T_t^{(x)n}] for a channel with a unique pure fixed point,
// given x = |T_t^*(1 - psi)|_inf. n may be as large as 1e12 or more.
PureFixpointBounds eta_pure_fixpoint_bounds(double x, double n);

struct SeparableBounds {
  double bures_lower = 0.0;
  double bures_upper = 1.0;
  double tr_lower = 0.0;
  double tr_upper = 1.0;
  // Single-factor data used to assemble the bracket.
  ContractionEstimate single_tr;
  ContractionEstimate single_b;
  double single_b_upper = 1.0;
};

// Bracket on the contraction of T_t^{(x)n} restricted to separable inputs,
// for a primitive generator. Throws DomainError if L is not primitive.
SeparableBounds eta_sep_bounds(const Superoperator& liouvillian, double t, double n,
                               int restarts = 32, std::uint64_t seed = 0);

// Direct optimization of the separable-input trace contraction over pure
// product states of n factors (n^d small).
ContractionEstimate eta_sep_brute_force(const Superoperator& liouvillian, double t, int n,
                                        int restarts = 16, std::uint64_t seed = 0);

struct CommutingSumBound {
  double raw = 0.0;
  double clamped = 0.0;
};

// eta[T_t] <= sum_j eta[T_{t,j}] for commuting generators.
CommutingSumBound commuting_sum_bound(const std::vector<double>& etas);

// eta[T (x) id] <= 4 d eta[T].
double tensor_embed_bound(double eta, int d);

}  // namespace qcutoff
