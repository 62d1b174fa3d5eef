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

#include "qcutoff/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "qcutoff/error.hpp"
#include "qcutoff/metrics.hpp"
#include "qcutoff/random.hpp"
#include "qcutoff/spectral.hpp"

namespace qcutoff {

namespace {

// Derivative-free minimizer (Nelder-Mead with standard coefficients).
RVector nelder_mead(const std::function<double(const RVector&)>& f, RVector x0,
                    double step, int max_evals, double ftol) {
  const Eigen::Index n = x0.size();
  std::vector<RVector> simplex(n + 1, x0);
  std::vector<double> values(n + 1);
  for (Eigen::Index i = 0; i < n; ++i) simplex[i + 1](i) += step;
  for (Eigen::Index i = 0; i <= n; ++i) values[i] = f(simplex[i]);
  int evals = static_cast<int>(n + 1);
  std::vector<Eigen::Index> order(n + 1);

  while (evals < max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index a, Eigen::Index b) { return values[a] < values[b]; });
    const Eigen::Index best = order.front();
    const Eigen::Index worst = order.back();
    const Eigen::Index second = order[n - 1];
    if (std::abs(values[worst] - values[best]) <= ftol) break;

    RVector centroid = RVector::Zero(n);
    for (Eigen::Index i = 0; i <= n; ++i) {
      if (i != worst) centroid += simplex[i];
    }
    centroid /= static_cast<double>(n);

    const RVector reflected = centroid + (centroid - simplex[worst]);
    const double fr = f(reflected);
    ++evals;
    if (fr < values[best]) {
      const RVector expanded = centroid + 2.0 * (centroid - simplex[worst]);
      const double fe = f(expanded);
      ++evals;
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
    } else if (fr < values[second]) {
      simplex[worst] = reflected;
      values[worst] = fr;
    } else {
      const bool outside = fr < values[worst];
      const RVector contracted = outside ? RVector(centroid + 0.5 * (reflected - centroid))
                                         : RVector(centroid + 0.5 * (simplex[worst] - centroid));
      const double fc = f(contracted);
      ++evals;
      if (fc < std::min(fr, values[worst])) {
        simplex[worst] = contracted;
        values[worst] = fc;
      } else {
        for (Eigen::Index i = 0; i <= n; ++i) {
          if (i == best) continue;
          simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
          values[i] = f(simplex[i]);
          ++evals;
        }
      }
    }
  }
  const auto it = std::min_element(values.begin(), values.end());
  return simplex[static_cast<std::size_t>(it - values.begin())];
}

CVector to_unit_vector(const RVector& params, Eigen::Index d) {
  CVector psi(d);
  for (Eigen::Index i = 0; i < d; ++i) psi(i) = cplx(params(i), params(d + i));
  const double nrm = psi.norm();
  if (nrm < 1e-300) {
    psi = CVector::Zero(d);
    psi(0) = 1.0;
    return psi;
  }
  return psi / nrm;
}

RVector to_params(const CVector& psi) {
  const Eigen::Index d = psi.size();
  RVector p(2 * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    p(i) = psi(i).real();
    p(d + i) = psi(i).imag();
  }
  return p;
}

// Starting vectors: the computational basis first, then Haar-random states.
CVector start_vector(int restart, Eigen::Index d, Rng& rng) {
  if (restart < d) {
    CVector e = CVector::Zero(d);
    e(restart) = 1.0;
    return e;
  }
  return random_pure_vector(d, rng);
}

double positive_part_sum(const CMatrix& h, CMatrix* projector) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(h));
  double sum = 0.0;
  if (projector) *projector = CMatrix::Zero(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    const double ev = es.eigenvalues()(i);
    if (ev > 0.0) {
      sum += ev;
      if (projector) {
        *projector += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
      }
    }
  }
  return sum;
}

ContractionEstimate finish(ContractionEstimate est, const Superoperator& channel,
                           const Superoperator& asymptotic) {
  const NormBracket nb = norm_bracket(channel, asymptotic);
  est.bracket_lower = nb.lower;
  est.bracket_upper = nb.upper;
  est.eta_upper = std::min(1.0, nb.upper);
  return est;
}

}  // namespace

double trace_objective(const Superoperator& channel, const Superoperator& asymptotic,
                       const CVector& psi) {
  const CMatrix rho = psi * psi.adjoint();
  const CMatrix diff = channel.apply(rho) - asymptotic.apply(rho);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(diff), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double bures_objective(const Superoperator& channel, const Superoperator& asymptotic,
                       const CVector& psi) {
  const CMatrix rho = psi * psi.adjoint();
  const CMatrix a = hermitian_part(channel.apply(rho));
  const CMatrix b = hermitian_part(asymptotic.apply(rho));
  const CMatrix prod = psd_sqrt(a) * psd_sqrt(b);
  Eigen::BDCSVD<CMatrix> svd(prod);
  const double f = std::clamp(svd.singularValues().sum(), 0.0, 1.0);
  return std::sqrt(std::max(0.0, 1.0 - f));
}

ContractionEstimate eta_tr_of(const Superoperator& channel, const Superoperator& asymptotic,
                              int restarts, std::uint64_t seed) {
  if (channel.dim != asymptotic.dim) throw ShapeError("eta_tr_of: dimension mismatch");
  if (restarts < 1) throw DomainError("eta_tr_of: restarts must be positive");
  const Eigen::Index d = channel.dim;
  const Superoperator diff(d, channel.matrix - asymptotic.matrix);
  const Superoperator diff_dual = dual_superop(diff);

  ContractionEstimate est;
  est.method = "multistart-alternating-ascent";
  est.restarts_used = restarts;
  est.seed = seed;
  est.eta_lower = -1.0;
  est.converged = true;
  Rng rng(seed);

  // For traceless Hermitian X, 1/2 |X|_1 = max_{0 <= P <= 1} tr[P X], so
  // eta = max over projectors P and unit psi of <psi|D*(P)|psi>. Alternating
  // the two maximizations never decreases the objective.
  for (int r = 0; r < restarts; ++r) {
    CVector psi = start_vector(r, d, rng);
    double value = -1.0;
    bool converged = false;
    for (int it = 0; it < 1000; ++it) {
      CMatrix proj;
      const double current = positive_part_sum(diff.apply(psi * psi.adjoint()), &proj);
      if (current <= value + 1e-15 * std::max(1.0, std::abs(value))) {
        value = std::max(value, current);
        converged = true;
        break;
      }
      value = current;
      Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(diff_dual.apply(proj)));
      psi = es.eigenvectors().col(d - 1);
    }
    const double attained = trace_objective(channel, asymptotic, psi);
    if (attained > est.eta_lower) {
      est.eta_lower = attained;
      est.witness = psi;
      est.converged = converged;
    }
  }
  return finish(std::move(est), channel, asymptotic);
}

ContractionEstimate eta_b_of(const Superoperator& channel, const Superoperator& asymptotic,
                             int restarts, std::uint64_t seed) {
  if (channel.dim != asymptotic.dim) throw ShapeError("eta_b_of: dimension mismatch");
  if (restarts < 1) throw DomainError("eta_b_of: restarts must be positive");
  const Eigen::Index d = channel.dim;
  ContractionEstimate est;
  est.method = "multistart-nelder-mead";
  est.restarts_used = restarts;
  est.seed = seed;
  est.eta_lower = -1.0;
  Rng rng(seed);
  auto objective = [&](const RVector& p) {
    return -bures_objective(channel, asymptotic, to_unit_vector(p, d));
  };
  for (int r = 0; r < restarts; ++r) {
    RVector x = to_params(start_vector(r, d, rng));
    x = nelder_mead(objective, x, 0.2, 400 * static_cast<int>(2 * d), 1e-14);
    x = nelder_mead(objective, x, 0.01, 200 * static_cast<int>(2 * d), 1e-15);
    const CVector psi = to_unit_vector(x, d);
    const double attained = bures_objective(channel, asymptotic, psi);
    if (attained > est.eta_lower) {
      est.eta_lower = attained;
      est.witness = psi;
    }
  }
  est = finish(std::move(est), channel, asymptotic);
  // d_B^2 <= d_tr turns the trace-norm bracket into a Bures one.
  est.eta_upper = std::sqrt(est.eta_upper);
  return est;
}

ContractionEstimate eta_tr_estimate(const Superoperator& liouvillian, double t, int restarts,
                                    std::uint64_t seed) {
  const Superoperator channel = channel_at(liouvillian, t);
  const Superoperator asym = asymptotic_projector(liouvillian, t);
  ContractionEstimate est = eta_tr_of(channel, asym, restarts, seed);
  est.time = t;
  return est;
}

ContractionEstimate eta_b_estimate(const Superoperator& liouvillian, double t, int restarts,
                                   std::uint64_t seed) {
  const Superoperator channel = channel_at(liouvillian, t);
  const Superoperator asym = asymptotic_projector(liouvillian, t);
  ContractionEstimate est = eta_b_of(channel, asym, restarts, seed);
  est.time = t;
  return est;
}

double eta_ad_closed_form(double gamma, double t) {
  if (!(gamma > 0.0)) throw DomainError("eta_ad_closed_form: gamma must be positive");
  if (!(t >= 0.0)) throw DomainError("eta_ad_closed_form: time must be nonnegative");
  if (gamma * t <= std::log(2.0)) return std::exp(-gamma * t);
  return std::exp(-0.5 * gamma * t) / std::sqrt(-4.0 * std::expm1(-gamma * t));
}

PureFixpointBounds eta_pure_fixpoint_bounds(double x, double n) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("eta_pure_fixpoint_bounds: x outside [0,1]");
  if (!(n >= 1.0)) throw DomainError("eta_pure_fixpoint_bounds: n must be >= 1");
  PureFixpointBounds b;
  const double log_survival = n * std::log1p(-x);  // -inf when x = 1
  b.survival = std::exp(log_survival);
  b.lower = -std::expm1(log_survival);
  b.upper = std::sqrt(b.lower);
  return b;
}

SeparableBounds eta_sep_bounds(const Superoperator& liouvillian, double t, double n,
                               int restarts, std::uint64_t seed) {
  if (!(n >= 1.0)) throw DomainError("eta_sep_bounds: n must be >= 1");
  const PrimitivityResult prim = is_primitive(liouvillian);
  if (!prim.primitive) throw DomainError("eta_sep_bounds: generator is not primitive");

  SeparableBounds out;
  const Superoperator channel = channel_at(liouvillian, t);
  const Superoperator asym = asymptotic_projector(liouvillian, t);
  out.single_tr = eta_tr_of(channel, asym, restarts, seed);
  out.single_tr.time = t;
  out.single_b = eta_b_of(channel, asym, restarts, seed);
  out.single_b.time = t;

  // For full-rank sigma, d_B <= d_tr / sqrt(lambda_min(sigma)) for every rho.
  const double tr_up = out.single_tr.eta_upper;
  out.single_b_upper = std::min({1.0, std::sqrt(tr_up),
                                 tr_up / std::sqrt(prim.min_eigenvalue)});

  // Fidelity is multiplicative, so over pure product inputs
  // sup d_B^2 = 1 - (1 - eta_B^2)^n.
  auto product_bures = [n](double b) {
    return std::sqrt(-std::expm1(n * std::log1p(-std::min(1.0, b * b))));
  };
  const double b_lo = std::max(0.0, out.single_b.eta_lower);
  out.bures_lower = product_bures(b_lo);
  out.bures_upper = product_bures(out.single_b_upper);

  const double tr_lo = std::max(0.0, out.single_tr.eta_lower);
  out.tr_lower = std::max(out.bures_lower * out.bures_lower,
                          -std::expm1(-0.5 * n * tr_lo * tr_lo));
  const double bu = out.bures_upper;
  out.tr_upper = std::min({1.0, bu * std::sqrt(2.0 - bu * bu), n * tr_up});
  return out;
}

ContractionEstimate eta_sep_brute_force(const Superoperator& liouvillian, double t, int n,
                                        int restarts, std::uint64_t seed) {
  if (n < 1) throw DomainError("eta_sep_brute_force: n must be >= 1");
  const Eigen::Index d = liouvillian.dim;
  const double full = std::pow(static_cast<double>(d), n);
  if (full > 64.0) throw CapExceeded("eta_sep_brute_force: d^n above 64");
  const PrimitivityResult prim = is_primitive(liouvillian);
  if (!prim.primitive) throw DomainError("eta_sep_brute_force: generator is not primitive");

  const Superoperator channel = channel_at(liouvillian, t);
  const CMatrix sigma_n = kron_all(std::vector<CMatrix>(n, prim.stationary_state));
  auto value = [&](const RVector& p) {
    std::vector<CMatrix> outputs;
    outputs.reserve(n);
    for (int i = 0; i < n; ++i) {
      const CVector psi = to_unit_vector(p.segment(2 * d * i, 2 * d), d);
      outputs.push_back(channel.apply(psi * psi.adjoint()));
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(kron_all(outputs) - sigma_n),
                                              Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
  };

  ContractionEstimate est;
  est.time = t;
  est.method = "product-nelder-mead";
  est.restarts_used = restarts;
  est.seed = seed;
  est.eta_lower = -1.0;
  Rng rng(seed);
  for (int r = 0; r < restarts; ++r) {
    RVector x(2 * d * n);
    for (int i = 0; i < n; ++i) x.segment(2 * d * i, 2 * d) = to_params(start_vector(r, d, rng));
    auto neg = [&](const RVector& p) { return -value(p); };
    x = nelder_mead(neg, x, 0.2, 600 * static_cast<int>(x.size()), 1e-14);
    x = nelder_mead(neg, x, 0.01, 300 * static_cast<int>(x.size()), 1e-15);
    const double attained = value(x);
    if (attained > est.eta_lower) {
      est.eta_lower = attained;
      CMatrix prod = CMatrix::Identity(1, 1);
      for (int i = 0; i < n; ++i) {
        prod = kron(prod, CMatrix(to_unit_vector(x.segment(2 * d * i, 2 * d), d)));
      }
      est.witness = prod.col(0);
    }
  }
  est.eta_upper = 1.0;
  return est;
}

CommutingSumBound commuting_sum_bound(const std::vector<double>& etas) {
  CommutingSumBound b;
  for (double e : etas) {
    if (!(e >= 0.0 && e <= 1.0)) throw DomainError("commuting_sum_bound: eta outside [0,1]");
    b.raw += e;
  }
  b.clamped = std::min(1.0, b.raw);
  return b;
}

double tensor_embed_bound(double eta, int d) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("tensor_embed_bound: eta outside [0,1]");
  if (d < 2) throw DomainError("tensor_embed_bound: d must be >= 2");
  return 4.0 * d * eta;
}

}  // namespace qcutoff
