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

#include "qcutoff/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qcutoff/error.hpp"
#include "qcutoff/random.hpp"

namespace qcutoff {

void require_state(const CMatrix& rho, const char* what, double tol) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    throw ShapeError(std::string(what) + ": state must be a nonempty square matrix");
  }
  if (!rho.allFinite()) throw DomainError(std::string(what) + ": non-finite entries");
  if (std::abs(rho.trace() - 1.0) > tol) {
    throw DomainError(std::string(what) + ": trace differs from 1");
  }
  if (!is_hermitian(rho, tol)) throw DomainError(std::string(what) + ": not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(rho), Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) < -tol) {
    throw DomainError(std::string(what) + ": not positive semidefinite");
  }
}

CMatrix psd_sqrt(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(a));
  RVector ev = es.eigenvalues();
  // Eigenvalues at roundoff level carry no information; treating them as
  // zero keeps square roots of pure states exact.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                       std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    ev(i) = ev(i) <= floor ? 0.0 : std::sqrt(ev(i));
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

double trace_distance(const CMatrix& rho, const CMatrix& sigma) {
  require_state(rho, "trace_distance");
  require_state(sigma, "trace_distance");
  if (rho.rows() != sigma.rows()) throw ShapeError("trace_distance: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(rho - sigma),
                                            Eigen::EigenvaluesOnly);
  return std::clamp(0.5 * es.eigenvalues().cwiseAbs().sum(), 0.0, 1.0);
}

double fidelity(const CMatrix& rho, const CMatrix& sigma) {
  require_state(rho, "fidelity");
  require_state(sigma, "fidelity");
  if (rho.rows() != sigma.rows()) throw ShapeError("fidelity: dimension mismatch");
  // tr sqrt(sqrt(rho) sigma sqrt(rho)) = |sqrt(rho) sqrt(sigma)|_1.
  const CMatrix prod = psd_sqrt(rho) * psd_sqrt(sigma);
  Eigen::BDCSVD<CMatrix> svd(prod);
  return std::clamp(svd.singularValues().sum(), 0.0, 1.0);
}

double bures_distance(const CMatrix& rho, const CMatrix& sigma) {
  return std::sqrt(std::max(0.0, 1.0 - fidelity(rho, sigma)));
}

DistancePair distances(const CMatrix& rho, const CMatrix& sigma) {
  DistancePair p;
  p.d_tr = trace_distance(rho, sigma);
  p.fidelity = fidelity(rho, sigma);
  p.d_B = std::sqrt(std::max(0.0, 1.0 - p.fidelity));
  return p;
}

double hubner_form(const CMatrix& rho, const CMatrix& sigma) {
  require_state(rho, "hubner_form");
  require_state(sigma, "hubner_form");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(sigma));
  const RVector& lam = es.eigenvalues();
  if (lam(0) <= 1e-12) throw DomainError("hubner_form: sigma is not full rank");
  const CMatrix delta = es.eigenvectors().adjoint() * (rho - sigma) * es.eigenvectors();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < delta.rows(); ++i) {
    for (Eigen::Index j = 0; j < delta.cols(); ++j) {
      sum += std::norm(delta(i, j)) / (lam(i) + lam(j));
    }
  }
  return 0.25 * sum;
}

TrNrmFidCheck check_trnrm_fid(const DistancePair& p) {
  TrNrmFidCheck c;
  const double db2 = p.d_B * p.d_B;
  const double top = std::sqrt(std::max(0.0, 1.0 - p.fidelity * p.fidelity));
  c.lower_gap = p.d_tr - db2;
  c.upper_gap = top - p.d_tr;
  c.identity_error = std::abs(p.d_B * std::sqrt(2.0 - db2) - top);
  return c;
}

namespace {

double min_eigenvalue(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Traceless Hermitian direction with unit trace norm.
CMatrix random_traceless(Eigen::Index d, Rng& rng) {
  CMatrix h = random_hermitian(d, rng);
  h -= (h.trace() / static_cast<double>(d)) * CMatrix::Identity(d, d);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return h / es.eigenvalues().cwiseAbs().sum();
}

// sigma + r H scaled back until it is PSD.
CMatrix perturbed_state(const CMatrix& sigma, const CMatrix& dir, double r) {
  CMatrix rho = sigma + r * dir;
  for (int i = 0; i < 60 && min_eigenvalue(rho) < 0.0; ++i) {
    r *= 0.5;
    rho = sigma + r * dir;
  }
  return hermitian_part(rho);
}

double full_rank_lambda_min(const CMatrix& sigma, const char* what) {
  require_state(sigma, what);
  const double lmin = min_eigenvalue(sigma);
  if (lmin <= 1e-12) {
    throw DomainError(std::string(what) + ": sigma is not full rank (lambda_min = " +
                      std::to_string(lmin) + ")");
  }
  return lmin;
}

}  // namespace

LinearBuresReport prop1_check(const CMatrix& sigma, int samples, double radius,
                              std::uint64_t seed, int max_retries) {
  LinearBuresReport rep;
  rep.lambda_min = full_rank_lambda_min(sigma, "prop1_check");
  rep.bound = 1.0 / std::sqrt(rep.lambda_min);
  rep.samples = samples;
  const Eigen::Index d = sigma.rows();
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double r = radius;
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    rep.violations = 0;
    rep.max_ratio = 0.0;
    for (int k = 0; k < samples; ++k) {
      const double s = r * (1.0 - unit(rng));  // in (0, r]
      CMatrix rho;
      switch (k % 3) {
        case 0:  // mixture with a random pure state: d_tr <= s
          rho = (1.0 - s) * sigma + s * random_pure_state(d, rng);
          break;
        case 1:
          rho = (1.0 - s) * sigma + s * random_density_matrix(d, rng);
          break;
        default:  // traceless perturbation with |rho - sigma|_1 <= 2 s
          rho = perturbed_state(sigma, 2.0 * random_traceless(d, rng), s);
          break;
      }
      const DistancePair p = distances(rho, sigma);
      if (p.d_tr < 1e-14) continue;
      rep.max_ratio = std::max(rep.max_ratio, p.d_B / p.d_tr);
      if (p.d_B > rep.bound * p.d_tr + 1e-12) ++rep.violations;
    }
    rep.radius = r;
    if (rep.violations == 0) return rep;
    r *= 0.5;
    ++rep.retries;
  }
  return rep;
}

double worst_bures_ratio(const CMatrix& sigma, double radius, std::uint64_t seed,
                         int restarts) {
  full_rank_lambda_min(sigma, "worst_bures_ratio");
  const Eigen::Index d = sigma.rows();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(sigma));
  const double lmin = es.eigenvalues()(0);
  const CVector vmin = es.eigenvectors().col(0);
  Rng rng(seed);

  auto ratio = [&](const CMatrix& rho) {
    const DistancePair p = distances(rho, sigma);
    if (p.d_tr < 1e-14 || p.d_tr > radius + 1e-15) return 0.0;
    return p.d_B / p.d_tr;
  };

  // Moving weight s*lambda_min out of the smallest eigenvector.
  double best = 0.0;
  CMatrix best_rho = sigma;
  for (int k = 1; k <= 64; ++k) {
    const double s = static_cast<double>(k) / 64.0;
    const double removed = s * lmin;
    CMatrix rho = sigma - removed * (vmin * vmin.adjoint());
    rho /= (1.0 - removed);
    const double r = ratio(hermitian_part(rho));
    if (r > best) {
      best = r;
      best_rho = hermitian_part(rho);
    }
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int restart = 0; restart < restarts; ++restart) {
    CMatrix rho = restart == 0 ? best_rho
                               : perturbed_state(sigma, 2.0 * random_traceless(d, rng),
                                                 radius * unit(rng));
    double current = ratio(rho);
    double step = 0.25 * radius;
    for (int it = 0; it < 200 && step > 1e-12; ++it) {
      const CMatrix trial = perturbed_state(rho, 2.0 * random_traceless(d, rng), step);
      const double value = ratio(trial);
      if (value > current) {
        current = value;
        rho = trial;
      } else if (it % 20 == 19) {
        step *= 0.5;
      }
    }
    best = std::max(best, current);
  }
  return best;
}

std::vector<OrthogonalMixturePoint> orthogonal_mixture(const CMatrix& rho,
                                                       const CMatrix& sigma,
                                                       const std::vector<double>& deltas) {
  require_state(rho, "orthogonal_mixture");
  require_state(sigma, "orthogonal_mixture");
  if ((rho * sigma).cwiseAbs().maxCoeff() > 1e-12) {
    throw DomainError("orthogonal_mixture: rho and sigma are not orthogonal");
  }
  std::vector<OrthogonalMixturePoint> out;
  out.reserve(deltas.size());
  for (double delta : deltas) {
    if (delta < 0.0 || delta > 1.0) throw DomainError("orthogonal_mixture: delta outside [0,1]");
    const CMatrix mix = delta * rho + (1.0 - delta) * sigma;
    const DistancePair p = distances(mix, sigma);
    out.push_back({delta, p.d_tr, p.fidelity, p.d_B});
  }
  return out;
}

ProductDistanceBounds product_distance_bounds(const std::vector<DistancePair>& per_factor) {
  double sum_tr = 0.0;
  double sum_tr_sq = 0.0;
  double sum_b_sq = 0.0;
  for (const DistancePair& p : per_factor) {
    sum_tr += p.d_tr;
    sum_tr_sq += p.d_tr * p.d_tr;
    sum_b_sq += p.d_B * p.d_B;
  }
  ProductDistanceBounds b;
  b.tr_lower = -std::expm1(-0.5 * sum_tr_sq);
  b.tr_upper = sum_tr;
  b.bures_sq_lower = -std::expm1(-sum_b_sq);
  b.bures_sq_upper = sum_b_sq;
  return b;
}

CMatrix kron_all(const std::vector<CMatrix>& factors) {
  if (factors.empty()) return CMatrix::Identity(1, 1);
  CMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

}  // namespace qcutoff
