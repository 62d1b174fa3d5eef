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

#include "qcutoff/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qcutoff/error.hpp"

namespace qcutoff {

namespace {

// Greedy grouping of values lying within `tol` of a cluster's first member.
std::vector<std::vector<Eigen::Index>> cluster(const CVector& values,
                                               const std::vector<Eigen::Index>& idx,
                                               double tol) {
  std::vector<std::vector<Eigen::Index>> groups;
  for (Eigen::Index i : idx) {
    bool placed = false;
    for (auto& g : groups) {
      if (std::abs(values(i) - values(g.front())) <= tol) {
        g.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({i});
  }
  return groups;
}

cplx cluster_mean(const CVector& values, const std::vector<Eigen::Index>& g) {
  cplx sum = 0.0;
  for (Eigen::Index i : g) sum += values(i);
  return sum / static_cast<double>(g.size());
}

double condition_number(const CMatrix& m) {
  Eigen::BDCSVD<CMatrix> svd(m);
  const RVector& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double smin = s(s.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

struct PeripheralData {
  CVector eigenvalues;
  double scale = 0.0;
  std::vector<Eigen::Index> peripheral;
};

PeripheralData peripheral_data(const Superoperator& l, double tol) {
  PeripheralData out;
  out.eigenvalues = eig(l.matrix, std::max(tol, 1e-9)).eigenvalues;
  out.scale = operator_norm(l.matrix);
  const double thr = tol * out.scale;
  for (Eigen::Index i = 0; i < out.eigenvalues.size(); ++i) {
    if (std::abs(out.eigenvalues(i).real()) <= thr) out.peripheral.push_back(i);
  }
  return out;
}

// Spectral projectors of the peripheral eigenvalue clusters, paired with the
// eigenvalue i*w of each.
std::vector<std::pair<cplx, CMatrix>> peripheral_projectors(const Superoperator& l,
                                                            const PeripheralData& pd) {
  const Eigen::Index n = l.side();
  const double ctol = std::max(1e-7 * pd.scale, 1e-300);
  const double null_thr = 1e-8 * pd.scale;
  std::vector<std::pair<cplx, CMatrix>> out;
  for (const auto& g : cluster(pd.eigenvalues, pd.peripheral, ctol)) {
    const cplx lambda(0.0, cluster_mean(pd.eigenvalues, g).imag());
    const CMatrix shifted = l.matrix - lambda * CMatrix::Identity(n, n);
    const CMatrix right = null_space(shifted, null_thr);
    const CMatrix left = null_space(shifted.adjoint(), null_thr);
    const auto m = static_cast<Eigen::Index>(g.size());
    if (right.cols() != m || left.cols() != m) {
      throw NumericalError(
          "asymptotic_projector: peripheral eigenvalue has a nontrivial Jordan "
          "block (geometric multiplicity " + std::to_string(right.cols()) +
          ", algebraic " + std::to_string(m) + ")");
    }
    const CMatrix overlap = left.adjoint() * right;
    out.emplace_back(lambda, right * overlap.partialPivLu().solve(left.adjoint()));
  }
  return out;
}

PrimitivityResult primitivity_from(const Superoperator& l, const PeripheralData& pd,
                                   double tol) {
  PrimitivityResult out;
  out.peripheral_count = static_cast<Eigen::Index>(pd.peripheral.size());
  const double thr = tol * std::max(pd.scale, 1e-300);
  Eigen::BDCSVD<CMatrix> svd(l.matrix, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > thr) {
      ++rank;
      if (s(i) <= 1e3 * thr) {
        throw NumericalError("is_primitive: singular value " + std::to_string(s(i)) +
                             " lies at the kernel tolerance boundary");
      }
    }
  }
  out.kernel_dim = l.side() - rank;
  if (out.kernel_dim != 1) return out;

  CMatrix x = unvectorize(svd.matrixV().col(l.side() - 1), l.dim);
  const cplx tr = x.trace();
  if (std::abs(tr) < 1e-12) {
    throw NumericalError("is_primitive: kernel element has vanishing trace");
  }
  x /= tr;
  out.stationary_state = hermitian_part(x);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(out.stationary_state, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = es.eigenvalues()(0);
  out.primitive = out.peripheral_count == 1 && out.min_eigenvalue > tol;
  return out;
}

}  // namespace

SpectralReport spectral_report(const Superoperator& liouvillian,
                               const SpectralOptions& options) {
  const Superoperator& l = liouvillian;
  SpectralReport rep;
  const EigenSystem es = eig(l.matrix, std::max(options.tol, 1e-9));
  rep.eigenvalues = es.eigenvalues;
  rep.residual = es.residual;
  rep.scale = operator_norm(l.matrix);
  const double thr = options.tol * rep.scale;

  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < rep.eigenvalues.size(); ++i) {
    const double re = rep.eigenvalues(i).real();
    if (std::abs(re) <= thr) {
      rep.peripheral.push_back(i);
    } else if (re < 0.0) {
      gap = std::min(gap, -re);
    } else {
      throw DomainError("spectral_report: eigenvalue with positive real part " +
                        std::to_string(re) + "; not a generator of a contraction semigroup");
    }
  }
  if (rep.peripheral.empty()) {
    throw DomainError("spectral_report: no eigenvalue on the imaginary axis; the "
                      "generator is not trace preserving");
  }
  rep.gap = std::isfinite(gap) ? gap : 0.0;

  if (options.compute_jordan && rep.gap > 0.0) {
    const double ctol = 1e-5 * rep.scale;
    std::vector<Eigen::Index> at_gap;
    for (Eigen::Index i = 0; i < rep.eigenvalues.size(); ++i) {
      if (std::abs(-rep.eigenvalues(i).real() - rep.gap) <= ctol) at_gap.push_back(i);
    }
    const Eigen::Index n = l.side();
    for (const auto& g : cluster(rep.eigenvalues, at_gap, ctol)) {
      const auto m = static_cast<int>(g.size());
      const CMatrix shifted =
          l.matrix - cluster_mean(rep.eigenvalues, g) * CMatrix::Identity(n, n);
      CMatrix power = CMatrix::Identity(n, n);
      int block = m;
      for (int k = 1; k <= m; ++k) {
        power = power * shifted;
        const double rank_thr = options.jordan_tol * std::pow(rep.scale, k);
        if (n - numerical_rank(power, rank_thr) >= m) {
          block = k;
          break;
        }
      }
      rep.jordan_index = std::max(rep.jordan_index, block);
    }
  }

  if (options.compute_kappa) {
    rep.kappa = condition_number(es.vectors);
    rep.kappa_flagged = !(rep.kappa < 1e10) || rep.jordan_index > 1;
  }

  if (options.compute_primitivity) {
    PeripheralData pd;
    pd.eigenvalues = rep.eigenvalues;
    pd.scale = rep.scale;
    pd.peripheral = rep.peripheral;
    rep.primitive = primitivity_from(l, pd, options.tol).primitive;
  }
  return rep;
}

Superoperator asymptotic_projector(const Superoperator& liouvillian, double t,
                                   double tol) {
  if (!(t >= 0.0)) throw DomainError("asymptotic_projector: time must be nonnegative");
  const PeripheralData pd = peripheral_data(liouvillian, tol);
  CMatrix out = CMatrix::Zero(liouvillian.side(), liouvillian.side());
  for (const auto& [lambda, proj] : peripheral_projectors(liouvillian, pd)) {
    out += std::exp(lambda * t) * proj;
  }
  return Superoperator(liouvillian.dim, std::move(out));
}

PrimitivityResult is_primitive(const Superoperator& liouvillian, double tol) {
  return primitivity_from(liouvillian, peripheral_data(liouvillian, tol), tol);
}

DecayConstants decay_constants(const Superoperator& liouvillian, double nu,
                               const SpectralOptions& options) {
  SpectralOptions opts = options;
  opts.compute_primitivity = false;
  const SpectralReport rep = spectral_report(liouvillian, opts);
  if (!(rep.gap > 0.0)) throw DomainError("decay_constants: generator has zero gap");
  if (!(nu > 0.0) || !(nu < rep.gap)) {
    throw DomainError("decay_constants: require 0 < nu < gap = " + std::to_string(rep.gap));
  }

  DecayConstants out;
  out.gap = rep.gap;
  out.nu = nu;
  out.kappa = rep.kappa;
  out.jordan_index = rep.jordan_index;
  out.defective = rep.kappa_flagged;
  if (rep.jordan_index > 1) {
    out.warning = "eigenvalue at the gap has a Jordan block of size " +
                  std::to_string(rep.jordan_index) +
                  "; the rate nu cannot be taken equal to the gap";
  }

  const double sqrt_d = std::sqrt(static_cast<double>(liouvillian.dim));
  // |exp(tL) - T_phi| is at least its spectral radius exp(-t gap).
  out.lower = 1.0 / (8.0 * sqrt_d);

  double upper = std::numeric_limits<double>::infinity();
  if (!rep.kappa_flagged) {
    // exp(tL) - T_phi = V diag(exp(t lambda), 0 on the periphery) V^{-1}.
    upper = 0.5 * sqrt_d * rep.kappa;
    out.method = "eigenbasis-condition";
  }

  // Shift the peripheral part to -gap: M = L(1 - P) - gap P has
  // exp(tM) = exp(-t gap) P + exp(tL)(1 - P), and a Schur form M = Q(D + N)Q*
  // gives |exp(tM)| <= exp(t a) sum_k |tN|^k / k! with a = max Re spec(M).
  const PeripheralData pd = peripheral_data(liouvillian, opts.tol);
  CMatrix proj = CMatrix::Zero(liouvillian.side(), liouvillian.side());
  for (const auto& pp : peripheral_projectors(liouvillian, pd)) proj += pp.second;
  const Eigen::Index n = liouvillian.side();
  const CMatrix shifted =
      liouvillian.matrix * (CMatrix::Identity(n, n) - proj) - rep.gap * proj;
  Eigen::ComplexSchur<CMatrix> schur(shifted);
  const CMatrix& tri = schur.matrixT();
  double abscissa = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) abscissa = std::max(abscissa, tri(i, i).real());
  const CMatrix strict = tri.triangularView<Eigen::StrictlyUpper>();
  const double nnorm = operator_norm(strict);
  const double delta = -abscissa - nu;
  if (delta > 0.0) {
    // sup_t t^k exp(-delta t) = (k / (delta e))^k.
    double series = 1.0;
    if (nnorm > 0.0) {
      for (Eigen::Index k = 1; k < n; ++k) {
        const double kd = static_cast<double>(k);
        const double log_term = kd * std::log(nnorm) - std::lgamma(kd + 1.0) +
                                kd * (std::log(kd) - std::log(delta) - 1.0);
        series += std::exp(log_term);
      }
    }
    const double schur_upper = 0.5 * sqrt_d * (operator_norm(proj) + series);
    if (schur_upper < upper) {
      upper = schur_upper;
      out.method = "schur-van-loan";
    }
  }
  if (!std::isfinite(upper)) {
    throw NumericalError("decay_constants: no finite upper constant available");
  }
  out.upper = upper;
  return out;
}

NormBracket norm_bracket(const Superoperator& channel, const Superoperator& asymptotic) {
  if (channel.dim != asymptotic.dim) throw ShapeError("norm_bracket: dimension mismatch");
  NormBracket out;
  out.norm = operator_norm(channel.matrix - asymptotic.matrix);
  const double sqrt_d = std::sqrt(static_cast<double>(channel.dim));
  out.lower = out.norm / (8.0 * sqrt_d);
  out.upper = 0.5 * sqrt_d * out.norm;
  return out;
}

OccupiedModes::OccupiedModes(const Superoperator& liouvillian, const CMatrix& psi,
                             double tol)
    : dim_(liouvillian.dim) {
  if (psi.rows() != dim_ || psi.cols() != dim_) {
    throw ShapeError("occupied_decay_rate: state has the wrong shape");
  }
  if (!is_hermitian(psi, 1e-9) || std::abs(psi.trace() - 1.0) > 1e-9) {
    throw DomainError("occupied_decay_rate: psi is not a density matrix");
  }
  const double scale = operator_norm(liouvillian.matrix);
  if (liouvillian.apply(psi).norm() > 1e-8 * std::max(scale, 1.0)) {
    throw DomainError("occupied_decay_rate: psi is not stationary");
  }
  const Eigen::Index kernel =
      liouvillian.side() - numerical_rank(liouvillian.matrix, 1e-8 * scale);
  if (kernel != 1) {
    throw DomainError("occupied_decay_rate: stationary state is not unique (kernel "
                      "dimension " + std::to_string(kernel) + ")");
  }

  const CMatrix dual = dual_superop(liouvillian).matrix;
  const CVector start = vectorize(CMatrix::Identity(dim_, dim_) - psi);
  start_norm_ = start.norm();
  const Eigen::Index n = dual.rows();
  basis_ = CMatrix::Zero(n, n);
  CMatrix h = CMatrix::Zero(n + 1, n);
  basis_.col(0) = start / start_norm_;
  Eigen::Index k = 0;
  const double breakdown = 1e-10 * std::max(scale, 1e-300);
  for (; k < n; ++k) {
    CVector w = dual * basis_.col(k);
    for (int pass = 0; pass < 2; ++pass) {
      const CVector proj = basis_.leftCols(k + 1).adjoint() * w;
      w -= basis_.leftCols(k + 1) * proj;
      h.col(k).head(k + 1) += proj;
    }
    const double beta = w.norm();
    if (beta <= breakdown || k + 1 == n) {
      ++k;
      break;
    }
    h(k + 1, k) = beta;
    basis_.col(k + 1) = w / beta;
  }
  basis_.conservativeResize(n, k);
  hessenberg_ = h.topLeftCorner(k, k);

  const EigenSystem es = eig(hessenberg_, 1e-8);
  eigenvalues_ = es.eigenvalues;
  nu_bar_ = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i) {
    const double re = -eigenvalues_(i).real();
    if (re <= tol * scale) {
      throw NumericalError("occupied_decay_rate: 1 - psi overlaps a non-decaying mode");
    }
    nu_bar_ = std::min(nu_bar_, re);
  }
  if (condition_number(es.vectors) < 1e8) {
    use_modes_ = true;
    modes_ = es.vectors;
    CVector e1 = CVector::Zero(k);
    e1(0) = start_norm_;
    mode_coeffs_ = modes_.partialPivLu().solve(e1);
  }
}

CMatrix OccupiedModes::evolve(double t) const {
  if (!(t >= 0.0)) throw DomainError("OccupiedModes::evolve: negative time");
  CVector coeffs;
  if (use_modes_) {
    CVector scaled(mode_coeffs_.size());
    for (Eigen::Index i = 0; i < scaled.size(); ++i) {
      scaled(i) = std::exp(eigenvalues_(i) * t) * mode_coeffs_(i);
    }
    coeffs = modes_ * scaled;
  } else {
    coeffs = mat_exp(hessenberg_, t).col(0) * start_norm_;
  }
  return hermitian_part(unvectorize(basis_ * coeffs, dim_));
}

double OccupiedModes::x(double t) const { return operator_norm(evolve(t)); }

double occupied_decay_rate(const Superoperator& liouvillian, const CMatrix& psi,
                           double tol) {
  return OccupiedModes(liouvillian, psi, tol).nu_bar();
}

}  // namespace qcutoff
