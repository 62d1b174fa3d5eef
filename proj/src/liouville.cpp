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

#include "qcutoff/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qcutoff/error.hpp"
#include "qcutoff/random.hpp"

namespace qcutoff {

Superoperator::Superoperator(Eigen::Index d, CMatrix m) : dim(d), matrix(std::move(m)) {
  if (matrix.rows() != d * d || matrix.cols() != d * d) {
    throw ShapeError("Superoperator: matrix must be " + std::to_string(d * d) +
                     "x" + std::to_string(d * d));
  }
}

CMatrix Superoperator::apply(const CMatrix& x) const {
  if (x.rows() != dim || x.cols() != dim) {
    throw ShapeError("Superoperator::apply: operand has wrong shape");
  }
  return unvectorize(matrix * vectorize(x), dim);
}

CVector vectorize(const CMatrix& x) {
  CVector v(x.size());
  for (Eigen::Index a = 0; a < x.rows(); ++a) {
    for (Eigen::Index b = 0; b < x.cols(); ++b) v(a * x.cols() + b) = x(a, b);
  }
  return v;
}

CMatrix unvectorize(const CVector& v, Eigen::Index d) {
  if (v.size() != d * d) throw ShapeError("unvectorize: length is not d^2");
  CMatrix x(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) x(a, b) = v(a * d + b);
  }
  return x;
}

void LindbladModel::validate() const {
  if (dim <= 0) throw ShapeError("LindbladModel: dimension must be positive");
  if (hamiltonian) {
    if (hamiltonian->rows() != dim || hamiltonian->cols() != dim) {
      throw ShapeError("LindbladModel: Hamiltonian is not " + std::to_string(dim) +
                       "x" + std::to_string(dim));
    }
    if (!hamiltonian->allFinite()) {
      throw HamiltonianError("LindbladModel: Hamiltonian has non-finite entries");
    }
    if (!is_hermitian(*hamiltonian, 1e-10)) {
      throw HamiltonianError("LindbladModel: Hamiltonian is not Hermitian");
    }
  }
  for (std::size_t k = 0; k < lindblad_ops.size(); ++k) {
    const CMatrix& op = lindblad_ops[k];
    if (op.rows() != dim || op.cols() != dim) {
      throw ShapeError("LindbladModel: Lindblad operator " + std::to_string(k) +
                       " is not " + std::to_string(dim) + "x" + std::to_string(dim));
    }
    if (!op.allFinite()) {
      throw ModelError("LindbladModel: Lindblad operator " + std::to_string(k) +
                       " has non-finite entries");
    }
  }
}

Superoperator build_liouvillian(const LindbladModel& model) {
  model.validate();
  const Eigen::Index d = model.dim;
  if (d * d > kDeskScaleCap) {
    throw CapExceeded("build_liouvillian: d = " + std::to_string(d) +
                      " exceeds the desk-scale cap");
  }
  const CMatrix id = identity(d);
  CMatrix gen = CMatrix::Zero(d * d, d * d);
  const cplx minus_i(0.0, -1.0);
  if (model.hamiltonian) {
    const CMatrix& h = *model.hamiltonian;
    gen += minus_i * (kron(h, id) - kron(id, h.transpose()));
  }
  for (const CMatrix& l : model.lindblad_ops) {
    const CMatrix ldl = l.adjoint() * l;
    gen += kron(l, l.conjugate());
    gen -= 0.5 * kron(ldl, id);
    gen -= 0.5 * kron(id, ldl.transpose());
  }
  return Superoperator(d, std::move(gen));
}

Superoperator superop_matrix(const LinearAction& action, Eigen::Index dim,
                             std::uint64_t seed, double tol) {
  if (dim <= 0) throw ShapeError("superop_matrix: dimension must be positive");
  if (dim * dim > kDeskScaleCap) throw CapExceeded("superop_matrix: dimension too large");
  CMatrix m(dim * dim, dim * dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index e = 0; e < dim; ++e) {
      const CMatrix image = action(ket_bra(dim, c, e));
      if (image.rows() != dim || image.cols() != dim) {
        throw ShapeError("superop_matrix: action changed the operand shape");
      }
      m.col(c * dim + e) = vectorize(image);
    }
  }

  Rng rng(seed);
  for (int trial = 0; trial < 3; ++trial) {
    const CMatrix x = ginibre(dim, dim, rng);
    const CMatrix y = ginibre(dim, dim, rng);
    const cplx alpha = ginibre(1, 1, rng)(0, 0);
    const CMatrix lhs = action(alpha * x + y);
    const CMatrix rhs = alpha * action(x) + action(y);
    const double scale = std::max(1.0, lhs.norm() + rhs.norm());
    if ((lhs - rhs).norm() > tol * scale) {
      throw DomainError("superop_matrix: action is not linear");
    }
  }
  return Superoperator(dim, std::move(m));
}

Superoperator dual_superop(const Superoperator& s) {
  const Eigen::Index d = s.dim;
  CMatrix out(d * d, d * d);
  for (Eigen::Index y = 0; y < d; ++y) {
    for (Eigen::Index x = 0; x < d; ++x) {
      for (Eigen::Index c = 0; c < d; ++c) {
        for (Eigen::Index e = 0; e < d; ++e) {
          out(y * d + x, c * d + e) = s.matrix(e * d + c, x * d + y);
        }
      }
    }
  }
  return Superoperator(d, std::move(out));
}

Superoperator channel_at(const Superoperator& liouvillian, double t) {
  if (!(t >= 0.0)) throw DomainError("channel_at: time must be nonnegative");
  return Superoperator(liouvillian.dim, mat_exp(liouvillian.matrix, t));
}

LindbladModel embed(const TensorSumModel& model) {
  model.site_model.validate();
  if (model.n_sites < 1) throw DomainError("TensorSumModel: n_sites must be >= 1");
  const Eigen::Index d = model.site_model.dim;
  double full = 1.0;
  for (int i = 0; i < model.n_sites; ++i) full *= static_cast<double>(d);
  if (full * full > static_cast<double>(kDeskScaleCap)) {
    throw CapExceeded("tensor_sum: d^n = " + std::to_string(full) +
                      " exceeds the desk-scale cap; use a closed-form path");
  }
  std::vector<int> sites = model.placement;
  if (sites.empty()) {
    for (int i = 0; i < model.n_sites; ++i) sites.push_back(i);
  }
  for (int s : sites) {
    if (s < 0 || s >= model.n_sites) {
      throw DomainError("TensorSumModel: placement index out of range");
    }
  }

  auto lift = [&](const CMatrix& op, int site) {
    Eigen::Index left = 1;
    for (int i = 0; i < site; ++i) left *= d;
    Eigen::Index right = 1;
    for (int i = site + 1; i < model.n_sites; ++i) right *= d;
    return kron(kron(identity(left), op), identity(right));
  };

  LindbladModel out;
  out.dim = static_cast<Eigen::Index>(full);
  out.label = model.site_model.label + "^sum" + std::to_string(model.n_sites);
  if (model.site_model.hamiltonian) {
    CMatrix h = CMatrix::Zero(out.dim, out.dim);
    for (int s : sites) h += lift(*model.site_model.hamiltonian, s);
    out.hamiltonian = h;
  }
  for (int s : sites) {
    for (const CMatrix& op : model.site_model.lindblad_ops) {
      out.lindblad_ops.push_back(lift(op, s));
    }
  }
  return out;
}

Superoperator tensor_sum(const TensorSumModel& model) {
  return build_liouvillian(embed(model));
}

Superoperator tensor_product(const Superoperator& s, const Superoperator& r) {
  const Eigen::Index d1 = s.dim;
  const Eigen::Index d2 = r.dim;
  const Eigen::Index d = d1 * d2;
  if (d * d > kDeskScaleCap) throw CapExceeded("tensor_product: result too large");
  CMatrix out(d * d, d * d);
  // Composite matrix unit |a1 a2><b1 b2| has index (a1*d2+a2)*d + (b1*d2+b2).
  for (Eigen::Index a1 = 0; a1 < d1; ++a1)
    for (Eigen::Index b1 = 0; b1 < d1; ++b1)
      for (Eigen::Index a2 = 0; a2 < d2; ++a2)
        for (Eigen::Index b2 = 0; b2 < d2; ++b2) {
          const Eigen::Index row = (a1 * d2 + a2) * d + (b1 * d2 + b2);
          for (Eigen::Index c1 = 0; c1 < d1; ++c1)
            for (Eigen::Index e1 = 0; e1 < d1; ++e1) {
              const cplx sv = s.matrix(a1 * d1 + b1, c1 * d1 + e1);
              for (Eigen::Index c2 = 0; c2 < d2; ++c2)
                for (Eigen::Index e2 = 0; e2 < d2; ++e2) {
                  const Eigen::Index col = (c1 * d2 + c2) * d + (e1 * d2 + e2);
                  out(row, col) = sv * r.matrix(a2 * d2 + b2, c2 * d2 + e2);
                }
            }
        }
  return Superoperator(d, std::move(out));
}

Superoperator identity_superop(Eigen::Index dim) {
  return Superoperator(dim, identity(dim * dim));
}

Superoperator unitary_conjugation(const CMatrix& u) {
  require_square(u, "unitary_conjugation");
  return Superoperator(u.rows(), kron(u, u.conjugate()));
}

double trace_preservation_defect(const Superoperator& liouvillian) {
  const Superoperator dual = dual_superop(liouvillian);
  return dual.apply(identity(liouvillian.dim)).norm();
}

ChannelSampleCheck check_channel_on_samples(const Superoperator& channel,
                                            int samples, std::uint64_t seed) {
  Rng rng(seed);
  ChannelSampleCheck out;
  for (int k = 0; k < samples; ++k) {
    const CMatrix rho = (k % 2 == 0) ? random_pure_state(channel.dim, rng)
                                     : random_density_matrix(channel.dim, rng);
    const CMatrix img = channel.apply(rho);
    out.max_trace_error = std::max(out.max_trace_error, std::abs(img.trace() - 1.0));
    out.max_hermiticity_error =
        std::max(out.max_hermiticity_error, (img - img.adjoint()).cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(img),
                                              Eigen::EigenvaluesOnly);
    out.min_eigenvalue = std::min(out.min_eigenvalue, es.eigenvalues()(0));
  }
  return out;
}

CMatrix choi_matrix(const Superoperator& s) {
  if (s.dim > 8) throw CapExceeded("choi_matrix: offered only for d <= 8");
  const Eigen::Index d = s.dim;
  CMatrix choi = CMatrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      choi += kron(ket_bra(d, i, j), s.apply(ket_bra(d, i, j)));
    }
  }
  return choi;
}

bool is_completely_positive(const Superoperator& s, double tol) {
  const CMatrix choi = choi_matrix(s);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(choi),
                                            Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0) >= -tol;
}

double commutator_norm(const Superoperator& a, const Superoperator& b) {
  if (a.side() != b.side()) throw ShapeError("commutator_norm: size mismatch");
  return operator_norm(a.matrix * b.matrix - b.matrix * a.matrix);
}

}  // namespace qcutoff
