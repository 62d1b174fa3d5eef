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

#include "qcutoff/random.hpp"

#include <cmath>

#include <Eigen/QR>

namespace qcutoff {

CMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx(re, im);
    }
  }
  return g;
}

CVector random_pure_vector(Eigen::Index d, Rng& rng) {
  CVector v = ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

CMatrix random_density_matrix(Eigen::Index d, Rng& rng) {
  const CMatrix g = ginibre(d, d, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitian_part(rho);
}

CMatrix random_pure_state(Eigen::Index d, Rng& rng) {
  const CVector v = random_pure_vector(d, rng);
  return v * v.adjoint();
}

CMatrix random_hermitian(Eigen::Index d, Rng& rng) {
  return hermitian_part(ginibre(d, d, rng));
}

std::vector<CMatrix> random_kraus_channel(Eigen::Index d, int kraus_rank, Rng& rng) {
  const CMatrix g = ginibre(d * kraus_rank, d, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  const CMatrix isometry =
      qr.householderQ() * CMatrix::Identity(d * kraus_rank, d);
  std::vector<CMatrix> kraus;
  kraus.reserve(kraus_rank);
  for (int k = 0; k < kraus_rank; ++k) {
    kraus.push_back(isometry.middleRows(k * d, d));
  }
  return kraus;
}

CMatrix apply_kraus(const std::vector<CMatrix>& kraus, const CMatrix& rho) {
  CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : kraus) out += k * rho * k.adjoint();
  return out;
}

}  // namespace qcutoff
