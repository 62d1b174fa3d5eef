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

#include "qcutoff/matcore.hpp"

#include <array>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qcutoff/error.hpp"

namespace qcutoff {

void require_square(const CMatrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw ShapeError(std::string(what) + ": expected a square matrix, got " +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

void require_finite(const CMatrix& a, const char* what) {
  if (!a.allFinite()) {
    throw DomainError(std::string(what) + ": matrix has non-finite entries");
  }
}

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

namespace {

double one_norm(const CMatrix& a) {
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

// Pade numerator/denominator pair for degree m in {3, 5, 7, 9}.
template <std::size_t N>
void pade_low(const CMatrix& a, const std::array<double, N>& b, CMatrix& u,
              CMatrix& v) {
  const Eigen::Index n = a.rows();
  const CMatrix a2 = a * a;
  CMatrix power = CMatrix::Identity(n, n);
  CMatrix uu = CMatrix::Zero(n, n);
  CMatrix vv = CMatrix::Zero(n, n);
  for (std::size_t k = 0; k < N; k += 2) {
    uu += b[k + 1] * power;
    vv += b[k] * power;
    power = power * a2;
  }
  u = a * uu;
  v = vv;
}

void pade13(const CMatrix& a, CMatrix& u, CMatrix& v) {
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  const Eigen::Index n = a.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix a2 = a * a;
  const CMatrix a4 = a2 * a2;
  const CMatrix a6 = a4 * a2;
  CMatrix inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
  u = a * (a6 * inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
  v = a6 * inner + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

}  // namespace

CMatrix mat_exp(const CMatrix& a, double t) {
  require_square(a, "mat_exp");
  require_finite(a, "mat_exp");
  if (!std::isfinite(t)) throw DomainError("mat_exp: non-finite time");
  const Eigen::Index n = a.rows();
  if (n == 0) return CMatrix(0, 0);

  CMatrix scaled = t * a;
  const double norm = one_norm(scaled);

  // Backward-error thresholds for Pade degrees 3, 5, 7, 9, 13 in double
  // precision.
  static constexpr std::array<double, 4> theta = {
      1.495585217958292e-2, 2.539398330063230e-1, 9.504178996162932e-1,
      2.097847961257068e0};
  static constexpr double theta13 = 5.371920351148152e0;

  CMatrix u;
  CMatrix v;
  int squarings = 0;
  if (norm <= theta[0]) {
    pade_low(scaled, std::array<double, 4>{120.0, 60.0, 12.0, 1.0}, u, v);
  } else if (norm <= theta[1]) {
    pade_low(scaled,
             std::array<double, 6>{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0},
             u, v);
  } else if (norm <= theta[2]) {
    pade_low(scaled,
             std::array<double, 8>{17297280.0, 8648640.0, 1995840.0, 277200.0,
                                   25200.0, 1512.0, 56.0, 1.0},
             u, v);
  } else if (norm <= theta[3]) {
    pade_low(scaled,
             std::array<double, 10>{17643225600.0, 8821612800.0, 2075673600.0,
                                    302702400.0, 30270240.0, 2162160.0,
                                    110880.0, 3960.0, 90.0, 1.0},
             u, v);
  } else {
    if (norm > theta13) {
      squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / theta13))));
      scaled /= std::ldexp(1.0, squarings);
    }
    pade13(scaled, u, v);
  }

  CMatrix result = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

double trace_norm(const CMatrix& a) {
  require_square(a, "trace_norm");
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<CMatrix> svd(a);
  return svd.singularValues().sum();
}

double operator_norm(const CMatrix& a) {
  require_finite(a, "operator_norm");
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<CMatrix> svd(a);
  return svd.singularValues()(0);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  if (rows > kDeskScaleCap || cols > kDeskScaleCap) {
    throw CapExceeded("kron: result " + std::to_string(rows) + "x" +
                      std::to_string(cols) + " exceeds the desk-scale cap of " +
                      std::to_string(kDeskScaleCap));
  }
  CMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix kron_sum(const CMatrix& a, const CMatrix& b) {
  require_square(a, "kron_sum");
  require_square(b, "kron_sum");
  return kron(a, identity(b.rows())) + kron(identity(a.rows()), b);
}

EigenSystem eig(const CMatrix& a, double tol) {
  require_square(a, "eig");
  require_finite(a, "eig");
  EigenSystem out;
  if (a.rows() == 0) return out;
  Eigen::ComplexEigenSolver<CMatrix> solver(a, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig: Schur iteration did not converge");
  }
  out.eigenvalues = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
  for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) {
    const double nrm = out.vectors.col(k).norm();
    if (nrm > 0.0) out.vectors.col(k) /= nrm;
  }
  const CMatrix r = a * out.vectors - out.vectors * out.eigenvalues.asDiagonal();
  out.residual = r.colwise().norm().maxCoeff();
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff() *
                                         static_cast<double>(a.rows()));
  if (out.residual > tol * scale) {
    throw NumericalError("eig: residual " + std::to_string(out.residual) +
                         " above tolerance");
  }
  return out;
}

Eigen::Index numerical_rank(const CMatrix& a, double threshold) {
  if (a.size() == 0) return 0;
  Eigen::BDCSVD<CMatrix> svd(a);
  const RVector& s = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > threshold) ++rank;
  }
  return rank;
}

CMatrix null_space(const CMatrix& a, double threshold) {
  Eigen::BDCSVD<CMatrix> svd(a, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > threshold) ++rank;
  }
  return svd.matrixV().rightCols(a.cols() - rank);
}

CMatrix hermitian_part(const CMatrix& a) {
  return 0.5 * (a + a.adjoint());
}

bool is_hermitian(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  if (a.size() == 0) return true;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

namespace pauli {
CMatrix x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
CMatrix y() {
  CMatrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
CMatrix z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

CMatrix ket_bra(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  CMatrix m = CMatrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

}  // namespace qcutoff
