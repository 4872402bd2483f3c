// Copyright 2026 The bsent Authors
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

#include "bsent/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace bsent::linalg {

Matrix annihilation(int dim) {
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

SparseMatrix sparse_annihilation(int dim) {
  SparseMatrix a(dim, dim);
  a.reserve(Eigen::VectorXi::Constant(dim, 1));
  for (int n = 1; n < dim; ++n) a.insert(n - 1, n) = std::sqrt(static_cast<double>(n));
  a.makeCompressed();
  return a;
}

RealVector hermitian_eigenvalues(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double hermitian_trace_norm(const Matrix& h) {
  return hermitian_eigenvalues(h).cwiseAbs().sum();
}

Matrix expm_anti_hermitian(const Matrix& generator) {
  const Matrix h = kI * generator;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  const Vector phases =
      (-kI * solver.eigenvalues().cast<Complex>()).array().exp().matrix();
  const Matrix& v = solver.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

Vector expm_multiply(const SparseMatrix& generator, const Vector& v) {
  double one_norm = 0.0;
  for (int k = 0; k < generator.outerSize(); ++k) {
    double col = 0.0;
    for (SparseMatrix::InnerIterator it(generator, k); it; ++it) col += std::abs(it.value());
    one_norm = std::max(one_norm, col);
  }
  // Step norm <= 1/2 keeps every Taylor term monotonically decreasing.
  const int steps = std::max(1, static_cast<int>(std::ceil(2.0 * one_norm)));
  const double scale = 1.0 / steps;

  Vector result = v;
  for (int s = 0; s < steps; ++s) {
    Vector term = result;
    Vector sum = result;
    const double ref = std::max(result.norm(), 1e-300);
    for (int k = 1; k <= 80; ++k) {
      term = (generator * term) * (scale / k);
      sum += term;
      if (term.norm() <= 1e-18 * ref) break;
    }
    result = std::move(sum);
  }
  return result;
}

RealVector singular_values(const Matrix& m) {
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues();
}

double unitarity_defect(const Matrix& u) {
  const Matrix g = u.adjoint() * u - Matrix::Identity(u.cols(), u.cols());
  return g.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace bsent::linalg
