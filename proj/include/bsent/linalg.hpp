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

#pragma once

#include <complex>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace bsent {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

namespace linalg {

/// Truncated annihilation operator on span{|0>, ..., |dim-1>}.
Matrix annihilation(int dim);
SparseMatrix sparse_annihilation(int dim);

/// Eigenvalues of a Hermitian matrix in ascending order. Only the lower
/// triangle is read.
RealVector hermitian_eigenvalues(const Matrix& h);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double hermitian_trace_norm(const Matrix& h);

/// exp(G) for anti-Hermitian G, computed from the spectral decomposition of
/// the Hermitian matrix iG. The result is unitary to working precision.
Matrix expm_anti_hermitian(const Matrix& generator);

/// exp(G) v for sparse G by scaled Taylor steps. Intended for anti-Hermitian
/// generators, where every step is norm preserving.
Vector expm_multiply(const SparseMatrix& generator, const Vector& v);

/// Singular values in descending order.
RealVector singular_values(const Matrix& m);

/// max_ij |(U^dagger U - I)_ij|
double unitarity_defect(const Matrix& u);

/// max_ij |(A - A^dagger)_ij|
double hermiticity_defect(const Matrix& a);

}  // namespace linalg
}  // namespace bsent
