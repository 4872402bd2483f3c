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

#include "bsent/optics.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace bsent {

namespace {

const Complex kIPowers[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

double hop(int m, int total) { return std::sqrt(static_cast<double>(m + 1) * (total - m)); }

void check_sector(int total, const CutoffConfig& cutoff) {
  if (total < 0 || total > 2 * cutoff.n_max)
    throw ConfigurationError("sector " + std::to_string(total) + " is outside the grid");
}

int sector_first_m(int total, const CutoffConfig& c) { return std::max(0, total - c.n_max); }
int sector_size(int total, const CutoffConfig& c) {
  return std::min(total, c.n_max) - sector_first_m(total, c) + 1;
}

// Real matrix times complex vector without promoting the matrix.
Vector real_times(const RealMatrix& q, const Vector& x) {
  RealVector re = q * x.real();
  RealVector im = q * x.imag();
  Vector out(x.size());
  out.real() = re;
  out.imag() = im;
  return out;
}

SparseMatrix joint_mode_operator(const CutoffConfig& c, Mode mode) {
  std::vector<Eigen::Triplet<Complex>> t;
  for (int m = 0; m <= c.n_max; ++m)
    for (int n = 0; n <= c.n_max; ++n) {
      if (mode == Mode::a && m > 0) t.emplace_back(c.index(m - 1, n), c.index(m, n), std::sqrt(m));
      if (mode == Mode::b && n > 0) t.emplace_back(c.index(m, n - 1), c.index(m, n), std::sqrt(n));
    }
  SparseMatrix op(c.joint_dim(), c.joint_dim());
  op.setFromTriplets(t.begin(), t.end());
  return op;
}

}  // namespace

BeamSplitterParams BeamSplitterParams::make(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi))
    throw ConfigurationError("beam-splitter angles must be finite");
  if (theta < 0.0) {
    theta = -theta;
    phi += kPi;
  }
  if (theta >= 4.0 * kPi) theta = std::fmod(theta, 4.0 * kPi);
  if (theta > 2.0 * kPi) {
    theta = 4.0 * kPi - theta;
    phi += kPi;
  }
  phi = std::fmod(phi, 2.0 * kPi);
  if (phi < 0.0) phi += 2.0 * kPi;
  if (phi >= 2.0 * kPi) phi = 0.0;
  return BeamSplitterParams{theta, phi};
}

SectorBasis::SectorBasis(const CutoffConfig& cutoff) : cutoff_(cutoff) {
  for (int total = 0; total < sector_count(); ++total) {
    const int lo = sector_first_m(total, cutoff_);
    const int k = sector_size(total, cutoff_);
    if (k == 1) {
      vectors_.push_back(RealMatrix::Ones(1, 1));
      values_.push_back(RealVector::Zero(1));
      continue;
    }
    RealVector diag = RealVector::Zero(k);
    RealVector sub(k - 1);
    for (int j = 0; j + 1 < k; ++j) sub[j] = -0.5 * hop(lo + j, total);
    Eigen::SelfAdjointEigenSolver<RealMatrix> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success)
      throw Error("sector eigensolver failed for N = " + std::to_string(total));
    vectors_.push_back(es.eigenvectors());
    values_.push_back(es.eigenvalues());
  }
}

int SectorBasis::first_m(int total) const {
  check_sector(total, cutoff_);
  return sector_first_m(total, cutoff_);
}

int SectorBasis::size(int total) const {
  check_sector(total, cutoff_);
  return sector_size(total, cutoff_);
}

const RealMatrix& SectorBasis::eigenvectors(int total) const {
  check_sector(total, cutoff_);
  return vectors_[static_cast<std::size_t>(total)];
}

const RealVector& SectorBasis::eigenvalues(int total) const {
  check_sector(total, cutoff_);
  return values_[static_cast<std::size_t>(total)];
}

BeamSplitter::BeamSplitter(const BeamSplitterParams& params, const CutoffConfig& cutoff)
    : BeamSplitter(params, std::make_shared<const SectorBasis>(cutoff)) {}

BeamSplitter::BeamSplitter(const BeamSplitterParams& params,
                           std::shared_ptr<const SectorBasis> basis)
    : params_(params), basis_(std::move(basis)) {
  if (!basis_) throw ConfigurationError("beam splitter needs a sector basis");
  if (!std::isfinite(params_.theta) || !std::isfinite(params_.phi))
    throw ConfigurationError("beam-splitter angles must be finite");
}

SectorBlock BeamSplitter::block(int total) const {
  const int lo = basis_->first_m(total);
  const int k = basis_->size(total);
  SectorBlock b{total, lo, Matrix::Identity(k, k)};
  if (params_.theta == 0.0) return b;
  const RealMatrix& q = basis_->eigenvectors(total);
  const RealVector& lambda = basis_->eigenvalues(total);
  Vector phase(k), e(k);
  for (int j = 0; j < k; ++j) {
    phase[j] = std::exp(Complex(0.0, -params_.theta * lambda[j]));
    e[j] = std::exp(Complex(0.0, params_.phi * (total - lo - j))) * kIPowers[j % 4];
  }
  Matrix qc = q.cast<Complex>();
  b.unitary = (qc * phase.asDiagonal()) * qc.transpose();
  b.unitary = e.asDiagonal() * b.unitary * e.conjugate().asDiagonal();
  return b;
}

std::vector<SectorBlock> BeamSplitter::blocks() const {
  std::vector<SectorBlock> out;
  for (int total = 0; total < basis_->sector_count(); ++total) out.push_back(block(total));
  return out;
}

SparseMatrix BeamSplitter::sparse() const {
  const CutoffConfig& c = cutoff();
  std::vector<Eigen::Triplet<Complex>> t;
  for (int total = 0; total < basis_->sector_count(); ++total) {
    SectorBlock b = block(total);
    const int k = static_cast<int>(b.unitary.rows());
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < k; ++i) {
        Complex v = b.unitary(i, j);
        if (v != Complex{})
          t.emplace_back(c.index(b.first_m + i, total - b.first_m - i),
                         c.index(b.first_m + j, total - b.first_m - j), v);
      }
  }
  SparseMatrix u(c.joint_dim(), c.joint_dim());
  u.setFromTriplets(t.begin(), t.end());
  return u;
}

Matrix BeamSplitter::dense() const { return Matrix(sparse()); }

Vector BeamSplitter::rotate_sector(int total, const Vector& x) const {
  const int lo = basis_->first_m(total);
  const int k = static_cast<int>(x.size());
  const RealMatrix& q = basis_->eigenvectors(total);
  const RealVector& lambda = basis_->eigenvalues(total);
  Vector e(k);
  for (int j = 0; j < k; ++j)
    e[j] = std::exp(Complex(0.0, params_.phi * (total - lo - j))) * kIPowers[j % 4];
  Vector y = e.conjugate().cwiseProduct(x);
  Vector z = real_times(q.transpose(), y);
  for (int j = 0; j < k; ++j) z[j] *= std::exp(Complex(0.0, -params_.theta * lambda[j]));
  return e.cwiseProduct(real_times(q, z));
}

JointState BeamSplitter::apply(const JointState& state) const {
  const CutoffConfig& c = cutoff();
  if (state.cutoff().n_max != c.n_max)
    throw ConfigurationError("beam splitter and state use different cutoffs");
  if (params_.theta == 0.0) return state;
  if (state.is_pure()) {
    const Vector& in = state.amplitudes();
    Vector out(in.size());
    for (int total = 0; total < basis_->sector_count(); ++total) {
      const int lo = basis_->first_m(total);
      const int k = basis_->size(total);
      Vector x(k);
      for (int j = 0; j < k; ++j) x[j] = in[c.index(lo + j, total - lo - j)];
      Vector y = rotate_sector(total, x);
      for (int j = 0; j < k; ++j) out[c.index(lo + j, total - lo - j)] = y[j];
    }
    return JointState::pure(std::move(out), state.cutoff(), state.leakage());
  }
  SparseMatrix u = sparse();
  SparseMatrix ud = u.adjoint();
  Matrix tmp = u * state.matrix();
  Matrix rho = tmp * ud;
  Matrix herm = 0.5 * (rho + rho.adjoint());
  return JointState::mixed(std::move(herm), state.cutoff(), state.leakage());
}

SparseMatrix bs_unitary(const BeamSplitterParams& params, const CutoffConfig& cutoff) {
  return BeamSplitter(params, cutoff).sparse();
}

JointState apply_bs(const JointState& state, const BeamSplitterParams& params) {
  return BeamSplitter(params, state.cutoff()).apply(state);
}

Matrix sector_generator(int total, const BeamSplitterParams& params, const CutoffConfig& cutoff) {
  check_sector(total, cutoff);
  const int lo = sector_first_m(total, cutoff);
  const int k = sector_size(total, cutoff);
  const Complex xi = 0.5 * params.theta * std::exp(Complex(0.0, -params.phi));
  Matrix g = Matrix::Zero(k, k);
  for (int j = 0; j + 1 < k; ++j) {
    double s = hop(lo + j, total);
    g(j + 1, j) = -xi * s;
    g(j, j + 1) = std::conj(xi) * s;
  }
  return g;
}

Matrix sector_block_exponential(int total, const BeamSplitterParams& params,
                                const CutoffConfig& cutoff) {
  Matrix g = sector_generator(total, params, cutoff);
  return g.exp();
}

Vector rotated_fock_coefficients(int total, const BeamSplitterParams& params) {
  if (total < 0) throw ConfigurationError("photon number must be non-negative");
  const double c = std::cos(0.5 * params.theta);
  const double s = std::sin(0.5 * params.theta);
  Vector out(total + 1);
  for (int m = 0; m <= total; ++m) {
    double root_binom =
        std::exp(0.5 * (std::lgamma(total + 1.0) - std::lgamma(m + 1.0) - std::lgamma(total - m + 1.0)));
    double mag = root_binom * std::pow(c, m) * std::pow(s, total - m);
    out[m] = mag * std::exp(Complex(0.0, params.phi * (total - m)));
  }
  return out;
}

DisplacementPair transform_displacement(Complex alpha, Complex beta,
                                        const BeamSplitterParams& params) {
  const double c = std::cos(0.5 * params.theta);
  const double s = std::sin(0.5 * params.theta);
  const Complex e = std::exp(Complex(0.0, params.phi));
  return DisplacementPair{alpha * c - beta * std::conj(e) * s, alpha * e * s + beta * c};
}

SqueezeTransformResult transform_squeeze(Complex gamma_a, Complex gamma_b,
                                         const BeamSplitterParams& params) {
  const double c = std::cos(0.5 * params.theta);
  const double s = std::sin(0.5 * params.theta);
  const Complex e2 = std::exp(Complex(0.0, 2.0 * params.phi));
  SqueezeTransformResult r;
  r.gamma_a = gamma_a * c * c + gamma_b * e2 * s * s;
  r.gamma_b = gamma_b * c * c + gamma_a * std::conj(e2) * s * s;
  // sin(theta) (gamma_a e^{-i phi} - gamma_b e^{i phi}) / 2, arranged so the
  // matched case gamma_a = e^{2i phi} gamma_b cancels inside the bracket
  r.two_mode_coeff =
      0.5 * std::sin(params.theta) * std::exp(Complex(0.0, -params.phi)) * (gamma_a - e2 * gamma_b);
  return r;
}

SparseMatrix squeeze_generator(const SqueezeTransformResult& k, const CutoffConfig& cutoff) {
  SparseMatrix a = joint_mode_operator(cutoff, Mode::a);
  SparseMatrix b = joint_mode_operator(cutoff, Mode::b);
  SparseMatrix aa = a * a;
  SparseMatrix bb = b * b;
  SparseMatrix ab = a * b;
  SparseMatrix g = 0.5 * k.gamma_a * aa + 0.5 * k.gamma_b * bb + k.two_mode_coeff * ab;
  SparseMatrix gd = g.adjoint();
  return SparseMatrix(g - gd);
}

}  // namespace bsent
