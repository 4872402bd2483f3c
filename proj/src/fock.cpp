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

#include "bsent/fock.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace bsent {
namespace {

// Slack for rounding in trace sums of normalized states.
constexpr double kTraceRounding = 1e-13;

void require_same_cutoff(const CutoffConfig& x, const CutoffConfig& y,
                         const char* op) {
  if (x.n_max != y.n_max) {
    throw ConfigurationError(std::string(op) + ": cutoff mismatch (n_max " +
                             std::to_string(x.n_max) + " vs " +
                             std::to_string(y.n_max) + ")");
  }
}

using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Trace distance between two (possibly unnormalized) pure states via the
// 2x2 matrix of |u><u| - |v><v| on span{u, v}.
// Half trace norm of a Hermitian difference; diagonal inputs need no eigensolve.
double difference_trace_norm(const Matrix& diff) {
  if ((diff - Matrix(diff.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0)
    return 0.5 * diff.diagonal().real().cwiseAbs().sum();
  return 0.5 * linalg::hermitian_trace_norm(diff);
}

double pure_trace_distance(const Vector& u, const Vector& v) {
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return 0.5 * (nu * nu + nv * nv);
  const Vector e1 = u / nu;
  const Complex c1 = e1.dot(v);  // <e1|v>
  Vector residual = v - c1 * e1;
  const double c2 = residual.norm();
  Eigen::Matrix2cd m;
  m(0, 0) = nu * nu - std::norm(c1);
  m(0, 1) = -c1 * c2;
  m(1, 0) = -std::conj(c1) * c2;
  m(1, 1) = -c2 * c2;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(m, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

ValidationReport validate_density(const Matrix& rho, double leakage,
                                  const CutoffConfig& cutoff,
                                  const NumericTolerances& tol) {
  ValidationReport r;
  r.hermiticity_defect = linalg::hermiticity_defect(rho);
  r.trace = rho.trace().real();
  r.trace_defect = std::abs(r.trace + leakage - 1.0);
  r.min_eigenvalue = linalg::hermitian_eigenvalues(rho).minCoeff();
  r.leakage = leakage;
  r.hermitian_ok = r.hermiticity_defect <= tol.herm;
  r.trace_ok = std::abs(r.trace + leakage - 1.0) <= tol.eq + kTraceRounding;
  r.psd_ok = r.min_eigenvalue >= -tol.psd;
  r.leakage_ok = leakage <= cutoff.leakage_tol;
  return r;
}

ValidationReport validate_vector(const Vector& v, double leakage,
                                 const CutoffConfig& cutoff, const NumericTolerances& tol) {
  ValidationReport r;
  r.trace = v.squaredNorm();
  r.trace_defect = std::abs(r.trace + leakage - 1.0);
  r.leakage = leakage;
  r.trace_ok = std::abs(r.trace + leakage - 1.0) <= tol.eq + kTraceRounding;
  r.leakage_ok = leakage <= cutoff.leakage_tol;
  return r;
}

double combined_leakage(double la, double lb) { return la + lb - la * lb; }

}  // namespace

CutoffConfig CutoffConfig::make(int n_max, double leakage_tol) {
  if (n_max < 1) throw ConfigurationError("n_max must be >= 1");
  if (!(leakage_tol > 0.0 && leakage_tol < 1.0)) {
    throw ConfigurationError("leakage_tol must lie in (0, 1)");
  }
  return CutoffConfig{n_max, leakage_tol};
}

void NumericTolerances::check() const {
  for (double t : {herm, psd, unitary, eq}) {
    if (!(t > 0.0 && t <= 1e-6)) {
      throw ConfigurationError("numeric tolerances must lie in (0, 1e-6]");
    }
  }
}

// ---------------------------------------------------------------------------
// SingleModeState

SingleModeState SingleModeState::pure(Vector amplitudes, const CutoffConfig& cutoff,
                                      double leakage) {
  if (amplitudes.size() != cutoff.dim()) {
    throw ConfigurationError("pure single-mode state must have n_max+1 amplitudes");
  }
  return SingleModeState(StateKind::pure, std::move(amplitudes), Matrix(), cutoff, leakage);
}

SingleModeState SingleModeState::mixed(Matrix rho, const CutoffConfig& cutoff,
                                       double leakage) {
  if (rho.rows() != cutoff.dim() || rho.cols() != cutoff.dim()) {
    throw ConfigurationError("single-mode density must be (n_max+1) square");
  }
  return SingleModeState(StateKind::mixed, Vector(), std::move(rho), cutoff, leakage);
}

const Vector& SingleModeState::amplitudes() const {
  if (!is_pure()) throw DomainError("amplitudes() requested from a mixed state");
  return amps_;
}

const Matrix& SingleModeState::matrix() const {
  if (is_pure()) throw DomainError("matrix() requested from a pure state");
  return rho_;
}

Matrix SingleModeState::density() const {
  if (is_pure()) return amps_ * amps_.adjoint();
  return rho_;
}

double SingleModeState::trace() const {
  return is_pure() ? amps_.squaredNorm() : rho_.trace().real();
}

// ---------------------------------------------------------------------------
// JointState

JointState JointState::pure(Vector amplitudes, const CutoffConfig& cutoff,
                            double leakage) {
  if (amplitudes.size() != cutoff.joint_dim()) {
    throw ConfigurationError("pure joint state must have (n_max+1)^2 amplitudes");
  }
  return JointState(StateKind::pure, std::move(amplitudes), Matrix(), cutoff, leakage);
}

JointState JointState::mixed(Matrix rho, const CutoffConfig& cutoff, double leakage) {
  if (rho.rows() != cutoff.joint_dim() || rho.cols() != cutoff.joint_dim()) {
    throw ConfigurationError("joint density must be (n_max+1)^2 square");
  }
  return JointState(StateKind::mixed, Vector(), std::move(rho), cutoff, leakage);
}

const Vector& JointState::amplitudes() const {
  if (!is_pure()) throw DomainError("amplitudes() requested from a mixed state");
  return amps_;
}

const Matrix& JointState::matrix() const {
  if (is_pure()) throw DomainError("matrix() requested from a pure state");
  return rho_;
}

Matrix JointState::amplitude_grid() const {
  const int d = cutoff_.dim();
  return Eigen::Map<const RowMajorMatrix>(amplitudes().data(), d, d);
}

Matrix JointState::density() const {
  if (is_pure()) return amps_ * amps_.adjoint();
  return rho_;
}

double JointState::trace() const {
  return is_pure() ? amps_.squaredNorm() : rho_.trace().real();
}

// ---------------------------------------------------------------------------
// Operations

JointState tensor(const SingleModeState& a, const SingleModeState& b) {
  require_same_cutoff(a.cutoff(), b.cutoff(), "tensor");
  const CutoffConfig& cutoff = a.cutoff();
  const int d = cutoff.dim();
  const double leakage = combined_leakage(a.leakage(), b.leakage());
  if (a.is_pure() && b.is_pure()) {
    Vector out(cutoff.joint_dim());
    for (int m = 0; m < d; ++m) {
      out.segment(m * d, d) = a.amplitudes()(m) * b.amplitudes();
    }
    return JointState::pure(std::move(out), cutoff, leakage);
  }
  const Matrix ra = a.density();
  const Matrix rb = b.density();
  Matrix out(cutoff.joint_dim(), cutoff.joint_dim());
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) out.block(i * d, j * d, d, d) = ra(i, j) * rb;
  }
  return JointState::mixed(std::move(out), cutoff, leakage);
}

SingleModeState partial_trace(const JointState& rho, Mode keep) {
  const CutoffConfig& cutoff = rho.cutoff();
  const int d = cutoff.dim();
  Matrix out = Matrix::Zero(d, d);
  if (rho.is_pure()) {
    const Matrix g = rho.amplitude_grid();
    out = keep == Mode::a ? Matrix(g * g.adjoint()) : Matrix(g.transpose() * g.conjugate());
  } else {
    const Matrix& r = rho.matrix();
    if (keep == Mode::a) {
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out(i, j) = r.block(i * d, j * d, d, d).trace();
    } else {
      for (int m = 0; m < d; ++m) out += r.block(m * d, m * d, d, d);
    }
  }
  return SingleModeState::mixed(std::move(out), cutoff, rho.leakage());
}

double purity(const SingleModeState& s) {
  if (s.is_pure()) {
    const double n2 = s.amplitudes().squaredNorm();
    return n2 * n2;
  }
  const Matrix& r = s.matrix();
  return r.cwiseProduct(r.transpose()).sum().real();
}

double purity(const JointState& s) {
  if (s.is_pure()) {
    const double n2 = s.amplitudes().squaredNorm();
    return n2 * n2;
  }
  const Matrix& r = s.matrix();
  return r.cwiseProduct(r.transpose()).sum().real();
}

double trace_distance(const SingleModeState& rho, const SingleModeState& sigma) {
  require_same_cutoff(rho.cutoff(), sigma.cutoff(), "trace_distance");
  if (rho.is_pure() && sigma.is_pure()) {
    return pure_trace_distance(rho.amplitudes(), sigma.amplitudes());
  }
  return difference_trace_norm(rho.density() - sigma.density());
}

double trace_distance(const JointState& rho, const JointState& sigma) {
  require_same_cutoff(rho.cutoff(), sigma.cutoff(), "trace_distance");
  if (rho.is_pure() && sigma.is_pure()) {
    return pure_trace_distance(rho.amplitudes(), sigma.amplitudes());
  }
  return difference_trace_norm(rho.density() - sigma.density());
}

ValidationReport validate(const SingleModeState& s, const NumericTolerances& tol) {
  if (s.is_pure()) return validate_vector(s.amplitudes(), s.leakage(), s.cutoff(), tol);
  return validate_density(s.matrix(), s.leakage(), s.cutoff(), tol);
}

ValidationReport validate(const JointState& s, const NumericTolerances& tol) {
  if (s.is_pure()) return validate_vector(s.amplitudes(), s.leakage(), s.cutoff(), tol);
  return validate_density(s.matrix(), s.leakage(), s.cutoff(), tol);
}

double sector_overflow(const JointState& s) {
  const CutoffConfig& c = s.cutoff();
  const int d = c.dim();
  double weight = 0.0;
  for (int m = 0; m < d; ++m) {
    for (int n = std::max(0, c.n_max + 1 - m); n < d; ++n) {
      const int i = c.index(m, n);
      weight += s.is_pure() ? std::norm(s.amplitudes()(i)) : s.matrix()(i, i).real();
    }
  }
  return weight;
}

}  // namespace bsent
