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

#include "bsent/states.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace bsent {

namespace {

constexpr int kMaxWorkingDim = 8192;
constexpr int kGuardEntries = 8;
constexpr double kGuardWeight = 1e-30;
constexpr double kDropWeight = 1e-14;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

struct PaddedColumn {
  Vector truncated;
  double leakage = 0.0;
  int recommended_n_max = 1;
};

SparseMatrix displacement_generator(Complex alpha, int dim) {
  SparseMatrix a = linalg::sparse_annihilation(dim);
  SparseMatrix ad = a.adjoint();
  return SparseMatrix(alpha * ad - std::conj(alpha) * a);
}

SparseMatrix squeeze_generator(Complex gamma, int dim) {
  SparseMatrix a = linalg::sparse_annihilation(dim);
  SparseMatrix a2 = a * a;
  SparseMatrix ad2 = a2.adjoint();
  return SparseMatrix(0.5 * (gamma * a2 - std::conj(gamma) * ad2));
}

int smallest_cutoff_within(const RealVector& weights, double tol, int floor) {
  // weights[k] = |v_k|^2; find the smallest n with sum_{k>n} weights[k] <= tol
  double tail = 0.0;
  int n = static_cast<int>(weights.size()) - 1;
  while (n > 0 && tail + weights[n] <= tol) {
    tail += weights[n];
    --n;
  }
  return std::max({n, floor, 1});
}

// D(alpha) S(gamma) |m>, evaluated on a working space large enough that the
// boundary holds no weight, then cut to the cutoff.
PaddedColumn gaussian_column(Complex alpha, Complex gamma, int m, const CutoffConfig& cutoff) {
  const int d = cutoff.dim();
  double a = std::abs(alpha);
  int w = std::max(2 * d, d + 40) + m +
          static_cast<int>(std::ceil(a * a + 10.0 * a + 60.0 * std::abs(gamma)));
  for (;;) {
    Vector v = Vector::Zero(w);
    v[m] = 1.0;
    if (gamma != Complex{}) v = linalg::expm_multiply(squeeze_generator(gamma, w), v);
    if (alpha != Complex{}) v = linalg::expm_multiply(displacement_generator(alpha, w), v);
    double guard = v.tail(kGuardEntries).squaredNorm();
    if (guard > kGuardWeight && w < kMaxWorkingDim) {
      w = std::min(2 * w, kMaxWorkingDim);
      continue;
    }
    PaddedColumn out;
    out.truncated = v.head(d);
    out.leakage = v.tail(w - d).squaredNorm();
    out.recommended_n_max =
        smallest_cutoff_within(v.cwiseAbs2(), cutoff.leakage_tol, m);
    return out;
  }
}

[[noreturn]] void throw_leakage(const std::string& what, double leakage,
                                const CutoffConfig& cutoff, int recommended) {
  std::ostringstream os;
  os << what << ": truncation leakage " << leakage << " exceeds tolerance "
     << cutoff.leakage_tol << " at n_max " << cutoff.n_max;
  throw CutoffError(os.str(), std::max(recommended, cutoff.n_max + 1));
}

PaddedColumn checked_column(const std::string& what, Complex alpha, Complex gamma, int m,
                            const CutoffConfig& cutoff) {
  if (m > cutoff.n_max)
    throw CutoffError(what + ": photon number " + std::to_string(m) + " exceeds n_max",
                      m);
  PaddedColumn c = gaussian_column(alpha, gamma, m, cutoff);
  if (c.leakage > cutoff.leakage_tol)
    throw_leakage(what, c.leakage, cutoff, c.recommended_n_max);
  return c;
}

double combined_leakage(double la, double lb) { return la + lb - la * lb; }

// sum_k w_k |x_k><x_k| for joint vectors x_k, via W W^dagger
struct MixtureBuilder {
  explicit MixtureBuilder(const CutoffConfig& c) : cutoff(c) {}

  void add(double weight, const Vector& a, const Vector& b, double leakage) {
    Vector joint(cutoff.joint_dim());
    for (int m = 0; m < cutoff.dim(); ++m)
      joint.segment(m * cutoff.dim(), cutoff.dim()) = a[m] * b;
    columns.push_back(std::sqrt(weight) * joint);
    total_leakage += weight * leakage;
  }

  JointState build() const {
    Matrix w(cutoff.joint_dim(), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t k = 0; k < columns.size(); ++k)
      w.col(static_cast<Eigen::Index>(k)) = columns[k];
    Matrix rho = w * w.adjoint();
    return JointState::mixed(std::move(rho), cutoff, total_leakage);
  }

  CutoffConfig cutoff;
  std::vector<Vector> columns;
  double total_leakage = 0.0;
};

}  // namespace

GaussianOpParams GaussianOpParams::make(Complex alpha, Complex gamma) {
  if (!finite(alpha) || !finite(gamma))
    throw ConfigurationError("displacement and squeeze parameters must be finite");
  if (std::abs(gamma) > kMaxSqueeze)
    throw ConfigurationError("|gamma| must not exceed 2");
  if (std::abs(alpha) > kMaxDisplacement)
    throw ConfigurationError("|alpha| must not exceed 6");
  return GaussianOpParams{alpha, gamma};
}

UnpolarizedSpec UnpolarizedSpec::make(std::vector<double> lambda, double tol) {
  UnpolarizedSpec s{std::move(lambda)};
  s.check(tol);
  return s;
}

UnpolarizedSpec UnpolarizedSpec::single_sector(int total) {
  if (total < 0) throw SpecError("sector index must be non-negative");
  std::vector<double> lambda(static_cast<std::size_t>(total) + 1, 0.0);
  lambda.back() = 1.0 / (total + 1);
  return UnpolarizedSpec{std::move(lambda)};
}

UnpolarizedSpec UnpolarizedSpec::thermal_equivalent(double nbar, const CutoffConfig& cutoff) {
  if (!std::isfinite(nbar) || nbar < 0.0)
    throw ConfigurationError("mean photon number must be finite and non-negative");
  const double x = nbar / (nbar + 1.0);
  const double scale = 1.0 / ((nbar + 1.0) * (nbar + 1.0));
  std::vector<double> lambda;
  double kept = 0.0;
  for (int n = 0; n <= cutoff.n_max; ++n) {
    lambda.push_back(scale * std::pow(x, n));
    kept += lambda.back() * (n + 1);
  }
  double tail = std::max(0.0, 1.0 - kept);
  if (tail > cutoff.leakage_tol) {
    int rec = cutoff.n_max + 1;
    double acc = kept;
    while (rec < 100000 && 1.0 - acc > cutoff.leakage_tol) {
      acc += scale * std::pow(x, rec) * (rec + 1);
      ++rec;
    }
    throw_leakage("thermal-equivalent unpolarized state", tail, cutoff, rec - 1);
  }
  return UnpolarizedSpec{std::move(lambda)};
}

UnpolarizedSpec UnpolarizedSpec::laser_average(double intensity, const CutoffConfig& cutoff) {
  if (!std::isfinite(intensity) || intensity < 0.0)
    throw ConfigurationError("intensity must be finite and non-negative");
  std::vector<double> lambda;
  double kept = 0.0;
  // lambda_N = e^{-I} I^N / (N+1)!, built in log space
  for (int n = 0; n <= cutoff.n_max; ++n) {
    double v = intensity == 0.0
                   ? (n == 0 ? 1.0 : 0.0)
                   : std::exp(-intensity + n * std::log(intensity) - std::lgamma(n + 2.0));
    lambda.push_back(v);
    kept += v * (n + 1);
  }
  double tail = std::max(0.0, 1.0 - kept);
  if (tail > cutoff.leakage_tol) {
    int rec = cutoff.n_max + 1;
    double acc = kept;
    while (rec < 100000 && 1.0 - acc > cutoff.leakage_tol) {
      acc += std::exp(-intensity + rec * std::log(intensity) - std::lgamma(rec + 2.0)) *
             (rec + 1);
      ++rec;
    }
    throw_leakage("laser-average state", tail, cutoff, rec - 1);
  }
  return UnpolarizedSpec{std::move(lambda)};
}

void UnpolarizedSpec::check(double tol) const {
  if (lambda.empty()) throw SpecError("unpolarized weights must not be empty");
  for (double l : lambda)
    if (!std::isfinite(l) || l < 0.0)
      throw SpecError("unpolarized weights must be finite and non-negative");
  double norm = normalization();
  if (std::abs(norm - 1.0) > tol) {
    std::ostringstream os;
    os << "unpolarized weights give trace " << norm << ", expected 1";
    throw SpecError(os.str());
  }
}

int UnpolarizedSpec::max_sector() const {
  for (int n = static_cast<int>(lambda.size()) - 1; n >= 0; --n)
    if (lambda[static_cast<std::size_t>(n)] > 0.0) return n;
  return 0;
}

double UnpolarizedSpec::normalization() const {
  double s = 0.0;
  for (std::size_t n = 0; n < lambda.size(); ++n) s += lambda[n] * static_cast<double>(n + 1);
  return s;
}

JointState SeparableDecomposition::reassemble() const {
  Matrix rho = Matrix::Zero(cutoff.joint_dim(), cutoff.joint_dim());
  double leak = 0.0;
  for (const ProductTerm& t : terms) {
    JointState p = tensor(t.a, t.b);
    rho += t.weight * p.density();
    leak += t.weight * p.leakage();
  }
  return JointState::mixed(std::move(rho), cutoff, leak);
}

void check_mixture_weights(std::span<const double> weights, double tol) {
  if (weights.empty()) throw SpecError("a mixture needs at least one component");
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w <= 0.0) throw SpecError("mixture weights must be positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol) {
    std::ostringstream os;
    os << "mixture weights sum to " << sum << ", expected 1";
    throw SpecError(os.str());
  }
}

SingleModeState fock(int n, const CutoffConfig& cutoff) {
  if (n < 0) throw ConfigurationError("photon number must be non-negative");
  if (n > cutoff.n_max)
    throw CutoffError("Fock state |" + std::to_string(n) + "> lies above n_max", n);
  Vector v = Vector::Zero(cutoff.dim());
  v[n] = 1.0;
  return SingleModeState::pure(std::move(v), cutoff);
}

Matrix displacement_matrix(Complex alpha, const CutoffConfig& cutoff) {
  GaussianOpParams::make(alpha, 0.0);
  checked_column("displacement", alpha, 0.0, 0, cutoff);
  return linalg::expm_anti_hermitian(Matrix(displacement_generator(alpha, cutoff.dim())));
}

Matrix squeeze_matrix(Complex gamma, const CutoffConfig& cutoff) {
  GaussianOpParams::make(0.0, gamma);
  checked_column("squeeze", 0.0, gamma, 0, cutoff);
  return linalg::expm_anti_hermitian(Matrix(squeeze_generator(gamma, cutoff.dim())));
}

SingleModeState coherent(Complex alpha, const CutoffConfig& cutoff) {
  return displaced_squeezed(alpha, 0.0, cutoff);
}

SingleModeState squeezed_vacuum(Complex gamma, const CutoffConfig& cutoff) {
  return displaced_squeezed(0.0, gamma, cutoff);
}

SingleModeState displaced_squeezed(Complex alpha, Complex gamma, const CutoffConfig& cutoff) {
  GaussianOpParams p = GaussianOpParams::make(alpha, gamma);
  const char* what = p.gamma == Complex{} ? "coherent state"
                     : p.alpha == Complex{} ? "squeezed vacuum"
                                            : "displaced squeezed state";
  PaddedColumn c = checked_column(what, p.alpha, p.gamma, 0, cutoff);
  return SingleModeState::pure(std::move(c.truncated), cutoff, c.leakage);
}

SingleModeState displaced_fock(int n, Complex alpha, const CutoffConfig& cutoff) {
  if (n < 0) throw ConfigurationError("photon number must be non-negative");
  GaussianOpParams p = GaussianOpParams::make(alpha, 0.0);
  PaddedColumn c = checked_column("displaced Fock state", p.alpha, 0.0, n, cutoff);
  return SingleModeState::pure(std::move(c.truncated), cutoff, c.leakage);
}

SingleModeState thermal(double nbar, const CutoffConfig& cutoff) {
  if (!std::isfinite(nbar) || nbar < 0.0)
    throw ConfigurationError("mean photon number must be finite and non-negative");
  const double x = nbar / (nbar + 1.0);
  const double tail = std::pow(x, cutoff.n_max + 1);
  if (tail > cutoff.leakage_tol) {
    int rec = static_cast<int>(std::ceil(std::log(cutoff.leakage_tol) / std::log(x))) - 1;
    throw_leakage("thermal state", tail, cutoff, rec);
  }
  Matrix rho = Matrix::Zero(cutoff.dim(), cutoff.dim());
  for (int n = 0; n <= cutoff.n_max; ++n) rho(n, n) = std::pow(x, n) / (nbar + 1.0);
  return SingleModeState::mixed(std::move(rho), cutoff, tail);
}

Matrix sector_projector(int total, const CutoffConfig& cutoff) {
  if (total < 0) throw ConfigurationError("sector index must be non-negative");
  if (total > cutoff.n_max)
    throw CutoffError("sector " + std::to_string(total) + " is not complete below n_max",
                      total);
  Matrix p = Matrix::Zero(cutoff.joint_dim(), cutoff.joint_dim());
  for (int m = 0; m <= total; ++m) {
    int i = cutoff.index(m, total - m);
    p(i, i) = 1.0;
  }
  return p;
}

JointState unpolarized(const UnpolarizedSpec& spec, const CutoffConfig& cutoff) {
  spec.check();
  if (spec.max_sector() > cutoff.n_max)
    throw CutoffError("unpolarized weights reach beyond n_max", spec.max_sector());
  Matrix rho = Matrix::Zero(cutoff.joint_dim(), cutoff.joint_dim());
  for (int total = 0; total <= spec.max_sector(); ++total) {
    double l = spec.lambda[static_cast<std::size_t>(total)];
    for (int m = 0; m <= total; ++m) {
      int i = cutoff.index(m, total - m);
      rho(i, i) = l;
    }
  }
  return JointState::mixed(std::move(rho), cutoff, std::max(0.0, 1.0 - spec.normalization()));
}

SeparableDecomposition unpolarized_separable_decomposition(const UnpolarizedSpec& spec,
                                                           const CutoffConfig& cutoff) {
  spec.check();
  const int top = spec.max_sector();
  if (top > cutoff.n_max)
    throw CutoffError("unpolarized weights reach beyond n_max", top);
  SeparableDecomposition out{cutoff, {}};
  for (int m = 0; m <= top; ++m) {
    double p = 0.0;
    for (int total = m; total <= top; ++total) p += spec.lambda[static_cast<std::size_t>(total)];
    if (p < kDropWeight) continue;
    Matrix a = Matrix::Zero(cutoff.dim(), cutoff.dim());
    a(m, m) = 1.0;
    Matrix b = Matrix::Zero(cutoff.dim(), cutoff.dim());
    for (int total = m; total <= top; ++total)
      b(total - m, total - m) = spec.lambda[static_cast<std::size_t>(total)] / p;
    out.terms.push_back(ProductTerm{p, SingleModeState::mixed(std::move(a), cutoff),
                                    SingleModeState::mixed(std::move(b), cutoff)});
  }
  return out;
}

JointState displaced_number_mixture(int total, Complex alpha, Complex beta,
                                    const CutoffConfig& cutoff) {
  if (total < 0) throw ConfigurationError("sector index must be non-negative");
  GaussianOpParams::make(alpha, 0.0);
  GaussianOpParams::make(beta, 0.0);
  MixtureBuilder mix(cutoff);
  double worst = 0.0;
  int rec = cutoff.n_max;
  for (int m = 0; m <= total; ++m) {
    PaddedColumn x = checked_column("displaced number mixture", alpha, 0.0, m, cutoff);
    PaddedColumn y = checked_column("displaced number mixture", beta, 0.0, total - m, cutoff);
    mix.add(1.0 / (total + 1), x.truncated, y.truncated, combined_leakage(x.leakage, y.leakage));
    worst = std::max(worst, combined_leakage(x.leakage, y.leakage));
    rec = std::max({rec, x.recommended_n_max, y.recommended_n_max});
  }
  if (mix.total_leakage > cutoff.leakage_tol)
    throw_leakage("displaced number mixture", mix.total_leakage, cutoff, rec + 1);
  return mix.build();
}

JointState matched_squeezed_pair(Complex alpha, Complex beta, Complex gamma, double phi,
                                 const CutoffConfig& cutoff) {
  if (!std::isfinite(phi)) throw ConfigurationError("phi must be finite");
  SingleModeState a = displaced_squeezed(alpha, gamma, cutoff);
  SingleModeState b = displaced_squeezed(beta, std::exp(-2.0 * kI * phi) * gamma, cutoff);
  JointState joint = tensor(a, b);
  if (joint.leakage() > cutoff.leakage_tol)
    throw_leakage("matched squeezed pair", joint.leakage(), cutoff, cutoff.n_max + 1);
  return joint;
}

JointState zero_entanglement_family(std::span<const FamilySample> samples, double phi,
                                    const CutoffConfig& cutoff) {
  if (!std::isfinite(phi)) throw ConfigurationError("phi must be finite");
  std::vector<double> weights;
  for (const FamilySample& s : samples) weights.push_back(s.weight);
  check_mixture_weights(weights);
  const Complex rot = std::exp(-2.0 * kI * phi);
  MixtureBuilder mix(cutoff);
  int rec = cutoff.n_max;
  for (const FamilySample& s : samples) {
    s.spec.check();
    GaussianOpParams::make(s.alpha, s.gamma);
    GaussianOpParams::make(s.beta, rot * s.gamma);
    const int top = s.spec.max_sector();
    if (top > cutoff.n_max)
      throw CutoffError("unpolarized weights reach beyond n_max", top);
    std::vector<PaddedColumn> xa, xb;
    for (int m = 0; m <= top; ++m) {
      xa.push_back(gaussian_column(s.alpha, s.gamma, m, cutoff));
      xb.push_back(gaussian_column(s.beta, rot * s.gamma, m, cutoff));
      rec = std::max({rec, xa.back().recommended_n_max, xb.back().recommended_n_max});
    }
    for (int total = 0; total <= top; ++total) {
      double l = s.spec.lambda[static_cast<std::size_t>(total)];
      if (l <= 0.0) continue;
      for (int m = 0; m <= total; ++m) {
        const PaddedColumn& x = xa[static_cast<std::size_t>(m)];
        const PaddedColumn& y = xb[static_cast<std::size_t>(total - m)];
        mix.add(s.weight * l, x.truncated, y.truncated, combined_leakage(x.leakage, y.leakage));
      }
    }
  }
  if (mix.total_leakage > cutoff.leakage_tol)
    throw_leakage("squeezed unpolarized family", mix.total_leakage, cutoff, rec + 1);
  return mix.build();
}

JointState laser_average(double intensity, const CutoffConfig& cutoff) {
  return unpolarized(UnpolarizedSpec::laser_average(intensity, cutoff), cutoff);
}

JointState classical_coherent_mixture(std::span<const CoherentComponent> components,
                                      const CutoffConfig& cutoff) {
  std::vector<double> weights;
  for (const CoherentComponent& c : components) weights.push_back(c.weight);
  check_mixture_weights(weights);
  MixtureBuilder mix(cutoff);
  int rec = cutoff.n_max;
  for (const CoherentComponent& c : components) {
    GaussianOpParams::make(c.alpha, 0.0);
    GaussianOpParams::make(c.beta, 0.0);
    PaddedColumn x = gaussian_column(c.alpha, 0.0, 0, cutoff);
    PaddedColumn y = gaussian_column(c.beta, 0.0, 0, cutoff);
    mix.add(c.weight, x.truncated, y.truncated, combined_leakage(x.leakage, y.leakage));
    rec = std::max({rec, x.recommended_n_max, y.recommended_n_max});
  }
  if (mix.total_leakage > cutoff.leakage_tol)
    throw_leakage("coherent mixture", mix.total_leakage, cutoff, rec + 1);
  return mix.build();
}

MomentSet moments(const SingleModeState& s) {
  const int d = s.dim();
  const double tr = s.trace();
  if (!(tr > 0.0)) throw DomainError("moments need a state with positive trace");
  Matrix a = linalg::annihilation(d);
  Matrix a2 = a * a;
  Matrix n = a.adjoint() * a;
  auto expect = [&](const Matrix& op) -> Complex {
    if (s.is_pure()) return s.amplitudes().dot(op * s.amplitudes()) / tr;
    return (s.matrix() * op).trace() / tr;
  };
  MomentSet out;
  out.a = expect(a);
  out.a2 = expect(a2);
  out.n = expect(n).real();
  out.adag = expect(a.adjoint());
  out.adag2 = expect(a2.adjoint());
  return out;
}

}  // namespace bsent
