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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bsent/entanglement.hpp"
#include "bsent/optics.hpp"
#include "bsent/states.hpp"
#include "oracles.hpp"

using namespace bsent;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Vector bell(const CutoffConfig& c) {
  Vector v = Vector::Zero(c.joint_dim());
  v[c.index(1, 0)] = std::sqrt(0.5);
  v[c.index(0, 1)] = std::sqrt(0.5);
  return v;
}

Vector random_vector(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g;
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = Complex(g(rng), g(rng));
  return v / v.norm();
}

double oracle_e_p(const Vector& psi, int n_max) {
  Matrix rb = oracle::reduced_b(psi * psi.adjoint(), n_max);
  return 1.0 - (rb * rb).trace().real() / std::pow(rb.trace().real(), 2);
}

}  // namespace

TEST_CASE("Bell state") {
  CutoffConfig c = CutoffConfig::make(1);
  JointState pure = JointState::pure(bell(c), c);
  CHECK(e_p(pure) == doctest::Approx(0.5));
  SchmidtResult s = schmidt(pure);
  CHECK(s.rank == 2);
  CHECK(s.values[0] == doctest::Approx(std::sqrt(0.5)));
  CHECK(s.values[1] == doctest::Approx(std::sqrt(0.5)));
  NegativityResult n = negativity(pure);
  CHECK(n.negativity == doctest::Approx(0.5));
  CHECK(n.min_pt_eigenvalue == doctest::Approx(-0.5));
  CHECK_FALSE(n.ppt);
  JointState mixed = JointState::mixed(bell(c) * bell(c).adjoint(), c);
  NegativityResult nm = negativity(mixed);
  CHECK(nm.negativity == doctest::Approx(0.5));
  CHECK(nm.min_pt_eigenvalue == doctest::Approx(-0.5));
  CHECK(e_p(mixed) == doctest::Approx(0.5));
}

TEST_CASE("product states") {
  CutoffConfig c = CutoffConfig::make(20);
  JointState prod = tensor(coherent(Complex(0.6, 0.2), c), squeezed_vacuum(0.3, c));
  CHECK(std::abs(e_p(prod)) < 1e-14);
  CHECK(schmidt(prod).rank == 1);
  NegativityResult n = negativity(prod);
  CHECK(n.negativity < 1e-14);
  CHECK(n.ppt);
}

TEST_CASE("Schmidt values against the reduced-state spectrum") {
  CutoffConfig c = CutoffConfig::make(4);
  std::mt19937_64 rng(21);
  for (int k = 0; k < 10; ++k) {
    Vector psi = random_vector(rng, c.joint_dim());
    SchmidtResult s = schmidt(JointState::pure(psi, c));
    std::vector<double> ref = oracle::schmidt_from_reduced(psi, 4);
    REQUIRE(s.values.size() == static_cast<Eigen::Index>(ref.size()));
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(s.values[i] - ref[i]) < 1e-10);
    CHECK(s.values.squaredNorm() == doctest::Approx(1.0));
    CHECK(s.rank == 5);
    CHECK(e_p(JointState::pure(psi, c)) == doctest::Approx(oracle_e_p(psi, 4)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(schmidt(JointState::mixed(Matrix::Identity(25, 25) / 25.0, c)), DomainError);
}

TEST_CASE("e_p ignores the overall scale") {
  CutoffConfig c = CutoffConfig::make(1);
  Matrix rho = 0.5 * bell(c) * bell(c).adjoint();
  CHECK(e_p(JointState::mixed(rho, c, 0.5)) == doctest::Approx(0.5));
}

TEST_CASE("partial transpose") {
  CutoffConfig c = CutoffConfig::make(3);
  std::mt19937_64 rng(22);
  Vector x = random_vector(rng, c.joint_dim());
  Vector y = random_vector(rng, c.joint_dim());
  Matrix rho = 0.6 * x * x.adjoint() + 0.4 * y * y.adjoint();
  CHECK(max_abs(partial_transpose(partial_transpose(rho, c), c) - rho) == 0.0);
  Matrix pta = partial_transpose(rho, c, Mode::a);
  Matrix ptb = partial_transpose(rho, c, Mode::b);
  CHECK(max_abs(pta - ptb.transpose()) < 1e-15);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      for (int mp = 0; mp < 4; ++mp)
        for (int np = 0; np < 4; ++np)
          CHECK(ptb(c.index(m, n), c.index(mp, np)) == rho(c.index(m, np), c.index(mp, n)));
  CHECK(std::abs(ptb.trace() - rho.trace()) < 1e-15);
}

TEST_CASE("Werner-like mixtures") {
  CutoffConfig c = CutoffConfig::make(1);
  for (double p : {0.0, 0.2, 1.0 / 3.0, 0.6, 1.0}) {
    Matrix rho = p * bell(c) * bell(c).adjoint() + (1.0 - p) * Matrix::Identity(4, 4) / 4.0;
    NegativityResult n = negativity(JointState::mixed(rho, c));
    CHECK(n.min_pt_eigenvalue == doctest::Approx((1.0 - 3.0 * p) / 4.0));
    CHECK(n.negativity == doctest::Approx(std::max(0.0, (3.0 * p - 1.0) / 4.0)));
  }
}

TEST_CASE("pure and mixed negativity agree") {
  CutoffConfig c = CutoffConfig::make(3);
  std::mt19937_64 rng(23);
  for (int k = 0; k < 5; ++k) {
    Vector psi = random_vector(rng, c.joint_dim());
    NegativityResult a = negativity(JointState::pure(psi, c));
    NegativityResult b = negativity(JointState::mixed(psi * psi.adjoint(), c));
    CHECK(std::abs(a.negativity - b.negativity) < 1e-12);
    CHECK(std::abs(a.min_pt_eigenvalue - b.min_pt_eigenvalue) < 1e-12);
  }
}

TEST_CASE("small-angle law on exact examples") {
  CutoffConfig c = CutoffConfig::make(30);
  SmallThetaPrediction p10 = small_theta_predict(fock(1, c), fock(0, c), 0.4);
  CHECK(p10.coefficient == doctest::Approx(0.5));
  CHECK(p10.a_var == doctest::Approx(1.0));
  CHECK(p10.b_var == doctest::Approx(0.0));
  SmallThetaPrediction p11 = small_theta_predict(fock(1, c), fock(1, c), 0.0);
  CHECK(p11.coefficient == doctest::Approx(2.0));
  CHECK(std::abs(small_theta_predict(coherent(0.7, c), coherent(Complex(0, 1), c), 1.0).coefficient) <
        1e-12);

  // |1,1> through a dense beam splitter on the complete sector
  const double theta = 1e-4;
  Matrix r = oracle::dense_beam_splitter(theta, 0.0, 2);
  CutoffConfig c2 = CutoffConfig::make(2);
  Vector in = Vector::Zero(9);
  in[c2.index(1, 1)] = 1.0;
  CHECK(oracle_e_p(r * in, 2) / (theta * theta) == doctest::Approx(2.0).epsilon(1e-5));

  // matched squeezing cancels the leading term
  const double phi = 0.6;
  const Complex gb = std::polar(0.4, 0.3);
  SmallThetaPrediction sq =
      small_theta_predict(squeezed_vacuum(std::exp(Complex(0, 2 * phi)) * gb, c), squeezed_vacuum(gb, c), phi);
  CHECK(std::abs(sq.coefficient) < 1e-10);
  CHECK_THROWS_AS(small_theta_predict(thermal(0.2, c), fock(0, c), 0.0), DomainError);
}

TEST_CASE("small-angle law against the dense beam splitter") {
  const int n_max = 8;
  CutoffConfig c = CutoffConfig::make(n_max);
  std::mt19937_64 rng(24);
  for (int k = 0; k < 3; ++k) {
    // inputs confined to |n| <= 3 per mode keep the rotated state on the grid
    Vector a = Vector::Zero(n_max + 1), b = Vector::Zero(n_max + 1);
    a.head(4) = random_vector(rng, 4);
    b.head(4) = random_vector(rng, 4);
    const double phi = 0.9 * k;
    SmallThetaPrediction pred =
        small_theta_predict(SingleModeState::pure(a, c), SingleModeState::pure(b, c), phi);
    Vector in = Vector::Zero(c.joint_dim());
    for (int m = 0; m <= n_max; ++m)
      for (int n = 0; n <= n_max; ++n) in[c.index(m, n)] = a[m] * b[n];
    const double theta = 1e-4;
    double ratio = oracle_e_p(oracle::dense_beam_splitter(theta, phi, n_max) * in, n_max) / (theta * theta);
    CHECK(std::abs(ratio - pred.coefficient) < 1e-5 * std::max(1.0, pred.coefficient));
  }
}

TEST_CASE("report") {
  CutoffConfig c = CutoffConfig::make(1);
  EntanglementReport pure = report(JointState::pure(bell(c), c));
  CHECK(pure.schmidt_rank.value() == 2);
  CHECK(pure.schmidt_values.has_value());
  CHECK(pure.e_p == doctest::Approx(0.5));
  EntanglementReport mixed = report(JointState::mixed(Matrix::Identity(4, 4) / 4.0, c));
  CHECK_FALSE(mixed.schmidt_rank.has_value());
  CHECK(mixed.ppt);
  CHECK(mixed.negativity == 0.0);
}
