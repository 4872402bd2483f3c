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

#include <algorithm>

#include "bsent/entanglement.hpp"
#include "bsent/states.hpp"
#include "bsent/verify.hpp"

using namespace bsent;

namespace {

void check_claim(const ClaimResult& r) {
  INFO(r.claim_id << " metric=" << r.metric << " threshold=" << r.threshold << " note=" << r.note);
  CHECK(r.pass);
  CHECK_FALSE(r.checks.empty());
  CHECK(std::all_of(r.checks.begin(), r.checks.end(), [](const SubCheck& s) { return s.pass; }));
  CHECK_FALSE(r.anchor.empty());
}

}  // namespace

TEST_CASE("claim registry") {
  const auto& ids = claim_ids();
  CHECK(ids.size() == 12);
  CHECK(ids.front() == "schmidt_rank");
  CHECK_THROWS_AS(run_claim("no_such_claim"), ConfigurationError);
}

TEST_CASE("config validation") {
  VerifyConfig c;
  CHECK_NOTHROW(c.check());
  c.fd_step = 0.0;
  CHECK_THROWS_AS(c.check(), ConfigurationError);
  c = VerifyConfig{};
  c.uniqueness_samples = 0;
  CHECK_THROWS_AS(c.check(), ConfigurationError);
  c = VerifyConfig{};
  c.tol.psd = 1.0;
  CHECK_THROWS_AS(c.check(), ConfigurationError);
}

TEST_CASE("finite-difference coefficient") {
  CutoffConfig c = CutoffConfig::make(4);
  JointState in = tensor(fock(1, c), fock(0, c));
  // E_p = sin^2(theta)/2 exactly
  CHECK(fd_theta2_coefficient(in, 0.3, 1e-3) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(e_p_after(in, BeamSplitterParams::make(0.8, 0.3)) ==
        doctest::Approx(0.5 * std::sin(0.8) * std::sin(0.8)).epsilon(1e-12));
  JointState in11 = tensor(fock(1, c), fock(1, c));
  CHECK(fd_theta2_coefficient(in11, 0.0, 1e-3) == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("fast claims") {
  for (const char* id : {"schmidt_rank", "small_theta_law", "coherent_product_separable",
                         "matched_squeeze_separable", "thermal_is_unpolarized",
                         "classical_mixture_separable", "squeeze_conjugation", "sector_oracle",
                         "coherent_uniqueness"}) {
    SUBCASE(id) {
      ClaimResult r = run_claim(id);
      CHECK(r.claim_id == id);
      check_claim(r);
    }
  }
}

TEST_CASE("claims are reproducible from the seed") {
  VerifyConfig c;
  c.seed = 7;
  ClaimResult a = run_claim("coherent_uniqueness", c);
  ClaimResult b = run_claim("coherent_uniqueness", c);
  CHECK(a.metric == b.metric);
  CHECK(a.seed == b.seed);
  CHECK(a.seed == 7 + 11);
}

TEST_CASE("run_all follows registry order") {
  std::vector<ClaimResult> rs = run_all({}, {"sector_oracle", "schmidt_rank"});
  REQUIRE(rs.size() == 2);
  CHECK(rs[0].claim_id == "schmidt_rank");
  CHECK(rs[1].claim_id == "sector_oracle");
  CHECK_THROWS_AS(run_all({}, {"bogus"}), ConfigurationError);
}

TEST_CASE("a cap below the needed cutoff fails the claim") {
  VerifyConfig c;
  c.pure_cap = 3;
  ClaimResult r = run_claim("matched_squeeze_separable", c);
  CHECK_FALSE(r.pass);
  CHECK(std::isnan(r.metric));
}
