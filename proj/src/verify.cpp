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

#include "bsent/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "bsent/entanglement.hpp"
#include "bsent/states.hpp"

namespace bsent {

namespace {

using Rng = std::mt19937_64;
using Clock = std::chrono::steady_clock;

class Checks {
 public:
  void at_most(std::string name, double metric, double threshold) {
    add(std::move(name), metric, threshold, Bound::at_most, metric <= threshold);
  }
  void at_least(std::string name, double metric, double threshold) {
    add(std::move(name), metric, threshold, Bound::at_least, metric >= threshold);
  }
  void note(const std::string& text) {
    if (!note_.empty()) note_ += "; ";
    note_ += text;
  }

  ClaimResult finish(std::string id, std::string anchor) && {
    ClaimResult r;
    r.claim_id = std::move(id);
    r.anchor = std::move(anchor);
    r.pass = !checks_.empty();
    for (const SubCheck& c : checks_) r.pass = r.pass && c.pass;
    if (!checks_.empty()) {
      r.metric = checks_.front().metric;
      r.threshold = checks_.front().threshold;
    }
    r.checks = std::move(checks_);
    r.note = std::move(note_);
    return r;
  }

 private:
  void add(std::string name, double metric, double threshold, Bound bound, bool pass) {
    // NaN compares false and therefore fails
    checks_.push_back(SubCheck{std::move(name), metric, threshold, bound, pass});
  }

  std::vector<SubCheck> checks_;
  std::string note_;
};

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Complex random_complex(Rng& rng, double max_radius) {
  // uniform over the disk
  double r = max_radius * std::sqrt(uniform(rng, 0.0, 1.0));
  return std::polar(r, uniform(rng, 0.0, 2.0 * kPi));
}

BeamSplitterParams random_params(Rng& rng) {
  return BeamSplitterParams::make(uniform(rng, 0.05, kPi - 0.05), uniform(rng, 0.0, 2.0 * kPi));
}

struct ProductInput {
  SingleModeState a;
  SingleModeState b;
  JointState joint;
};

using ModeBuilder = std::function<SingleModeState(const CutoffConfig&)>;

ProductInput product_input(const ModeBuilder& a, const ModeBuilder& b, double tol, int cap) {
  return select_cutoff(
      [&](const CutoffConfig& c) {
        SingleModeState sa = a(c);
        SingleModeState sb = b(c);
        JointState j = tensor(sa, sb);
        return ProductInput{sa, sb, j};
      },
      tol, cap);
}

// Beam-splitter blocks of clipped sectors are not exact, so states fed to the
// partial-transpose checks must keep (almost) no weight there.
JointState overflow_guard(JointState s, double tol) {
  double over = sector_overflow(s);
  if (over > tol)
    throw CutoffError("weight " + std::to_string(over) + " in clipped sectors",
                      s.cutoff().n_max + 2);
  return s;
}

double infidelity(const Vector& u, const Vector& v) {
  return 1.0 - std::norm(u.dot(v)) / (u.squaredNorm() * v.squaredNorm());
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// ---------------------------------------------------------------------------

ClaimResult claim_schmidt_rank(const VerifyConfig&, Rng&) {
  Checks ch;
  const CutoffConfig c = CutoffConfig::make(5);
  const BeamSplitterParams p = BeamSplitterParams::make(kPi / 3.0, 0.7);
  BeamSplitter bs(p, c);
  double rank_dev = 0.0, value_err = 0.0;
  for (int n = 0; n <= 5; ++n) {
    SchmidtResult s = schmidt(bs.apply(tensor(fock(n, c), fock(0, c))));
    rank_dev = std::max(rank_dev, std::abs(static_cast<double>(s.rank - (n + 1))));
    RealVector expect = rotated_fock_coefficients(n, p).cwiseAbs();
    std::sort(expect.begin(), expect.end(), std::greater<>());
    for (int k = 0; k < s.values.size(); ++k) {
      double e = k <= n ? expect[k] : 0.0;
      value_err = std::max(value_err, std::abs(s.values[k] - e));
    }
  }
  ch.at_most("max |rank - (N+1)|, N = 0..5", rank_dev, 0.0);
  ch.at_most("max |Schmidt value - |c_m||", value_err, 1e-10);
  double min_neg = 1.0;
  BeamSplitter quarter(BeamSplitterParams::make(kPi / 4.0, 0.0), c);
  for (int n = 1; n <= 4; ++n)
    min_neg = std::min(min_neg, negativity(quarter.apply(tensor(fock(n, c), fock(0, c)))).negativity);
  ch.at_least("min negativity at theta = pi/4, N = 1..4", min_neg, 1e-6);
  return std::move(ch).finish("schmidt_rank",
                              "a Fock state |N,0> leaves a beam splitter with Schmidt number N+1");
}

ClaimResult claim_small_theta_law(const VerifyConfig& cfg, Rng&) {
  Checks ch;
  const double tol = cfg.pure_leakage_tol;
  const int cap = cfg.pure_cap;
  struct Case {
    std::string name;
    ModeBuilder a, b;
  };
  std::vector<Case> cases = {
      {"fock(2) x vacuum", [](const CutoffConfig& c) { return fock(2, c); },
       [](const CutoffConfig& c) { return fock(0, c); }},
      {"coherent(1) x fock(1)", [](const CutoffConfig& c) { return coherent(1.0, c); },
       [](const CutoffConfig& c) { return fock(1, c); }},
      {"squeezed(0.4) x squeezed(0.2 e^{0.3i})",
       [](const CutoffConfig& c) { return squeezed_vacuum(0.4, c); },
       [](const CutoffConfig& c) { return squeezed_vacuum(std::polar(0.2, 0.3), c); }},
      {"displaced_squeezed(1, 0.3) x coherent(0.5i)",
       [](const CutoffConfig& c) { return displaced_squeezed(1.0, 0.3, c); },
       [](const CutoffConfig& c) { return coherent(Complex(0.0, 0.5), c); }},
  };
  double worst_rel = 0.0;
  double worst_abs_small = 0.0;
  for (const Case& k : cases) {
    ProductInput in = product_input(k.a, k.b, tol, cap);
    for (double phi : {0.0, 0.9}) {
      double pred = small_theta_predict(in.a, in.b, phi).coefficient;
      double h = cfg.fd_step;
      double fd = fd_theta2_coefficient(in.joint, phi, h);
      auto err = [&](double est) {
        return std::abs(pred) > 1e-6 ? std::abs(est - pred) / std::abs(pred) : std::abs(est - pred);
      };
      if (std::abs(pred) > 1e-6 && err(fd) > 1e-3) {
        h *= 0.5;
        fd = fd_theta2_coefficient(in.joint, phi, h);
        ch.note("step halved to " + fmt(h) + " for " + k.name);
      }
      if (std::abs(pred) > 1e-6)
        worst_rel = std::max(worst_rel, err(fd));
      else
        worst_abs_small = std::max(worst_abs_small, err(fd));
    }
  }
  ch.at_most("worst relative error, finite difference vs closed form", worst_rel, 1e-3);
  ch.at_most("worst absolute error where the coefficient is <= 1e-6", worst_abs_small, 1e-8);

  // vacuum in the second port reduces the law to (<a^dag a> - |<a>|^2) / 2
  ProductInput f1 = product_input([](const CutoffConfig& c) { return fock(1, c); },
                                  [](const CutoffConfig& c) { return fock(0, c); }, tol, cap);
  double pred_f1 = small_theta_predict(f1.a, f1.b, 0.0).coefficient;
  ch.at_most("|coefficient - 1/2| for fock(1) x vacuum", std::abs(pred_f1 - 0.5), 1e-12);
  ch.at_most("fock(1) x vacuum finite-difference relative error",
             std::abs(fd_theta2_coefficient(f1.joint, 0.0, cfg.fd_step) - 0.5) / 0.5, 1e-3);
  ProductInput ds =
      product_input([](const CutoffConfig& c) { return displaced_squeezed(1.0, 0.3, c); },
                    [](const CutoffConfig& c) { return fock(0, c); }, tol, cap);
  MomentSet m = moments(ds.a);
  ch.at_most("vacuum-port coefficient vs (<a^dag a> - |<a>|^2)/2",
             std::abs(small_theta_predict(ds.a, ds.b, 0.4).coefficient - 0.5 * m.excess_number()),
             1e-12);

  ProductInput cc =
      product_input([](const CutoffConfig& c) { return coherent(1.0, c); },
                    [](const CutoffConfig& c) { return coherent(Complex(0.0, 0.5), c); }, tol, cap);
  double coh = std::max(std::abs(small_theta_predict(cc.a, cc.b, 0.9).coefficient),
                        std::abs(fd_theta2_coefficient(cc.joint, 0.9, cfg.fd_step)));
  ch.at_most("coherent pair, |coefficient| (closed form and finite difference)", coh, 1e-8);
  return std::move(ch).finish(
      "small_theta_law",
      "for pure product inputs E_p grows as theta^2 (AB + (A+B)/2 - Re[e^{2i phi} D2b^dag D2a])");
}

ClaimResult claim_coherent_product_separable(const VerifyConfig& cfg, Rng& rng) {
  Checks ch;
  struct Draw {
    Complex alpha, beta;
    BeamSplitterParams p;
  };
  std::vector<Draw> draws = {{Complex(1.0, 0.5), -0.3, BeamSplitterParams::make(kPi / 3.0, 0.7)},
                             {Complex(0.7, 0.0), 0.0, BeamSplitterParams::make(kPi, 1.3)}};
  for (int k = 0; k < 6; ++k)
    draws.push_back({random_complex(rng, 1.5), random_complex(rng, 1.5), random_params(rng)});
  double worst_ep = 0.0, worst_neg = 0.0, worst_inf = 0.0;
  for (const Draw& d : draws) {
    DisplacementPair out = transform_displacement(d.alpha, d.beta, d.p);
    struct Pair {
      JointState in, pred;
    };
    Pair pr = select_cutoff(
        [&](const CutoffConfig& c) {
          return Pair{tensor(coherent(d.alpha, c), coherent(d.beta, c)),
                      tensor(coherent(out.alpha, c), coherent(out.beta, c))};
        },
        cfg.pure_leakage_tol, cfg.pure_cap);
    JointState res = apply_bs(pr.in, d.p);
    worst_ep = std::max(worst_ep, e_p(res));
    worst_neg = std::max(worst_neg, negativity(res, cfg.tol).negativity);
    worst_inf = std::max(worst_inf, infidelity(res.amplitudes(), pr.pred.amplitudes()));
  }
  ch.at_most("worst E_p", worst_ep, 1e-10);
  ch.at_most("worst negativity", worst_neg, 1e-10);
  ch.at_most("worst infidelity with the transformed coherent product", worst_inf, 1e-10);
  return std::move(ch).finish("coherent_product_separable",
                              "coherent products leave a beam splitter as coherent products");
}

ClaimResult claim_matched_squeeze_separable(const VerifyConfig& cfg, Rng&) {
  Checks ch;
  const Complex alpha(1.0, 0.5), beta(-0.3, 0.0);
  const std::vector<double> thetas = {kPi / 7.0, kPi / 3.0, kPi / 2.0, 2.0};
  double worst_ep = 0.0, worst_neg = 0.0, coherent_ep = 0.0;
  int largest_cutoff = 0;
  for (double r : {0.0, 0.2, 0.5, 0.8}) {
    for (double phi : {0.0, kPi / 5.0}) {
      JointState in = select_cutoff(
          [&](const CutoffConfig& c) { return matched_squeezed_pair(alpha, beta, r, phi, c); },
          cfg.pure_leakage_tol, cfg.pure_cap);
      largest_cutoff = std::max(largest_cutoff, in.cutoff().n_max);
      auto basis = std::make_shared<const SectorBasis>(in.cutoff());
      for (double theta : thetas) {
        JointState out = BeamSplitter(BeamSplitterParams::make(theta, phi), basis).apply(in);
        double ep = e_p(out);
        if (r == 0.0) coherent_ep = std::max(coherent_ep, ep);
        worst_ep = std::max(worst_ep, ep);
        worst_neg = std::max(worst_neg, negativity(out, cfg.tol).negativity);
      }
    }
  }
  ch.at_most("worst E_p over r, phi, theta", worst_ep, 1e-9);
  ch.at_most("worst negativity over r, phi, theta", worst_neg, 1e-9);
  ch.at_most("worst E_p at r = 0", coherent_ep, 1e-10);
  const double phi = kPi / 5.0;
  JointState mis = select_cutoff(
      [&](const CutoffConfig& c) {
        return tensor(displaced_squeezed(alpha, 0.5, c), displaced_squeezed(beta, 0.5, c));
      },
      cfg.pure_leakage_tol, cfg.pure_cap);
  ch.at_least("mismatched squeeze control, E_p at theta = pi/3",
              e_p(apply_bs(mis, BeamSplitterParams::make(kPi / 3.0, phi))), 1e-4);
  ch.note("largest n_max " + std::to_string(largest_cutoff));
  return std::move(ch).finish(
      "matched_squeeze_separable",
      "displaced squeezed pairs with gamma_b = e^{-2i phi} gamma_a stay unentangled");
}

struct NamedSpec {
  std::string name;
  std::function<UnpolarizedSpec(const CutoffConfig&)> make;
  int start;
};

std::vector<NamedSpec> unpolarized_specs() {
  return {{"single sector N=2", [](const CutoffConfig&) { return UnpolarizedSpec::single_sector(2); }, 2},
          {"laser average I=1",
           [](const CutoffConfig& c) { return UnpolarizedSpec::laser_average(1.0, c); }, 1},
          {"thermal equivalent nbar=0.7",
           [](const CutoffConfig& c) { return UnpolarizedSpec::thermal_equivalent(0.7, c); }, 1}};
}

ClaimResult claim_unpolarized_invariance(const VerifyConfig& cfg, Rng& rng) {
  Checks ch;
  double worst = 0.0;
  for (const NamedSpec& s : unpolarized_specs()) {
    JointState rho = select_cutoff([&](const CutoffConfig& c) { return unpolarized(s.make(c), c); },
                                   cfg.thermal_leakage_tol, cfg.mixed_cap, s.start);
    auto basis = std::make_shared<const SectorBasis>(rho.cutoff());
    for (int k = 0; k < cfg.random_angles; ++k) {
      JointState out = BeamSplitter(random_params(rng), basis).apply(rho);
      worst = std::max(worst, trace_distance(out, rho));
    }
  }
  ch.at_most("worst trace distance, rotated vs unrotated", worst, 1e-10);
  const CutoffConfig c1 = CutoffConfig::make(1);
  JointState vac = unpolarized(UnpolarizedSpec::single_sector(0), c1);
  ch.at_most("vacuum, trace distance", trace_distance(apply_bs(vac, random_params(rng)), vac), 0.0);
  Matrix skew = Matrix::Zero(c1.joint_dim(), c1.joint_dim());
  skew(c1.index(1, 0), c1.index(1, 0)) = 0.8;
  skew(c1.index(0, 1), c1.index(0, 1)) = 0.2;
  JointState ctrl = JointState::mixed(skew, c1);
  ch.at_least("unequal in-sector weights control, trace distance at theta = pi/2",
              trace_distance(apply_bs(ctrl, BeamSplitterParams::make(kPi / 2.0, 0.0)), ctrl), 1e-3);
  return std::move(ch).finish("unpolarized_invariance",
                              "SU(2)-unpolarized states are unchanged by every beam splitter");
}

ClaimResult claim_unpolarized_separable(const VerifyConfig& cfg, Rng&) {
  Checks ch;
  std::vector<NamedSpec> specs = unpolarized_specs();
  specs.push_back({"vacuum", [](const CutoffConfig&) { return UnpolarizedSpec::single_sector(0); }, 1});
  double range_violation = 0.0, worst = 0.0, weight_sum_err = 0.0;
  for (const NamedSpec& s : specs) {
    struct Built {
      UnpolarizedSpec spec;
      JointState rho;
    };
    Built b = select_cutoff(
        [&](const CutoffConfig& c) {
          UnpolarizedSpec u = s.make(c);
          return Built{u, unpolarized(u, c)};
        },
        cfg.thermal_leakage_tol, cfg.mixed_cap, s.start);
    SeparableDecomposition dec = unpolarized_separable_decomposition(b.spec, b.rho.cutoff());
    double total = 0.0;
    for (const ProductTerm& t : dec.terms) {
      range_violation = std::max({range_violation, -t.weight, t.weight - 1.0});
      total += t.weight;
    }
    weight_sum_err = std::max(weight_sum_err, std::abs(total - b.rho.trace()));
    worst = std::max(worst, trace_distance(dec.reassemble(), b.rho));
  }
  ch.at_most("worst reassembly trace distance", worst, 1e-12);
  ch.at_most("weights outside [0, 1]", range_violation, 0.0);
  ch.at_most("|sum of weights - trace|", weight_sum_err, 1e-12);
  return std::move(ch).finish(
      "unpolarized_separable",
      "unpolarized states are mixtures of products with weights p_m = sum_{N>=m} lambda_N");
}

ClaimResult claim_thermal_is_unpolarized(const VerifyConfig& cfg, Rng&) {
  Checks ch;
  double worst = 0.0;
  for (double nbar : {0.3, 1.0}) {
    struct Pair {
      JointState product, un;
    };
    Pair p = select_cutoff(
        [&](const CutoffConfig& c) {
          return Pair{tensor(thermal(nbar, c), thermal(nbar, c)),
                      unpolarized(UnpolarizedSpec::thermal_equivalent(nbar, c), c)};
        },
        cfg.thermal_leakage_tol, cfg.mixed_cap);
    worst = std::max(worst, trace_distance(p.product, p.un));
  }
  ch.at_most("worst trace distance, thermal product vs unpolarized form", worst, 1e-10);
  // the control only has to clear 1e-3, so a coarse cutoff suffices
  JointState uneq = select_cutoff(
      [](const CutoffConfig& c) { return tensor(thermal(0.3, c), thermal(1.0, c)); }, 1e-6,
      cfg.mixed_cap);
  ch.at_least("unequal temperatures control, trace distance at theta = pi/2",
              trace_distance(apply_bs(uneq, BeamSplitterParams::make(kPi / 2.0, 0.0)), uneq), 1e-3);
  return std::move(ch).finish("thermal_is_unpolarized",
                              "a product of equal-temperature thermal states is unpolarized");
}

std::vector<FamilySample> family_sample(Rng& rng) {
  const std::vector<UnpolarizedSpec> specs = {UnpolarizedSpec::single_sector(1),
                                              UnpolarizedSpec::make({0.5, 0.25}),
                                              UnpolarizedSpec::single_sector(2)};
  const std::vector<double> weights = {0.5, 0.3, 0.2};
  std::vector<FamilySample> out;
  for (std::size_t k = 0; k < specs.size(); ++k)
    out.push_back(FamilySample{weights[k], random_complex(rng, 0.5), random_complex(rng, 0.5),
                               std::polar(0.2, uniform(rng, 0.0, 2.0 * kPi)), specs[k]});
  return out;
}

ClaimResult claim_zero_entanglement_family(const VerifyConfig& cfg, Rng& rng) {
  Checks ch;
  std::vector<double> thetas, phis;
  for (int i = 0; i < cfg.grid_theta; ++i) thetas.push_back(kPi * (i + 1) / (cfg.grid_theta + 1));
  for (int j = 0; j < cfg.grid_phi; ++j) phis.push_back(2.0 * kPi * j / cfg.grid_phi);
  const Complex alpha(0.8, 0.0), beta(0.0, -0.4);
  double worst_dnm = 1.0, worst_family = 1.0;
  int largest_cutoff = 0;
  for (int n = 0; n <= 3; ++n) {
    JointState rho = select_cutoff(
        [&](const CutoffConfig& c) {
          return overflow_guard(displaced_number_mixture(n, alpha, beta, c), cfg.mixed_overflow_tol);
        },
        cfg.mixed_leakage_tol, cfg.mixed_cap);
    largest_cutoff = std::max(largest_cutoff, rho.cutoff().n_max);
    auto basis = std::make_shared<const SectorBasis>(rho.cutoff());
    for (double theta : thetas)
      for (double phi : phis)
        worst_dnm = std::min(worst_dnm, negativity(BeamSplitter(BeamSplitterParams::make(theta, phi), basis)
                                                       .apply(rho), cfg.tol)
                                            .min_pt_eigenvalue);
  }
  const std::vector<FamilySample> samples = family_sample(rng);
  for (double phi : phis) {
    JointState rho = select_cutoff(
        [&](const CutoffConfig& c) {
          return overflow_guard(zero_entanglement_family(samples, phi, c), cfg.mixed_overflow_tol);
        },
        cfg.mixed_leakage_tol, cfg.mixed_cap);
    largest_cutoff = std::max(largest_cutoff, rho.cutoff().n_max);
    auto basis = std::make_shared<const SectorBasis>(rho.cutoff());
    for (double theta : thetas)
      worst_family = std::min(
          worst_family,
          negativity(BeamSplitter(BeamSplitterParams::make(theta, phi), basis).apply(rho), cfg.tol)
              .min_pt_eigenvalue);
  }
  ch.at_least("min PT eigenvalue, displaced number mixtures N = 0..3", worst_dnm, -1e-10);
  ch.at_least("min PT eigenvalue, squeezed unpolarized family", worst_family, -1e-10);
  const CutoffConfig c1 = CutoffConfig::make(1);
  JointState bell = apply_bs(tensor(fock(1, c1), fock(0, c1)), BeamSplitterParams::make(kPi / 2.0, 0.0));
  JointState bell_mixed = JointState::mixed(bell.density(), c1);
  ch.at_most("entangled control, |min PT eigenvalue + 1/2|",
             std::abs(negativity(bell_mixed, cfg.tol).min_pt_eigenvalue + 0.5), 1e-9);
  ch.note(std::to_string(thetas.size() * phis.size()) + " grid points, largest n_max " +
          std::to_string(largest_cutoff));
  return std::move(ch).finish(
      "zero_entanglement_family",
      "squeezed/displaced unpolarized mixtures stay PPT after any beam splitter");
}

ClaimResult claim_classical_mixture_separable(const VerifyConfig& cfg, Rng& rng) {
  Checks ch;
  std::vector<CoherentComponent> comps;
  double total = 0.0;
  for (int k = 0; k < 4; ++k) {
    comps.push_back({uniform(rng, 0.2, 1.0), random_complex(rng, 0.8), random_complex(rng, 0.8)});
    total += comps.back().weight;
  }
  for (CoherentComponent& c : comps) c.weight /= total;
  double worst_pt = 1.0, worst_dist = 0.0;
  for (int k = 0; k < cfg.random_angles; ++k) {
    BeamSplitterParams p = random_params(rng);
    std::vector<CoherentComponent> pred = comps;
    for (CoherentComponent& c : pred) {
      DisplacementPair d = transform_displacement(c.alpha, c.beta, p);
      c.alpha = d.alpha;
      c.beta = d.beta;
    }
    struct Pair {
      JointState in, pred;
    };
    Pair pr = select_cutoff(
        [&](const CutoffConfig& c) {
          return Pair{overflow_guard(classical_coherent_mixture(comps, c), cfg.mixed_overflow_tol),
                      classical_coherent_mixture(pred, c)};
        },
        cfg.mixed_leakage_tol, cfg.mixed_cap);
    JointState out = apply_bs(pr.in, p);
    worst_pt = std::min(worst_pt, negativity(out, cfg.tol).min_pt_eigenvalue);
    worst_dist = std::max(worst_dist, trace_distance(out, pr.pred));
  }
  ch.at_least("min PT eigenvalue", worst_pt, -cfg.tol.psd);
  ch.at_most("trace distance to the transformed mixture", worst_dist, 1e-9);
  return std::move(ch).finish("classical_mixture_separable",
                              "mixtures of coherent products stay separable after rotation");
}

ClaimResult claim_squeeze_conjugation(const VerifyConfig&, Rng& rng) {
  Checks ch;
  const CutoffConfig c = CutoffConfig::make(40);
  const int region = c.n_max / 2;
  auto basis = std::make_shared<const SectorBasis>(c);
  double worst = 0.0;
  for (int k = 0; k < 6; ++k) {
    Complex ga = random_complex(rng, 0.5), gb = random_complex(rng, 0.5);
    BeamSplitterParams p = random_params(rng);
    BeamSplitter fwd(p, basis);
    BeamSplitter back(BeamSplitterParams{-p.theta, p.phi}, basis);
    SparseMatrix local = squeeze_generator(SqueezeTransformResult{ga, gb, 0.0}, c);
    SparseMatrix conj = squeeze_generator(transform_squeeze(ga, gb, p), c);
    for (auto [m, n] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}}) {
      Vector v = Vector::Zero(c.joint_dim());
      v[c.index(m, n)] = 1.0;
      JointState e = JointState::pure(v, c);
      Vector lhs = linalg::expm_multiply(local, back.apply(e).amplitudes());
      lhs = fwd.apply(JointState::pure(lhs, c)).amplitudes();
      Vector rhs = linalg::expm_multiply(conj, v);
      for (int i = 0; i <= region; ++i)
        for (int j = 0; i + j <= region; ++j)
          worst = std::max(worst, std::abs(lhs[c.index(i, j)] - rhs[c.index(i, j)]));
    }
  }
  ch.at_most("max |R(S_a x S_b)R^dag v - exp(G') v| on m+n <= n_max/2", worst, 1e-12);
  double kappa = 0.0, drift = 0.0;
  for (int k = 0; k < 20; ++k) {
    BeamSplitterParams p = random_params(rng);
    Complex gb = random_complex(rng, 1.0);
    Complex ga = std::exp(Complex(0.0, 2.0 * p.phi)) * gb;
    SqueezeTransformResult t = transform_squeeze(ga, gb, p);
    kappa = std::max(kappa, std::abs(t.two_mode_coeff));
    drift = std::max({drift, std::abs(t.gamma_a - ga), std::abs(t.gamma_b - gb)});
  }
  ch.at_most("matched case, max |two-mode coefficient|", kappa, 1e-15);
  ch.at_most("matched case, max |gamma' - gamma|", drift, 1e-15);
  return std::move(ch).finish(
      "squeeze_conjugation",
      "a beam splitter turns local squeezers into a two-mode squeezer unless gamma_a = e^{2i phi} gamma_b");
}

ClaimResult claim_sector_oracle(const VerifyConfig&, Rng& rng) {
  Checks ch;
  const CutoffConfig c = CutoffConfig::make(10);
  auto basis = std::make_shared<const SectorBasis>(c);
  double worst = 0.0, unit = 0.0;
  for (int k = 0; k < 8; ++k) {
    BeamSplitterParams p =
        BeamSplitterParams::make(uniform(rng, 0.0, 2.0 * kPi), uniform(rng, 0.0, 2.0 * kPi));
    BeamSplitter bs(p, basis);
    for (int total = 0; total < basis->sector_count(); ++total) {
      SectorBlock b = bs.block(total);
      worst = std::max(worst,
                       (b.unitary - sector_block_exponential(total, p, c)).cwiseAbs().maxCoeff());
      unit = std::max(unit, linalg::unitarity_defect(b.unitary));
    }
  }
  ch.at_most("max |fast block - dense exponential|", worst, 1e-11);
  ch.at_most("max unitarity defect", unit, 1e-11);
  return std::move(ch).finish("sector_oracle",
                              "spectral sector blocks equal dense sector exponentials");
}

SingleModeState random_non_coherent(int k, Rng& rng, const CutoffConfig& c) {
  switch (k % 4) {
    case 0: {
      int top = std::uniform_int_distribution<int>(1, 5)(rng);
      if (top > c.n_max) throw CutoffError("superposition above n_max", top);
      std::normal_distribution<double> g;
      Vector v = Vector::Zero(c.dim());
      for (int n = 0; n <= top; ++n) v[n] = Complex(g(rng), g(rng));
      return SingleModeState::pure(v / v.norm(), c);
    }
    case 1: {
      Complex gamma = std::polar(uniform(rng, 0.05, 0.8), uniform(rng, 0.0, 2.0 * kPi));
      return displaced_squeezed(random_complex(rng, 1.5), gamma, c);
    }
    case 2:
      return displaced_fock(std::uniform_int_distribution<int>(1, 3)(rng), random_complex(rng, 1.0), c);
    default: {
      Complex alpha = std::polar(uniform(rng, 0.3, 1.5), uniform(rng, 0.0, 2.0 * kPi));
      Complex rel = std::polar(1.0, uniform(rng, 0.0, 2.0 * kPi));
      SingleModeState p = coherent(alpha, c), m = coherent(-alpha, c);
      Vector v = p.amplitudes() + rel * m.amplitudes();
      double norm2 = 2.0 + 2.0 * (rel * std::exp(-2.0 * std::norm(alpha))).real();
      return SingleModeState::pure(v / std::sqrt(norm2), c,
                                   std::max(0.0, 1.0 - v.squaredNorm() / norm2));
    }
  }
}

ClaimResult claim_coherent_uniqueness(const VerifyConfig& cfg, Rng& rng) {
  Checks ch;
  double min_coeff = 1e300, fd_err = 0.0;
  for (int k = 0; k < cfg.uniqueness_samples; ++k) {
    // fix the draw so that retries at larger cutoffs rebuild the same state
    const std::uint64_t draw = rng();
    ProductInput in = product_input(
        [&](const CutoffConfig& c) {
          Rng local(draw);
          return random_non_coherent(k, local, c);
        },
        [](const CutoffConfig& c) { return fock(0, c); }, cfg.pure_leakage_tol, cfg.pure_cap);
    double phi = uniform(rng, 0.0, 2.0 * kPi);
    double pred = small_theta_predict(in.a, in.b, phi).coefficient;
    min_coeff = std::min(min_coeff, pred);
    if (k % 10 == 0)
      fd_err = std::max(fd_err, std::abs(fd_theta2_coefficient(in.joint, phi, cfg.fd_step) - pred) /
                                    std::abs(pred));
  }
  ch.at_least("min coefficient over non-coherent states", min_coeff, 1e-6);
  double coh = 0.0, coh_ep = 0.0;
  for (int k = 0; k < cfg.coherent_samples; ++k) {
    Complex alpha = random_complex(rng, 2.0);
    ProductInput in = product_input([&](const CutoffConfig& c) { return coherent(alpha, c); },
                                    [](const CutoffConfig& c) { return fock(0, c); },
                                    cfg.pure_leakage_tol, cfg.pure_cap);
    double phi = uniform(rng, 0.0, 2.0 * kPi);
    coh = std::max(coh, std::abs(small_theta_predict(in.a, in.b, phi).coefficient));
    coh_ep = std::max(coh_ep, e_p(apply_bs(in.joint, BeamSplitterParams::make(0.3, phi))));
  }
  ch.at_most("max |coefficient| over coherent states", coh, 1e-10);
  ch.at_most("max E_p of coherent x vacuum at theta = 0.3", coh_ep, 1e-10);
  ch.at_most("finite-difference check of sampled coefficients, relative error", fd_err, 1e-3);
  ch.note(std::to_string(cfg.uniqueness_samples) + " non-coherent and " +
          std::to_string(cfg.coherent_samples) + " coherent samples");
  return std::move(ch).finish("coherent_uniqueness",
                              "with vacuum in the other port only coherent states stay unentangled");
}

using ClaimFn = ClaimResult (*)(const VerifyConfig&, Rng&);

const std::vector<std::pair<std::string, ClaimFn>>& registry() {
  static const std::vector<std::pair<std::string, ClaimFn>> r = {
      {"schmidt_rank", claim_schmidt_rank},
      {"small_theta_law", claim_small_theta_law},
      {"coherent_product_separable", claim_coherent_product_separable},
      {"matched_squeeze_separable", claim_matched_squeeze_separable},
      {"unpolarized_invariance", claim_unpolarized_invariance},
      {"unpolarized_separable", claim_unpolarized_separable},
      {"thermal_is_unpolarized", claim_thermal_is_unpolarized},
      {"zero_entanglement_family", claim_zero_entanglement_family},
      {"classical_mixture_separable", claim_classical_mixture_separable},
      {"squeeze_conjugation", claim_squeeze_conjugation},
      {"sector_oracle", claim_sector_oracle},
      {"coherent_uniqueness", claim_coherent_uniqueness},
  };
  return r;
}

}  // namespace

void VerifyConfig::check() const {
  tol.check();
  if (!(fd_step > 0.0 && fd_step <= 0.1)) throw ConfigurationError("fd_step must lie in (0, 0.1]");
  for (double t : {pure_leakage_tol, mixed_leakage_tol, mixed_overflow_tol, thermal_leakage_tol})
    if (!(t > 0.0 && t < 1.0)) throw ConfigurationError("leakage tolerances must lie in (0, 1)");
  if (pure_cap < 1 || mixed_cap < 1) throw ConfigurationError("cutoff caps must be positive");
  if (grid_theta < 1 || grid_phi < 1 || random_angles < 1 || uniqueness_samples < 1 ||
      coherent_samples < 1)
    throw ConfigurationError("grid sizes and sample counts must be positive");
}

const std::vector<std::string>& claim_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, fn] : registry()) out.push_back(id);
    return out;
  }();
  return ids;
}

ClaimResult run_claim(const std::string& id, const VerifyConfig& config) {
  config.check();
  const auto& r = registry();
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (r[k].first != id) continue;
    const std::uint64_t seed = config.seed + k;
    Rng rng(seed);
    const auto start = Clock::now();
    ClaimResult res;
    try {
      res = r[k].second(config, rng);
    } catch (const CutoffError& e) {
      res.claim_id = id;
      res.anchor = "";
      res.metric = std::nan("");
      res.threshold = 0.0;
      res.pass = false;
      res.note = std::string("cutoff error: ") + e.what();
    }
    res.runtime_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
    res.seed = seed;
    return res;
  }
  throw ConfigurationError("unknown claim id '" + id + "'");
}

std::vector<ClaimResult> run_all(const VerifyConfig& config, const std::vector<std::string>& ids) {
  for (const std::string& id : ids)
    if (std::find(claim_ids().begin(), claim_ids().end(), id) == claim_ids().end())
      throw ConfigurationError("unknown claim id '" + id + "'");
  std::vector<ClaimResult> out;
  for (const std::string& id : claim_ids())
    if (ids.empty() || std::find(ids.begin(), ids.end(), id) != ids.end())
      out.push_back(run_claim(id, config));
  return out;
}

double e_p_after(const JointState& input, const BeamSplitterParams& params) {
  return e_p(apply_bs(input, params));
}

double fd_theta2_coefficient(const JointState& input, double phi, double h) {
  auto basis = std::make_shared<const SectorBasis>(input.cutoff());
  auto f = [&](double theta) {
    return e_p(BeamSplitter(BeamSplitterParams{theta, phi}, basis).apply(input));
  };
  const double second = (-f(2.0 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2.0 * h)) /
                        (12.0 * h * h);
  return 0.5 * second;
}

}  // namespace bsent
