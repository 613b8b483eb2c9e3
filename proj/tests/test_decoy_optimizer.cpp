// Copyright 2026 The mdiqkd Authors
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


#include <random>

#include <doctest.h>

#include "mdiqkd/decoy_optimizer.hpp"
#include "mdiqkd/errors.hpp"
#include "mdiqkd/finite_key.hpp"
#include "mdiqkd/presets.hpp"

using mdiqkd::DecoyVector;
using mdiqkd::OptimizerSettings;
using mdiqkd::SystemParams;

namespace {

OptimizerSettings quick(double eta, std::uint64_t seed = 5) {
  OptimizerSettings s;
  s.design_eta0 = eta;
  s.extra_loss_db = 0.0;
  s.generations = 60;
  s.population_size = 32;
  s.seed = seed;
  return s;
}

bool feasible(const DecoyVector& v) {
  return v[0] > v[1] && v[1] > v[2] && v[2] > 0.0 && v[3] + v[4] + v[5] <= 1.0 &&
         v[3] > 0.0 && v[4] > 0.0 && v[5] > 0.0;
}

}  // namespace

TEST_CASE("evaluate_candidate is the static rate composition") {
  const auto& p = mdiqkd::reference_points()[0];
  const double eta = p.design_eta();
  const auto r = mdiqkd::evaluate_candidate(mdiqkd::to_vector(p.decoy), p.system(), eta);
  REQUIRE(r.has_value());
  CHECK(*r > 0.0);
  const auto counts = mdiqkd::all_sifted_counts(eta, eta, p.system(), p.decoy);
  CHECK(*r == mdiqkd::secure_key_rate(counts, p.system(), p.decoy).rate);
}

TEST_CASE("evaluate_candidate rejects coincident decoys") {
  DecoyVector v = mdiqkd::to_vector(mdiqkd::DecoyParams{});
  v[2] = v[1];
  CHECK_FALSE(mdiqkd::evaluate_candidate(v, SystemParams{}, 0.02).has_value());
  v = mdiqkd::to_vector(mdiqkd::DecoyParams{});
  v[3] = 0.9;  // probabilities exceed one
  CHECK_FALSE(mdiqkd::evaluate_candidate(v, SystemParams{}, 0.02).has_value());
}

TEST_CASE("repair leaves feasible points alone and fixes the rest") {
  const mdiqkd::ParameterBounds bounds;
  const DecoyVector ok = mdiqkd::to_vector(mdiqkd::DecoyParams{});
  CHECK(mdiqkd::repair(ok, bounds) == ok);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.5, 1.5);
  for (int trial = 0; trial < 2000; ++trial) {
    DecoyVector v;
    for (double& x : v) x = u(rng);
    const auto r = mdiqkd::repair(v, bounds);
    CHECK(feasible(r));
    CHECK(1.0 - (r[3] + r[4] + r[5]) >= mdiqkd::kMinVacuumProbability * (1.0 - 1e-12));
    for (std::size_t k = 0; k < r.size(); ++k) {
      CHECK(r[k] >= bounds.lower[k]);
      CHECK(r[k] <= bounds.upper[k]);
    }
  }
}

TEST_CASE("fixed seed reproduces the result across runs and thread counts") {
  auto s = quick(0.02);
  const auto a = mdiqkd::optimize_decoy(SystemParams{}, s);
  s.threads = 4;
  const auto b = mdiqkd::optimize_decoy(SystemParams{}, s);
  CHECK(mdiqkd::to_vector(a.decoy) == mdiqkd::to_vector(b.decoy));
  CHECK(a.rate == b.rate);
  CHECK(a.best_history == b.best_history);
  s.seed = 6;
  const auto c = mdiqkd::optimize_decoy(SystemParams{}, s);
  CHECK(mdiqkd::to_vector(c.decoy) != mdiqkd::to_vector(a.decoy));
}

TEST_CASE("best-so-far never decreases and the result is feasible") {
  const auto r = mdiqkd::optimize_decoy(SystemParams{}, quick(0.04));
  REQUIRE(r.best_history.size() == 60);
  for (std::size_t g = 1; g < r.best_history.size(); ++g) {
    CHECK(r.best_history[g] >= r.best_history[g - 1]);
  }
  CHECK(feasible(mdiqkd::to_vector(r.decoy)));
  CHECK(r.rate == r.best_history.back());
  CHECK(r.evaluations == 32 + 59 * 30);
}

TEST_CASE("collapsed bounds return the single point") {
  auto s = quick(0.02);
  const DecoyVector point = mdiqkd::to_vector(mdiqkd::reference_points()[1].decoy);
  s.bounds = mdiqkd::ParameterBounds::point(point);
  s.generations = 5;
  const auto r = mdiqkd::optimize_decoy(SystemParams{}, s);
  CHECK(mdiqkd::to_vector(r.decoy) == point);
}

TEST_CASE("infeasible bounds are reported") {
  auto s = quick(0.02);
  s.bounds.upper[0] = 0.1;
  s.bounds.lower[1] = 0.2;  // mu must exceed every admissible s
  CHECK_THROWS_AS(mdiqkd::optimize_decoy(SystemParams{}, s), mdiqkd::InfeasibleError);
  s = quick(0.02);
  s.bounds.lower[3] = s.bounds.lower[4] = s.bounds.lower[5] = 0.4;
  CHECK_THROWS_AS(mdiqkd::optimize_decoy(SystemParams{}, s), mdiqkd::InfeasibleError);
  s = quick(0.02);
  s.bounds.lower[2] = 0.0;
  CHECK_THROWS_AS(mdiqkd::optimize_decoy(SystemParams{}, s), mdiqkd::InfeasibleError);
  s = quick(0.02);
  s.population_size = 4;
  CHECK_THROWS_AS(mdiqkd::optimize_decoy(SystemParams{}, s), mdiqkd::ValidationError);
}

TEST_CASE("design transmittance includes the loss budget") {
  OptimizerSettings s;
  s.design_eta0 = 0.1;
  s.extra_loss_db = 5.0;
  CHECK(s.design_eta() == doctest::Approx(0.1 * std::pow(10.0, -0.5)));
}

TEST_CASE("default search matches the published point at the middle block size") {
  const auto& p = mdiqkd::reference_points()[1];
  OptimizerSettings s;
  s.design_eta0 = p.design_eta();
  s.extra_loss_db = 0.0;
  const auto r = mdiqkd::optimize_decoy(p.system(), s);
  const double published =
      *mdiqkd::evaluate_candidate(mdiqkd::to_vector(p.decoy), p.system(), p.design_eta());
  MESSAGE("optimized " << r.rate << " vs published " << published);
  CHECK(r.rate >= 0.95 * published);
}
