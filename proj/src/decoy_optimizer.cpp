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


#include "mdiqkd/decoy_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "mdiqkd/errors.hpp"
#include "mdiqkd/finite_key.hpp"
#include "mdiqkd/parallel.hpp"

namespace mdiqkd {

namespace {

constexpr std::size_t kIntensities = 3;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Standard-library distributions are implementation-defined; these
// transforms keep results identical across toolchains.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t generation, std::uint64_t index)
      : engine_(splitmix64(splitmix64(splitmix64(seed) ^ generation) ^ index)) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::size_t below(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n));
  }

  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

struct Individual {
  DecoyVector genes{};
  double fitness = -1.0;  // rejected candidates rank below any rate
};

double fitness_of(const DecoyVector& v, const SystemParams& sys, double eta) {
  return evaluate_candidate(v, sys, eta).value_or(-1.0);
}

std::size_t tournament(const std::vector<Individual>& pop, std::size_t size, Stream& rng) {
  std::size_t best = rng.below(pop.size());
  for (std::size_t k = 1; k < size; ++k) {
    const std::size_t c = rng.below(pop.size());
    if (pop[c].fitness > pop[best].fitness || (pop[c].fitness == pop[best].fitness && c < best)) {
      best = c;
    }
  }
  return best;
}

// Fitness descending, index ascending on ties.
void rank(std::vector<Individual>& pop) {
  std::stable_sort(pop.begin(), pop.end(),
                   [](const Individual& a, const Individual& b) { return a.fitness > b.fitness; });
}

}  // namespace

DecoyVector to_vector(const DecoyParams& d) {
  return {d.s_a, d.mu_a, d.nu_a, d.p_s, d.p_mu, d.p_nu};
}

DecoyParams from_vector(const DecoyVector& v) {
  return DecoyParams::symmetric(v[0], v[1], v[2], v[3], v[4], v[5]);
}

double OptimizerSettings::design_eta() const {
  return design_eta0 * std::pow(10.0, -extra_loss_db / 10.0);
}

void OptimizerSettings::validate() const {
  if (population_size < 8) throw ValidationError("optimizer: population_size must be >= 8");
  if (generations < 1) throw ValidationError("optimizer: generations must be >= 1");
  if (tournament_size < 1) throw ValidationError("optimizer: tournament_size must be >= 1");
  if (elite >= population_size) throw ValidationError("optimizer: elite must be < population");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
    throw ValidationError("optimizer: mutation_rate must lie in [0, 1]");
  }
  if (!(mutation_scale_start >= 0.0 && mutation_scale_end >= 0.0)) {
    throw ValidationError("optimizer: mutation scales must be >= 0");
  }
  if (!(extra_loss_db >= 0.0)) throw ValidationError("optimizer: extra_loss_db must be >= 0");
  const double eta = design_eta();
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw ValidationError("optimizer: design transmittance must lie in (0, 1]");
  }

  const auto& lo = bounds.lower;
  const auto& hi = bounds.upper;
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (!(lo[k] <= hi[k]) || !std::isfinite(lo[k]) || !std::isfinite(hi[k])) {
      throw InfeasibleError("optimizer: empty bound interval for parameter " + std::to_string(k));
    }
  }
  if (!(lo[2] > 0.0)) throw InfeasibleError("optimizer: nu must be bounded away from 0");
  for (std::size_t k = kIntensities; k < lo.size(); ++k) {
    if (!(lo[k] > 0.0)) throw InfeasibleError("optimizer: probabilities must be bounded above 0");
  }
  // Largest ordered triple inside the bounds.
  const double s = hi[0];
  const double mu = std::min(hi[1], s * (1.0 - kIntensityGap));
  const double nu = std::min(hi[2], mu * (1.0 - kIntensityGap));
  if (mu < lo[1] || nu < lo[2]) {
    throw InfeasibleError("optimizer: bounds admit no s > mu > nu > 0");
  }
  if (lo[3] + lo[4] + lo[5] > 1.0 - kMinVacuumProbability) {
    throw InfeasibleError("optimizer: probability lower bounds exceed the simplex");
  }
}

DecoyVector repair(const DecoyVector& v, const ParameterBounds& bounds) {
  const auto& lo = bounds.lower;
  const auto& hi = bounds.upper;
  DecoyVector r;
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = std::clamp(v[k], lo[k], hi[k]);

  // Intensities: push down to restore the ordering, then back up to the
  // lower bounds. Both passes stay inside the bounds when they are feasible.
  const double keep = 1.0 - kIntensityGap;
  r[1] = std::min(r[1], r[0] * keep);
  r[2] = std::min(r[2], r[1] * keep);
  r[2] = std::max(r[2], lo[2]);
  r[1] = std::max({r[1], lo[1], r[2] / keep});
  r[0] = std::max({r[0], lo[0], r[1] / keep});

  // Probabilities: shrink the excess above the lower bounds uniformly.
  const double cap = 1.0 - kMinVacuumProbability;
  const double sum = r[3] + r[4] + r[5];
  if (sum > cap) {
    const double floor = lo[3] + lo[4] + lo[5];
    const double t = (cap - floor) / (sum - floor);
    for (std::size_t k = kIntensities; k < r.size(); ++k) r[k] = lo[k] + (r[k] - lo[k]) * t;
  }
  return r;
}

std::optional<double> evaluate_candidate(const DecoyVector& candidate, const SystemParams& sys,
                                         double design_eta) {
  const DecoyParams decoy = from_vector(candidate);
  try {
    decoy.validate();
    if (!(decoy.p_omega() > 0.0)) return std::nullopt;
    const auto counts = all_sifted_counts(design_eta, design_eta, sys, decoy);
    return secure_key_rate(counts, sys, decoy).rate;
  } catch (const ValidationError&) {
    return std::nullopt;
  } catch (const DegenerateStatistics&) {
    return std::nullopt;
  }
}

OptimizationResult optimize_decoy(const SystemParams& sys, const OptimizerSettings& settings) {
  sys.validate();
  settings.validate();
  const double eta = settings.design_eta();
  const auto& bounds = settings.bounds;
  const std::size_t n = settings.population_size;

  OptimizationResult result;
  std::vector<Individual> pop(n);
  parallel_for(n, settings.threads, [&](std::size_t k) {
    Stream rng(settings.seed, 0, k);
    DecoyVector v;
    for (std::size_t g = 0; g < v.size(); ++g) {
      v[g] = rng.uniform(bounds.lower[g], bounds.upper[g]);
    }
    pop[k].genes = repair(v, bounds);
    pop[k].fitness = fitness_of(pop[k].genes, sys, eta);
  });
  result.evaluations += n;
  rank(pop);
  result.best_history.push_back(pop.front().fitness);

  std::vector<Individual> next(n);
  for (std::size_t gen = 1; gen < settings.generations; ++gen) {
    const double progress =
        static_cast<double>(gen - 1) / static_cast<double>(std::max<std::size_t>(1, settings.generations - 1));
    const double scale = settings.mutation_scale_start +
                         (settings.mutation_scale_end - settings.mutation_scale_start) * progress;
    std::copy_n(pop.begin(), settings.elite, next.begin());

    const std::size_t children = n - settings.elite;
    parallel_for(children, settings.threads, [&](std::size_t c) {
      const std::size_t idx = settings.elite + c;
      Stream rng(settings.seed, gen, idx);
      const auto& a = pop[tournament(pop, settings.tournament_size, rng)].genes;
      const auto& b = pop[tournament(pop, settings.tournament_size, rng)].genes;
      DecoyVector child;
      for (std::size_t g = 0; g < child.size(); ++g) {
        // BLX-0.5 crossover.
        const double lo = std::min(a[g], b[g]), hi = std::max(a[g], b[g]);
        const double ext = 0.5 * (hi - lo);
        child[g] = rng.uniform(lo - ext, hi + ext);
        if (rng.uniform() < settings.mutation_rate) {
          child[g] += scale * (bounds.upper[g] - bounds.lower[g]) * rng.normal();
        }
      }
      next[idx].genes = repair(child, bounds);
      next[idx].fitness = fitness_of(next[idx].genes, sys, eta);
    });
    result.evaluations += children;
    pop.swap(next);
    rank(pop);
    result.best_history.push_back(pop.front().fitness);
  }

  if (!(pop.front().fitness >= 0.0)) {
    throw InfeasibleError("optimizer: no candidate passed the decoy constraints");
  }
  result.decoy = from_vector(pop.front().genes);
  result.rate = pop.front().fitness;
  return result;
}

}  // namespace mdiqkd
