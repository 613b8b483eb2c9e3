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


// Evolutionary search over symmetric decoy settings (s, mu, nu, P_s, P_mu,
// P_nu) maximizing the static finite key rate at a design transmittance.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mdiqkd/noise_model.hpp"

namespace mdiqkd {

/// Gene order: s, mu, nu, p_s, p_mu, p_nu.
using DecoyVector = std::array<double, 6>;

DecoyVector to_vector(const DecoyParams& decoy);
DecoyParams from_vector(const DecoyVector& v);

struct ParameterBounds {
  DecoyVector lower{0.05, 0.01, 0.001, 0.01, 0.001, 0.001};
  DecoyVector upper{1.0, 0.8, 0.3, 0.99, 0.99, 0.99};

  /// Bounds collapsed onto a single point.
  static ParameterBounds point(const DecoyVector& v) { return {v, v}; }
};

struct OptimizerSettings {
  std::size_t population_size = 64;
  std::size_t generations = 200;
  std::uint64_t seed = 1;
  std::size_t tournament_size = 3;
  std::size_t elite = 2;
  double mutation_rate = 0.3;  // per gene
  double mutation_scale_start = 0.1;  // fraction of the bound width
  double mutation_scale_end = 0.005;
  // Simulation-side mean transmittance per arm; the optimizer works at
  // design_eta0 reduced by extra_loss_db.
  double design_eta0 = 0.02;
  double extra_loss_db = 5.0;
  ParameterBounds bounds;
  unsigned threads = 1;

  double design_eta() const;

  /// ValidationError for malformed settings, InfeasibleError when no
  /// candidate inside the bounds satisfies the ordering and simplex
  /// constraints.
  void validate() const;
};

// Repair margins: relative gap between consecutive intensities and the
// least vacuum-pulse probability.
inline constexpr double kIntensityGap = 1e-3;
inline constexpr double kMinVacuumProbability = 1e-3;

/// Projects `v` into the bounds and the feasible set. Requires validated
/// bounds; feasible points inside the bounds are returned unchanged.
DecoyVector repair(const DecoyVector& v, const ParameterBounds& bounds);

/// Static finite key rate at (design_eta, design_eta), or nullopt when the
/// candidate violates the decoy constraints.
std::optional<double> evaluate_candidate(const DecoyVector& candidate, const SystemParams& sys,
                                         double design_eta);

struct OptimizationResult {
  DecoyParams decoy;
  double rate = 0.0;
  std::vector<double> best_history;  // best rate after each generation
  std::size_t evaluations = 0;
};

OptimizationResult optimize_decoy(const SystemParams& sys, const OptimizerSettings& settings);

}  // namespace mdiqkd
