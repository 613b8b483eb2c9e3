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


// Turbulence averaging over the joint PDTC. The finite-key pipeline
// integrates sifted counts first and applies the key-rate chain once to the
// averaged counts. Rate averaging is kept as a diagnostic.

#pragma once

#include <memory>

#include "mdiqkd/attenuation_policy.hpp"
#include "mdiqkd/finite_key.hpp"
#include "mdiqkd/noise_model.hpp"
#include "mdiqkd/turbulence.hpp"

namespace mdiqkd {

enum class Mode { baseline, dynamic_attenuation };

struct ScenarioConfig {
  ChannelModel channel_a;
  ChannelModel channel_b;
  SystemParams sys;
  DecoyParams decoy;
  std::shared_ptr<const AttenuationTable> table;  // required in dynamic mode
  TransmittanceGrid grid = TransmittanceGrid::unit_interval(0.005);
  Mode mode = Mode::baseline;
  // Cells whose joint mass falls below this are skipped.
  double mass_cutoff = 1e-15;

  /// Throws ValidationError for bad parameters and ArtifactMismatch when the
  /// table is missing or was built for different system/decoy parameters.
  void validate() const;
};

using AveragedCounts = SiftedCounts<double>;

/// PDTC-weighted sifted counts. Rows are reduced in index order, so the
/// result does not depend on `threads`.
AveragedCounts integrate_counts(const ScenarioConfig& cfg, unsigned threads = 1);

/// Finite key rate of the averaged counts.
KeyRateResult<double> averaged_key_rate(const ScenarioConfig& cfg, unsigned threads = 1);

/// Mass-weighted mean of per-cell asymptotic rates.
double averaged_rate_asymptotic(const ScenarioConfig& cfg, unsigned threads = 1);

}  // namespace mdiqkd
