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


#include "mdiqkd/integrator.hpp"

#include <vector>

#include "mdiqkd/errors.hpp"
#include "mdiqkd/parallel.hpp"

namespace mdiqkd {

namespace {

// Visits every cell above the mass cutoff with the transmittances the
// detectors actually see. `fn(row, eta_a, eta_b, mass)`.
template <typename Fn>
void for_each_cell(const ScenarioConfig& cfg, unsigned threads, Fn&& fn) {
  const DiscretePdtc pa = discretize(cfg.channel_a, cfg.grid);
  const DiscretePdtc pb = discretize(cfg.channel_b, cfg.grid);
  const bool dynamic = cfg.mode == Mode::dynamic_attenuation;
  const double floor_db = dynamic ? cfg.table->search.min_insertion_db : 0.0;
  const Eigen::Index n = cfg.grid.size();

  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t row) {
    const auto i = static_cast<Eigen::Index>(row);
    if (pa.mass[i] == 0.0) return;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double w = pa.mass[i] * pb.mass[j];
      if (w < cfg.mass_cutoff) continue;
      double ea = pa.eta[i], eb = pb.eta[j];
      if (dynamic) {
        const auto p = apply_attenuation(ea, eb, query(*cfg.table, ea, eb), floor_db);
        ea = p.eta_a;
        eb = p.eta_b;
      }
      fn(row, ea, eb, w);
    }
  });
}

}  // namespace

void ScenarioConfig::validate() const {
  channel_a.validate();
  channel_b.validate();
  sys.validate();
  decoy.validate();
  if (grid.empty()) throw ValidationError("ScenarioConfig: empty grid");
  if (!(mass_cutoff >= 0.0)) throw ValidationError("ScenarioConfig: mass_cutoff must be >= 0");
  if (mode != Mode::dynamic_attenuation) return;
  if (!table || table->empty()) {
    throw ArtifactMismatch("dynamic attenuation requires an attenuation table");
  }
  if (table->fingerprint != parameter_fingerprint(sys, decoy, table->search)) {
    throw ArtifactMismatch("attenuation table " + table->fingerprint +
                           " was built for different system/decoy parameters");
  }
}

AveragedCounts integrate_counts(const ScenarioConfig& cfg, unsigned threads) {
  cfg.validate();
  std::vector<AveragedCounts> rows(static_cast<std::size_t>(cfg.grid.size()));
  for_each_cell(cfg, threads, [&](std::size_t row, double ea, double eb, double w) {
    rows[row] += detail::all_sifted_counts(ea, eb, cfg.sys, cfg.decoy).scaled(w);
  });
  AveragedCounts total;
  for (const auto& r : rows) total += r;
  return total;
}

KeyRateResult<double> averaged_key_rate(const ScenarioConfig& cfg, unsigned threads) {
  return secure_key_rate(integrate_counts(cfg, threads), cfg.sys, cfg.decoy);
}

double averaged_rate_asymptotic(const ScenarioConfig& cfg, unsigned threads) {
  cfg.validate();
  std::vector<double> rows(static_cast<std::size_t>(cfg.grid.size()), 0.0);
  for_each_cell(cfg, threads, [&](std::size_t row, double ea, double eb, double w) {
    const auto counts = detail::all_sifted_counts(ea, eb, cfg.sys, cfg.decoy);
    rows[row] += w * asymptotic_key_rate(counts, cfg.sys, cfg.decoy);
  });
  double total = 0.0;
  for (double r : rows) total += r;
  return total;
}

}  // namespace mdiqkd
