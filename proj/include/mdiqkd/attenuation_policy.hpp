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

// Lookup-table attenuation policy. For each instantaneous transmittance
// pair, the relay attenuates the stronger arm by the amount that maximizes
// the static finite key rate.
//
// Attenuators sit permanently in both arms. Each arm therefore sees at
// least `min_insertion_db`; the weaker arm sees exactly that floor and the
// stronger arm sees the table value, which is always >= the floor.

#pragma once

#include <cstddef>
#include <string>

#include <Eigen/Core>

#include "mdiqkd/finite_key.hpp"
#include "mdiqkd/noise_model.hpp"
#include "mdiqkd/turbulence.hpp"

namespace mdiqkd {

struct SearchSettings {
  double step_db = 0.1;
  double max_db = 20.0;
  double min_insertion_db = 0.0;

  void validate() const;

  /// Number of candidates min_insertion_db + k * step_db not exceeding max_db.
  std::size_t candidate_count() const;
  double candidate(std::size_t k) const { return min_insertion_db + static_cast<double>(k) * step_db; }
};

struct TransmittancePair {
  double eta_a;
  double eta_b;
};

/// dB to linear power transmission.
inline double db_to_transmission(double db) { return std::pow(10.0, -db / 10.0); }

/// Transmittances after the relay's attenuators. `stronger_db` is applied to
/// the arm with the larger transmittance (Alice on ties), the weaker arm gets
/// `min_insertion_db`. With both at 0 the inputs pass through unchanged.
TransmittancePair apply_attenuation(double eta_a, double eta_b, double stronger_db,
                                    double min_insertion_db);

struct AttenuationChoice {
  double attenuation_db = 0.0;
  double rate = 0.0;
  bool at_cap = false;  // argmax sits on the last candidate
};

/// Exhaustive sweep over the candidate attenuations; ties go to the smaller
/// attenuation. All-zero rates return the first candidate with rate 0.
AttenuationChoice optimal_attenuation(double eta_a, double eta_b, const SystemParams& sys,
                                      const DecoyParams& decoy, const SearchSettings& search);

/// Discretized attenuation kernel: values(i, j) is the attenuation in dB on
/// the stronger arm for (grid_a[i], grid_b[j]).
struct AttenuationTable {
  TransmittanceGrid grid_a;
  TransmittanceGrid grid_b;
  Eigen::MatrixXd values;
  SearchSettings search;
  SystemParams sys;
  DecoyParams decoy;
  std::string fingerprint;
  std::size_t cap_hits = 0;

  // Diagnostics, filled by build_table but not persisted with the table:
  // static rate with no attenuators in the path, and rate at the chosen value.
  Eigen::MatrixXd rate_static;
  Eigen::MatrixXd rate_attenuated;

  bool empty() const { return values.size() == 0; }
};

/// Text fingerprint of everything the table depends on besides the grids.
std::string parameter_fingerprint(const SystemParams& sys, const DecoyParams& decoy,
                                  const SearchSettings& search);

AttenuationTable build_table(const TransmittanceGrid& grid_a, const TransmittanceGrid& grid_b,
                             const SystemParams& sys, const DecoyParams& decoy,
                             const SearchSettings& search, unsigned threads = 1);

/// Nearest-cell lookup; out-of-range inputs clamp to the grid edge.
double query(const AttenuationTable& table, double eta_a, double eta_b);

}  // namespace mdiqkd
