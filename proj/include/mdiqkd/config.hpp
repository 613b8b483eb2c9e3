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


// Run configuration, read from a single JSON document. Every section is
// optional and missing keys keep the reference defaults:
//
//   {
//     "system":    {"eta_d": 0.5, "e_dz": 0.003, ..., "n_pulses": 1e13},
//     "decoy":     {"s": 0.45, "mu": 0.2, "nu": 0.037, "p_s": ...},
//     "decoy_file": "decoy.json",          // optimizer output, overrides "decoy"
//     "search":    {"step_db": 0.1, "max_db": 20, "min_insertion_db": 0},
//     "grid":      {"step": 0.005},
//     "table":     {"output": "table.csv"},
//     "sweep":     {"sigma2": [...], "loss_db": [...], "baseline": true,
//                   "tables": ["table.csv", ...]},
//     "point":     {"eta_a": 0.15, "eta_b": 0.04},
//     "optimizer": {"seed": 1, "population_size": 64, "generations": 200,
//                   "design_eta0": 0.02, "extra_loss_db": 5,
//                   "lower": [...6], "upper": [...6]}
//   }
//
// Relative paths resolve against the directory holding the config file.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mdiqkd/attenuation_policy.hpp"
#include "mdiqkd/decoy_optimizer.hpp"
#include "mdiqkd/noise_model.hpp"

namespace mdiqkd {

struct SweepSettings {
  std::vector<double> sigma2{0.001, 0.2, 0.4, 0.6, 0.8, 1.0, 1.2};
  std::vector<double> loss_db{8.0, 11.0, 14.0, 17.0};  // mean loss per arm
  bool baseline = true;
  std::vector<std::filesystem::path> tables;
};

struct PointSettings {
  double eta_a = 0.15;
  double eta_b = 0.04;
};

struct RunConfig {
  SystemParams sys;
  DecoyParams decoy;
  SearchSettings search;
  double grid_step = 0.005;
  std::filesystem::path table_output = "table.csv";
  SweepSettings sweep;
  PointSettings point;
  OptimizerSettings optimizer;

  void validate() const;
  /// Effective configuration, for manifests.
  nlohmann::json snapshot() const;
};

/// Throws ConfigError for unreadable or malformed documents.
RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

/// Reads the decoy section of an optimizer output document.
DecoyParams load_decoy_file(const std::filesystem::path& path);

}  // namespace mdiqkd
