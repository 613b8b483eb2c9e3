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

// On-disk formats shared with downstream tooling.
//
// Attenuation table (format "mdiqkd-attenuation-table", version 1.x):
//   line 1:  '# ' followed by a one-line JSON header (grids, search
//            settings, system/decoy parameters, fingerprint)
//   line 2:  etaA,etaB,attenuation_db
//   rows:    row-major over (etaA, etaB), 17 significant digits
//
// Sweep results (version 1.x):
//   line 1:  # format_version=1.0
//   line 2:  sigma2,eta0_db,mode,rate

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "mdiqkd/attenuation_policy.hpp"

namespace mdiqkd {

inline constexpr const char* kTableFormat = "mdiqkd-attenuation-table";
inline constexpr int kTableFormatMajor = 1;
inline constexpr int kSweepFormatMajor = 1;

/// Shortest text that parses back to exactly `v` (17 significant digits).
std::string format_double(double v);

nlohmann::json to_json(const SystemParams& sys);
nlohmann::json to_json(const DecoyParams& decoy);
nlohmann::json to_json(const SearchSettings& search);
SystemParams system_from_json(const nlohmann::json& j);
DecoyParams decoy_from_json(const nlohmann::json& j);
SearchSettings search_from_json(const nlohmann::json& j);

void write_table(const AttenuationTable& table, std::ostream& out);
void save_table(const AttenuationTable& table, const std::filesystem::path& path);

/// Throws ArtifactMismatch for unreadable files, foreign formats or
/// unsupported major versions.
AttenuationTable read_table(std::istream& in);
AttenuationTable load_table(const std::filesystem::path& path);

struct SweepRow {
  double sigma2;
  double eta0_db;
  std::string mode;
  double rate;
};

void write_sweep(const std::vector<SweepRow>& rows, std::ostream& out);
std::vector<SweepRow> read_sweep(std::istream& in);

}  // namespace mdiqkd
