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


// Command implementations behind the command-line tool. Each writes its
// artifacts plus a JSON manifest into the output directory and returns a
// process exit code.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>

namespace mdiqkd {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitArtifact = 3,
  kExitInfeasible = 4,
};

struct CommandOptions {
  std::filesystem::path config;
  std::filesystem::path out_dir = ".";
  unsigned threads = 1;
  std::optional<double> grid_step;  // overrides grid.step
  std::optional<std::uint64_t> seed;  // overrides optimizer.seed
};

/// <table>.csv, <table>_rates.csv, manifest_build_table.json
int cmd_build_table(const CommandOptions& opts, std::ostream& log);
/// sweep.csv, manifest_sweep.json
int cmd_sweep(const CommandOptions& opts, std::ostream& log);
/// decoy.json, manifest_optimize.json
int cmd_optimize(const CommandOptions& opts, std::ostream& log);
/// point_sweep.csv, manifest_point_sweep.json
int cmd_point_sweep(const CommandOptions& opts, std::ostream& log);

/// Runs `body`, translating exceptions into exit codes with a diagnostic.
int guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace mdiqkd
