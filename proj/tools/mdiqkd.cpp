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


#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mdiqkd/commands.hpp"
#include "mdiqkd/version.hpp"

namespace {

void add_common(CLI::App* cmd, mdiqkd::CommandOptions& opts) {
  cmd->add_option("--config", opts.config, "JSON run configuration")->required();
  cmd->add_option("--out-dir", opts.out_dir, "Directory for results and manifests");
  cmd->add_option("--threads", opts.threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--grid-step", opts.grid_step, "Transmittance grid spacing");
  cmd->add_option("--seed", opts.seed, "Optimizer seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Turbulence-averaged MDI QKD key rates with dynamic attenuation"};
  app.set_version_flag("--version", std::string(mdiqkd::kVersion));
  app.require_subcommand(1);

  mdiqkd::CommandOptions opts;
  auto* build = app.add_subcommand("build-table", "Build the attenuation lookup table");
  auto* sweep = app.add_subcommand("sweep", "Averaged key rates over the turbulence ladder");
  auto* optimize = app.add_subcommand("optimize", "Optimize decoy settings at a design point");
  auto* point = app.add_subcommand("point-sweep", "Key rate versus attenuation at one channel pair");
  for (auto* cmd : {build, sweep, optimize, point}) add_common(cmd, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : mdiqkd::kExitConfig;
  }

  return mdiqkd::guarded(
      [&] {
        if (*build) return mdiqkd::cmd_build_table(opts, std::cout);
        if (*sweep) return mdiqkd::cmd_sweep(opts, std::cout);
        if (*optimize) return mdiqkd::cmd_optimize(opts, std::cout);
        return mdiqkd::cmd_point_sweep(opts, std::cout);
      },
      std::cerr);
}
