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


// End-to-end checks of the command-line tool: artifacts, determinism and
// the exit-code contract.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "mdiqkd/table_io.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mdiqkd_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run(const std::string& args) {
  const std::string cmd = std::string(MDIQKD_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string args(const fs::path& config, const fs::path& out, const std::string& extra = "") {
  return "--config " + config.string() + " --out-dir " + out.string() + " " + extra;
}

}  // namespace

TEST_CASE("build-table writes a complete, reproducible table") {
  const auto dir = scratch("build");
  write(dir / "c.json", R"({"grid": {"step": 0.1}})");
  REQUIRE(run("build-table " + args(dir / "c.json", dir / "a")) == 0);
  REQUIRE(run("build-table " + args(dir / "c.json", dir / "b", "--threads 3")) == 0);
  const std::string a = slurp(dir / "a" / "table.csv");
  CHECK(a == slurp(dir / "b" / "table.csv"));
  CHECK(slurp(dir / "a" / "table_rates.csv") == slurp(dir / "b" / "table_rates.csv"));
  std::istringstream in(a);
  CHECK(mdiqkd::read_table(in).values.size() == 100);

  const auto manifest = nlohmann::json::parse(slurp(dir / "a" / "manifest_build_table.json"));
  CHECK(manifest["outputs"].size() == 2);
  CHECK(manifest["format_version"] == "1.0");
  CHECK(manifest["config"]["grid"]["step"] == 0.1);
}

TEST_CASE("grid-step flag overrides the config") {
  const auto dir = scratch("gridflag");
  write(dir / "c.json", "{}");
  REQUIRE(run("build-table " + args(dir / "c.json", dir, "--grid-step 0.2")) == 0);
  std::ifstream in(dir / "table.csv");
  CHECK(mdiqkd::read_table(in).values.size() == 25);
}

TEST_CASE("configuration errors exit with 2") {
  const auto dir = scratch("config");
  write(dir / "bad.json", "{ not json");
  write(dir / "unknown.json", R"({"sytem": {}})");
  write(dir / "invalid.json", R"({"decoy": {"mu": 0.5, "s": 0.4}})");
  CHECK(run("build-table " + args(dir / "bad.json", dir)) == 2);
  CHECK(run("build-table " + args(dir / "unknown.json", dir)) == 2);
  CHECK(run("build-table " + args(dir / "invalid.json", dir)) == 2);
  CHECK(run("build-table " + args(dir / "missing.json", dir)) == 2);
  CHECK(run("build-table --out-dir " + dir.string()) == 2);
}

TEST_CASE("sweep: outputs, determinism and artifact checks") {
  const auto dir = scratch("sweep");
  write(dir / "build.json", R"({"grid": {"step": 0.05}})");
  REQUIRE(run("build-table " + args(dir / "build.json", dir)) == 0);
  write(dir / "sweep.json", R"({"grid": {"step": 0.05},
    "sweep": {"sigma2": [0.001, 0.6, 1.2], "loss_db": [8, 14], "tables": ["table.csv"]}})");
  REQUIRE(run("sweep " + args(dir / "sweep.json", dir / "one")) == 0);
  REQUIRE(run("sweep " + args(dir / "sweep.json", dir / "many", "--threads 8")) == 0);
  const std::string csv = slurp(dir / "one" / "sweep.csv");
  CHECK(csv == slurp(dir / "many" / "sweep.csv"));
  std::istringstream in(csv);
  const auto rows = mdiqkd::read_sweep(in);
  CHECK(rows.size() == 12);
  for (std::size_t k = 0; k + 1 < rows.size(); k += 2) {
    CHECK(rows[k].mode == "baseline");
    CHECK(rows[k + 1].mode == "dynamic");
    CHECK(rows[k + 1].rate >= rows[k].rate);
  }

  write(dir / "missing.json", R"({"sweep": {"tables": ["nope.csv"]}})");
  CHECK(run("sweep " + args(dir / "missing.json", dir / "x")) == 3);
  write(dir / "mismatch.json", R"({"system": {"n_pulses": 1e14}, "grid": {"step": 0.05},
    "sweep": {"sigma2": [0.2], "loss_db": [8], "tables": ["table.csv"]}})");
  CHECK(run("sweep " + args(dir / "mismatch.json", dir / "x")) == 3);
}

TEST_CASE("optimize: seeded output and infeasible bounds") {
  const auto dir = scratch("optimize");
  write(dir / "opt.json", R"({"optimizer": {"generations": 20, "population_size": 16,
    "design_eta0": 0.04, "extra_loss_db": 0}})");
  REQUIRE(run("optimize " + args(dir / "opt.json", dir / "a", "--seed 9")) == 0);
  REQUIRE(run("optimize " + args(dir / "opt.json", dir / "b", "--seed 9 --threads 4")) == 0);
  CHECK(slurp(dir / "a" / "decoy.json") == slurp(dir / "b" / "decoy.json"));
  const auto doc = nlohmann::json::parse(slurp(dir / "a" / "decoy.json"));
  CHECK(doc["seed"] == 9);
  CHECK(doc["rate"].get<double>() > 0.0);

  // The optimizer output feeds straight back in as a decoy file.
  write(dir / "use.json", R"({"decoy_file": "a/decoy.json", "point": {"eta_a": 0.1, "eta_b": 0.05}})");
  CHECK(run("point-sweep " + args(dir / "use.json", dir / "p")) == 0);

  write(dir / "infeasible.json", R"({"optimizer": {"lower": [0.05, 0.5, 0.001, 0.01, 0.001, 0.001],
    "upper": [0.3, 0.8, 0.3, 0.99, 0.99, 0.99]}})");
  CHECK(run("optimize " + args(dir / "infeasible.json", dir / "c")) == 4);
}

TEST_CASE("point-sweep lists every candidate") {
  const auto dir = scratch("point");
  write(dir / "c.json", R"({"search": {"step_db": 0.5, "max_db": 10}})");
  REQUIRE(run("point-sweep " + args(dir / "c.json", dir)) == 0);
  std::istringstream in(slurp(dir / "point_sweep.csv"));
  std::string line;
  std::getline(in, line);
  CHECK(line == "# format_version=1.0");
  std::getline(in, line);
  CHECK(line == "attenuation_db,rate,y11_lower,e11_upper,e11_estimate");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 21);
}
