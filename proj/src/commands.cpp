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


#include "mdiqkd/commands.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "mdiqkd/attenuation_policy.hpp"
#include "mdiqkd/config.hpp"
#include "mdiqkd/decoy_optimizer.hpp"
#include "mdiqkd/errors.hpp"
#include "mdiqkd/integrator.hpp"
#include "mdiqkd/table_io.hpp"
#include "mdiqkd/version.hpp"

namespace mdiqkd {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

RunConfig prepare(const CommandOptions& opts) {
  if (opts.config.empty()) throw ConfigError("--config is required");
  RunConfig cfg = load_config(opts.config);
  if (opts.grid_step) cfg.grid_step = *opts.grid_step;
  if (opts.seed) cfg.optimizer.seed = *opts.seed;
  cfg.optimizer.threads = opts.threads;
  try {
    cfg.validate();
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
  fs::create_directories(opts.out_dir);
  return cfg;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArtifactMismatch("cannot write " + path.string());
  return out;
}

void write_manifest(const CommandOptions& opts, const std::string& command, const RunConfig& cfg,
                    const json& outputs, const json& extra, Clock::time_point start) {
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  json m = {{"format_version", "1.0"},
            {"command", command},
            {"library_version", kVersion},
            {"config_path", opts.config.string()},
            {"config", cfg.snapshot()},
            {"outputs", outputs},
            {"grid", {{"step", cfg.grid_step}}},
            {"threads", opts.threads},
            {"wall_clock_seconds", seconds}};
  m.update(extra);
  auto out = open_output(opts.out_dir / ("manifest_" + command + ".json"));
  out << m.dump(2) << '\n';
}

std::string mode_label(const AttenuationTable& t) {
  if (t.search.min_insertion_db == 0.0) return "dynamic";
  char buf[48];
  std::snprintf(buf, sizeof buf, "dynamic_il%g", t.search.min_insertion_db);
  return buf;
}

}  // namespace

int cmd_build_table(const CommandOptions& opts, std::ostream& log) {
  const auto start = Clock::now();
  const RunConfig cfg = prepare(opts);
  const auto grid = TransmittanceGrid::unit_interval(cfg.grid_step);
  log << "building " << grid.size() << "x" << grid.size() << " table, "
      << cfg.search.candidate_count() << " candidates per cell\n";
  const AttenuationTable table =
      build_table(grid, grid, cfg.sys, cfg.decoy, cfg.search, opts.threads);

  const fs::path table_path = opts.out_dir / cfg.table_output.filename();
  save_table(table, table_path);

  const fs::path rates_path =
      opts.out_dir / (cfg.table_output.stem().string() + "_rates.csv");
  {
    auto out = open_output(rates_path);
    out << "# format_version=1.0\n";
    out << "etaA,etaB,rate_static,rate_attenuated\n";
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      for (Eigen::Index j = 0; j < grid.size(); ++j) {
        out << format_double(grid[i]) << ',' << format_double(grid[j]) << ','
            << format_double(table.rate_static(i, j)) << ','
            << format_double(table.rate_attenuated(i, j)) << '\n';
      }
    }
  }
  log << "cells at the " << cfg.search.max_db << " dB cap: " << table.cap_hits << '\n';
  std::size_t outside = 0;
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    for (Eigen::Index j = 0; j < grid.size(); ++j) {
      if (outside_model_validity(grid[i], grid[j], cfg.sys, cfg.decoy)) ++outside;
    }
  }
  if (outside > 0) {
    log << "warning: " << outside << " cells have eta * eta_d * intensity > 0.5, where the "
        << "photon-number truncation of the model loses accuracy\n";
  }

  write_manifest(opts, "build_table", cfg,
                 json::array({{{"path", table_path.filename().string()}, {"kind", "table"}},
                              {{"path", rates_path.filename().string()}, {"kind", "table_rates"}}}),
                 {{"fingerprint", table.fingerprint},
                  {"cap_hits", table.cap_hits},
                  {"cells_outside_model_validity", outside},
                  {"grid_count", grid.size()}},
                 start);
  return kExitOk;
}

int cmd_sweep(const CommandOptions& opts, std::ostream& log) {
  const auto start = Clock::now();
  const RunConfig cfg = prepare(opts);

  std::vector<std::shared_ptr<const AttenuationTable>> tables;
  std::vector<std::string> labels;
  std::set<std::string> seen;
  json inputs = json::array();
  for (const auto& path : cfg.sweep.tables) {
    auto t = std::make_shared<const AttenuationTable>(load_table(path));
    if (t->fingerprint != parameter_fingerprint(cfg.sys, cfg.decoy, t->search)) {
      throw ArtifactMismatch(path.string() + " was built for different system/decoy parameters");
    }
    const std::string label = mode_label(*t);
    if (!seen.insert(label).second) throw ConfigError("sweep: two tables map to mode " + label);
    inputs.push_back({{"path", path.string()}, {"fingerprint", t->fingerprint}, {"mode", label}});
    tables.push_back(std::move(t));
    labels.push_back(label);
  }
  if (!cfg.sweep.baseline && tables.empty()) throw ConfigError("sweep: nothing to compute");

  const auto grid = TransmittanceGrid::unit_interval(cfg.grid_step);
  std::vector<SweepRow> rows;
  for (double loss : cfg.sweep.loss_db) {
    for (double s2 : cfg.sweep.sigma2) {
      ScenarioConfig sc;
      sc.channel_a = sc.channel_b = ChannelModel::from_loss_db(loss, s2);
      sc.sys = cfg.sys;
      sc.decoy = cfg.decoy;
      sc.grid = grid;
      if (cfg.sweep.baseline) {
        sc.mode = Mode::baseline;
        rows.push_back({s2, loss, "baseline", averaged_key_rate(sc, opts.threads).rate});
      }
      sc.mode = Mode::dynamic_attenuation;
      for (std::size_t k = 0; k < tables.size(); ++k) {
        sc.table = tables[k];
        rows.push_back({s2, loss, labels[k], averaged_key_rate(sc, opts.threads).rate});
      }
      log << "loss " << loss << " dB, sigma2 " << s2 << " done\n";
    }
  }

  const fs::path sweep_path = opts.out_dir / "sweep.csv";
  {
    auto out = open_output(sweep_path);
    write_sweep(rows, out);
  }
  write_manifest(opts, "sweep", cfg,
                 json::array({{{"path", sweep_path.filename().string()}, {"kind", "sweep"}}}),
                 {{"inputs", inputs}, {"mass_cutoff", ScenarioConfig{}.mass_cutoff}}, start);
  return kExitOk;
}

int cmd_optimize(const CommandOptions& opts, std::ostream& log) {
  const auto start = Clock::now();
  const RunConfig cfg = prepare(opts);
  const auto& o = cfg.optimizer;
  log << "optimizing at design transmittance " << o.design_eta() << " per arm, seed " << o.seed
      << '\n';
  const OptimizationResult res = optimize_decoy(cfg.sys, o);
  log << "best rate " << res.rate << " after " << res.evaluations << " evaluations\n";

  const fs::path decoy_path = opts.out_dir / "decoy.json";
  {
    const json doc = {{"format_version", "1.0"},
                      {"decoy", to_json(res.decoy)},
                      {"rate", res.rate},
                      {"design_eta", o.design_eta()},
                      {"seed", o.seed},
                      {"system", to_json(cfg.sys)}};
    auto out = open_output(decoy_path);
    out << doc.dump(2) << '\n';
  }
  write_manifest(opts, "optimize", cfg,
                 json::array({{{"path", decoy_path.filename().string()}, {"kind", "decoy"}}}),
                 {{"evaluations", res.evaluations}, {"best_history", res.best_history}}, start);
  return kExitOk;
}

int cmd_point_sweep(const CommandOptions& opts, std::ostream& log) {
  const auto start = Clock::now();
  const RunConfig cfg = prepare(opts);
  const double ea = cfg.point.eta_a, eb = cfg.point.eta_b;
  const auto& search = cfg.search;
  if (outside_model_validity(ea, eb, cfg.sys, cfg.decoy)) {
    log << "warning: eta * eta_d * intensity > 0.5, the model loses accuracy here\n";
  }

  const fs::path path = opts.out_dir / "point_sweep.csv";
  auto out = open_output(path);
  out << "# format_version=1.0\n";
  out << "attenuation_db,rate,y11_lower,e11_upper,e11_estimate\n";
  for (std::size_t k = 0; k < search.candidate_count(); ++k) {
    const double a = search.candidate(k);
    const auto p = apply_attenuation(ea, eb, a, search.min_insertion_db);
    const auto counts = all_sifted_counts(p.eta_a, p.eta_b, cfg.sys, cfg.decoy);
    const auto r = secure_key_rate(counts, cfg.sys, cfg.decoy);
    const auto est = decoy_estimates(counts, cfg.decoy);
    out << format_double(a) << ',' << format_double(r.rate) << ',' << format_double(r.y11_lower)
        << ',' << format_double(r.e11_upper) << ',' << format_double(est.e11) << '\n';
  }
  out.close();
  const auto best = optimal_attenuation(ea, eb, cfg.sys, cfg.decoy, search);
  log << "optimal attenuation " << best.attenuation_db << " dB, rate " << best.rate << '\n';

  write_manifest(opts, "point_sweep", cfg,
                 json::array({{{"path", path.filename().string()}, {"kind", "point_sweep"}}}),
                 {{"optimal_attenuation_db", best.attenuation_db}, {"optimal_rate", best.rate}},
                 start);
  return kExitOk;
}

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ValidationError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ArtifactMismatch& e) {
    err << "artifact error: " << e.what() << '\n';
    return kExitArtifact;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace mdiqkd
