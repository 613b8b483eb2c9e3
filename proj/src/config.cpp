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


#include "mdiqkd/config.hpp"

#include <fstream>
#include <initializer_list>

#include "mdiqkd/errors.hpp"
#include "mdiqkd/table_io.hpp"

namespace mdiqkd {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed) known = known || item.key() == k;
    if (!known) throw ConfigError(where + ": unknown key '" + item.key() + "'");
  }
}

fs::path resolve(const fs::path& p, const fs::path& base) {
  return p.is_absolute() || base.empty() ? p : base / p;
}

DecoyVector vector_from_json(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 6) {
    throw ConfigError(std::string("optimizer.") + where + ": expected 6 numbers");
  }
  DecoyVector v;
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = j[k].get<double>();
  return v;
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace

void RunConfig::validate() const {
  sys.validate();
  decoy.validate();
  search.validate();
  if (!(grid_step > 0.0 && grid_step <= 1.0)) throw ValidationError("grid.step must lie in (0, 1]");
  for (double s2 : sweep.sigma2) ChannelModel{0.5, s2}.validate();
  for (double db : sweep.loss_db) {
    if (!(db >= 0.0)) throw ValidationError("sweep.loss_db entries must be >= 0");
  }
  for (double eta : {point.eta_a, point.eta_b}) {
    if (!(eta > 0.0 && eta <= 1.0)) throw ValidationError("point: transmittances must lie in (0, 1]");
  }
}

json RunConfig::snapshot() const {
  json tables = json::array();
  for (const auto& t : sweep.tables) tables.push_back(t.string());
  const auto& b = optimizer.bounds;
  return {{"system", to_json(sys)},
          {"decoy", to_json(decoy)},
          {"search", to_json(search)},
          {"grid", {{"step", grid_step}}},
          {"table", {{"output", table_output.string()}}},
          {"sweep",
           {{"sigma2", sweep.sigma2},
            {"loss_db", sweep.loss_db},
            {"baseline", sweep.baseline},
            {"tables", tables}}},
          {"point", {{"eta_a", point.eta_a}, {"eta_b", point.eta_b}}},
          {"optimizer",
           {{"seed", optimizer.seed},
            {"population_size", optimizer.population_size},
            {"generations", optimizer.generations},
            {"design_eta0", optimizer.design_eta0},
            {"extra_loss_db", optimizer.extra_loss_db},
            {"lower", b.lower},
            {"upper", b.upper}}}};
}

RunConfig parse_config(const json& doc, const fs::path& base_dir) {
  RunConfig cfg;
  try {
    check_keys(doc,
               {"system", "decoy", "decoy_file", "search", "grid", "table", "sweep", "point",
                "optimizer"},
               "config");
    if (doc.contains("system")) {
      check_keys(doc["system"], {"eta_d", "e_dz", "e_dx", "y0", "f_ec", "n_pulses", "gamma"},
                 "system");
      cfg.sys = system_from_json(doc["system"]);
    }
    if (doc.contains("decoy")) {
      check_keys(doc["decoy"],
                 {"s", "mu", "nu", "s_a", "s_b", "mu_a", "mu_b", "nu_a", "nu_b", "p_s", "p_mu",
                  "p_nu"},
                 "decoy");
      cfg.decoy = decoy_from_json(doc["decoy"]);
    }
    if (doc.contains("decoy_file")) {
      cfg.decoy = load_decoy_file(resolve(doc["decoy_file"].get<std::string>(), base_dir));
    }
    if (doc.contains("search")) {
      check_keys(doc["search"], {"step_db", "max_db", "min_insertion_db"}, "search");
      cfg.search = search_from_json(doc["search"]);
    }
    if (doc.contains("grid")) {
      check_keys(doc["grid"], {"step"}, "grid");
      cfg.grid_step = doc["grid"].value("step", cfg.grid_step);
    }
    if (doc.contains("table")) {
      check_keys(doc["table"], {"output"}, "table");
      cfg.table_output = doc["table"].value("output", cfg.table_output.string());
    }
    if (doc.contains("sweep")) {
      const json& s = doc["sweep"];
      check_keys(s, {"sigma2", "loss_db", "baseline", "tables"}, "sweep");
      cfg.sweep.sigma2 = s.value("sigma2", cfg.sweep.sigma2);
      cfg.sweep.loss_db = s.value("loss_db", cfg.sweep.loss_db);
      cfg.sweep.baseline = s.value("baseline", cfg.sweep.baseline);
      for (const auto& t : s.value("tables", std::vector<std::string>{})) {
        cfg.sweep.tables.push_back(resolve(t, base_dir));
      }
    }
    if (doc.contains("point")) {
      check_keys(doc["point"], {"eta_a", "eta_b"}, "point");
      cfg.point.eta_a = doc["point"].value("eta_a", cfg.point.eta_a);
      cfg.point.eta_b = doc["point"].value("eta_b", cfg.point.eta_b);
    }
    if (doc.contains("optimizer")) {
      const json& o = doc["optimizer"];
      check_keys(o,
                 {"seed", "population_size", "generations", "design_eta0", "extra_loss_db",
                  "lower", "upper"},
                 "optimizer");
      auto& opt = cfg.optimizer;
      opt.seed = o.value("seed", opt.seed);
      opt.population_size = o.value("population_size", opt.population_size);
      opt.generations = o.value("generations", opt.generations);
      opt.design_eta0 = o.value("design_eta0", opt.design_eta0);
      opt.extra_loss_db = o.value("extra_loss_db", opt.extra_loss_db);
      if (o.contains("lower")) opt.bounds.lower = vector_from_json(o["lower"], "lower");
      if (o.contains("upper")) opt.bounds.upper = vector_from_json(o["upper"], "upper");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const fs::path& path) {
  return parse_config(read_json(path), path.parent_path());
}

DecoyParams load_decoy_file(const fs::path& path) {
  const json doc = read_json(path);
  try {
    DecoyParams d = decoy_from_json(doc.at("decoy"));
    d.validate();
    return d;
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace mdiqkd
