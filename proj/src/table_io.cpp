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

#include "mdiqkd/table_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mdiqkd/errors.hpp"

namespace mdiqkd {

namespace {

using nlohmann::json;

double parse_double(const std::string& field, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size()) {
    throw ArtifactMismatch(std::string("malformed number in ") + what + ": '" + field + "'");
  }
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

int major_version(const std::string& version) {
  const auto dot = version.find('.');
  try {
    return std::stoi(version.substr(0, dot));
  } catch (const std::exception&) {
    throw ArtifactMismatch("unparseable format version '" + version + "'");
  }
}

json grid_json(const TransmittanceGrid& g) {
  return {{"first", g.first()}, {"step", g.step()}, {"count", g.size()}};
}

TransmittanceGrid grid_from_json(const json& j) {
  return TransmittanceGrid(j.at("first").get<double>(), j.at("step").get<double>(),
                           j.at("count").get<Eigen::Index>());
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const SystemParams& s) {
  return {{"eta_d", s.eta_d}, {"e_dz", s.e_dz},         {"e_dx", s.e_dx}, {"y0", s.y0},
          {"f_ec", s.f_ec},   {"n_pulses", s.n_pulses}, {"gamma", s.gamma}};
}

json to_json(const DecoyParams& d) {
  return {{"s_a", d.s_a},   {"s_b", d.s_b},   {"mu_a", d.mu_a}, {"mu_b", d.mu_b},
          {"nu_a", d.nu_a}, {"nu_b", d.nu_b}, {"p_s", d.p_s},   {"p_mu", d.p_mu},
          {"p_nu", d.p_nu}};
}

json to_json(const SearchSettings& s) {
  return {{"step_db", s.step_db}, {"max_db", s.max_db}, {"min_insertion_db", s.min_insertion_db}};
}

SystemParams system_from_json(const json& j) {
  SystemParams s;
  s.eta_d = j.value("eta_d", s.eta_d);
  s.e_dz = j.value("e_dz", s.e_dz);
  s.e_dx = j.value("e_dx", s.e_dx);
  s.y0 = j.value("y0", s.y0);
  s.f_ec = j.value("f_ec", s.f_ec);
  s.n_pulses = j.value("n_pulses", s.n_pulses);
  s.gamma = j.value("gamma", s.gamma);
  return s;
}

DecoyParams decoy_from_json(const json& j) {
  DecoyParams d;
  // Symmetric shorthand: "s", "mu", "nu" set both parties.
  if (j.contains("s")) d.s_a = d.s_b = j.at("s").get<double>();
  if (j.contains("mu")) d.mu_a = d.mu_b = j.at("mu").get<double>();
  if (j.contains("nu")) d.nu_a = d.nu_b = j.at("nu").get<double>();
  d.s_a = j.value("s_a", d.s_a);
  d.s_b = j.value("s_b", d.s_b);
  d.mu_a = j.value("mu_a", d.mu_a);
  d.mu_b = j.value("mu_b", d.mu_b);
  d.nu_a = j.value("nu_a", d.nu_a);
  d.nu_b = j.value("nu_b", d.nu_b);
  d.p_s = j.value("p_s", d.p_s);
  d.p_mu = j.value("p_mu", d.p_mu);
  d.p_nu = j.value("p_nu", d.p_nu);
  return d;
}

SearchSettings search_from_json(const json& j) {
  SearchSettings s;
  s.step_db = j.value("step_db", s.step_db);
  s.max_db = j.value("max_db", s.max_db);
  s.min_insertion_db = j.value("min_insertion_db", s.min_insertion_db);
  return s;
}

void write_table(const AttenuationTable& table, std::ostream& out) {
  const json header = {{"format", kTableFormat},
                       {"format_version", "1.0"},
                       {"grid_a", grid_json(table.grid_a)},
                       {"grid_b", grid_json(table.grid_b)},
                       {"search", to_json(table.search)},
                       {"system", to_json(table.sys)},
                       {"decoy", to_json(table.decoy)},
                       {"fingerprint", table.fingerprint}};
  out << "# " << header.dump() << '\n';
  out << "etaA,etaB,attenuation_db\n";
  for (Eigen::Index i = 0; i < table.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < table.values.cols(); ++j) {
      out << format_double(table.grid_a[i]) << ',' << format_double(table.grid_b[j]) << ','
          << format_double(table.values(i, j)) << '\n';
    }
  }
}

void save_table(const AttenuationTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArtifactMismatch("cannot write table to " + path.string());
  write_table(table, out);
  if (!out) throw ArtifactMismatch("failed writing table to " + path.string());
}

AttenuationTable read_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw ArtifactMismatch("attenuation table: missing JSON header line");
  }
  json header;
  try {
    header = json::parse(line.substr(2));
  } catch (const json::exception& e) {
    throw ArtifactMismatch(std::string("attenuation table: bad header: ") + e.what());
  }
  if (header.value("format", "") != kTableFormat) {
    throw ArtifactMismatch("attenuation table: unknown format");
  }
  if (major_version(header.value("format_version", "")) != kTableFormatMajor) {
    throw ArtifactMismatch("attenuation table: unsupported format version " +
                           header.value("format_version", ""));
  }

  AttenuationTable table;
  try {
    table.grid_a = grid_from_json(header.at("grid_a"));
    table.grid_b = grid_from_json(header.at("grid_b"));
    table.search = search_from_json(header.at("search"));
    table.sys = system_from_json(header.at("system"));
    table.decoy = decoy_from_json(header.at("decoy"));
    table.fingerprint = header.at("fingerprint").get<std::string>();
  } catch (const json::exception& e) {
    throw ArtifactMismatch(std::string("attenuation table: incomplete header: ") + e.what());
  } catch (const ValidationError& e) {
    throw ArtifactMismatch(std::string("attenuation table: invalid grid: ") + e.what());
  }

  if (!std::getline(in, line) || line != "etaA,etaB,attenuation_db") {
    throw ArtifactMismatch("attenuation table: unexpected column header");
  }
  const Eigen::Index na = table.grid_a.size(), nb = table.grid_b.size();
  table.values.resize(na, nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < nb; ++j) {
      if (!std::getline(in, line)) throw ArtifactMismatch("attenuation table: truncated");
      const auto cells = split_csv(line);
      if (cells.size() != 3) throw ArtifactMismatch("attenuation table: expected 3 columns");
      if (parse_double(cells[0], "etaA") != table.grid_a[i] ||
          parse_double(cells[1], "etaB") != table.grid_b[j]) {
        throw ArtifactMismatch("attenuation table: row does not match grid at line " +
                               std::to_string(3 + i * nb + j));
      }
      table.values(i, j) = parse_double(cells[2], "attenuation_db");
    }
  }
  if (std::getline(in, line) && !line.empty()) {
    throw ArtifactMismatch("attenuation table: trailing rows");
  }
  if (table.fingerprint != parameter_fingerprint(table.sys, table.decoy, table.search)) {
    throw ArtifactMismatch("attenuation table: fingerprint does not match its own header");
  }
  return table;
}

AttenuationTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArtifactMismatch("cannot open attenuation table " + path.string());
  return read_table(in);
}

void write_sweep(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "# format_version=1.0\n";
  out << "sigma2,eta0_db,mode,rate\n";
  for (const auto& r : rows) {
    out << format_double(r.sigma2) << ',' << format_double(r.eta0_db) << ',' << r.mode << ','
        << format_double(r.rate) << '\n';
  }
}

std::vector<SweepRow> read_sweep(std::istream& in) {
  std::string line;
  const std::string tag = "# format_version=";
  if (!std::getline(in, line) || line.rfind(tag, 0) != 0) {
    throw ArtifactMismatch("sweep: missing format_version line");
  }
  if (major_version(line.substr(tag.size())) != kSweepFormatMajor) {
    throw ArtifactMismatch("sweep: unsupported format version " + line.substr(tag.size()));
  }
  if (!std::getline(in, line) || line != "sigma2,eta0_db,mode,rate") {
    throw ArtifactMismatch("sweep: unexpected column header");
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c = split_csv(line);
    if (c.size() != 4) throw ArtifactMismatch("sweep: expected 4 columns");
    rows.push_back({parse_double(c[0], "sigma2"), parse_double(c[1], "eta0_db"), c[2],
                    parse_double(c[3], "rate")});
  }
  return rows;
}

}  // namespace mdiqkd
