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

#include "mdiqkd/attenuation_policy.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include "mdiqkd/parallel.hpp"

namespace mdiqkd {

namespace {

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Static rate at an already-attenuated pair; parameters validated by caller.
double static_rate(const TransmittancePair& p, const SystemParams& sys,
                   const DecoyParams& decoy) {
  const auto counts = detail::all_sifted_counts(p.eta_a, p.eta_b, sys, decoy);
  return detail::key_rate_from_bounds(counts, bounded_gains(counts, sys, decoy),
                                      bounded_errors(counts, sys, decoy), sys, decoy)
      .rate;
}

AttenuationChoice search_cell(double eta_a, double eta_b, const SystemParams& sys,
                              const DecoyParams& decoy, const SearchSettings& search) {
  AttenuationChoice best{search.candidate(0), -1.0, false};
  const std::size_t n = search.candidate_count();
  std::size_t best_k = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = search.candidate(k);
    const double r =
        static_rate(apply_attenuation(eta_a, eta_b, a, search.min_insertion_db), sys, decoy);
    if (r > best.rate) {
      best = {a, r, false};
      best_k = k;
    }
  }
  best.at_cap = n > 1 && best_k == n - 1 && best.rate > 0.0;
  return best;
}

}  // namespace

void SearchSettings::validate() const {
  if (!(step_db > 0.0)) throw ValidationError("SearchSettings: step_db must be positive");
  if (!(min_insertion_db >= 0.0)) {
    throw ValidationError("SearchSettings: min_insertion_db must be >= 0");
  }
  if (!(max_db >= min_insertion_db)) {
    throw ValidationError("SearchSettings: max_db must be >= min_insertion_db");
  }
}

std::size_t SearchSettings::candidate_count() const {
  return static_cast<std::size_t>(std::floor((max_db - min_insertion_db) / step_db + 1e-9)) + 1;
}

TransmittancePair apply_attenuation(double eta_a, double eta_b, double stronger_db,
                                    double min_insertion_db) {
  const double strong = db_to_transmission(stronger_db);
  const double floor = db_to_transmission(min_insertion_db);
  if (eta_a >= eta_b) return {eta_a * strong, eta_b * floor};
  return {eta_a * floor, eta_b * strong};
}

AttenuationChoice optimal_attenuation(double eta_a, double eta_b, const SystemParams& sys,
                                      const DecoyParams& decoy, const SearchSettings& search) {
  detail::check_transmittance(eta_a, eta_b);
  sys.validate();
  decoy.validate();
  search.validate();
  return search_cell(eta_a, eta_b, sys, decoy, search);
}

std::string parameter_fingerprint(const SystemParams& sys, const DecoyParams& decoy,
                                  const SearchSettings& search) {
  std::string text = "mdiqkd-params-v1";
  auto add = [&text](const char* key, double v) {
    text += ';';
    text += key;
    text += '=';
    text += g17(v);
  };
  add("eta_d", sys.eta_d);
  add("e_dz", sys.e_dz);
  add("e_dx", sys.e_dx);
  add("y0", sys.y0);
  add("f_ec", sys.f_ec);
  add("n_pulses", sys.n_pulses);
  add("gamma", sys.gamma);
  add("s_a", decoy.s_a);
  add("s_b", decoy.s_b);
  add("mu_a", decoy.mu_a);
  add("mu_b", decoy.mu_b);
  add("nu_a", decoy.nu_a);
  add("nu_b", decoy.nu_b);
  add("p_s", decoy.p_s);
  add("p_mu", decoy.p_mu);
  add("p_nu", decoy.p_nu);
  add("step_db", search.step_db);
  add("max_db", search.max_db);
  add("min_insertion_db", search.min_insertion_db);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(text)));
  return buf;
}

AttenuationTable build_table(const TransmittanceGrid& grid_a, const TransmittanceGrid& grid_b,
                             const SystemParams& sys, const DecoyParams& decoy,
                             const SearchSettings& search, unsigned threads) {
  if (grid_a.empty() || grid_b.empty()) throw ValidationError("build_table: empty grid");
  sys.validate();
  decoy.validate();
  search.validate();

  AttenuationTable table;
  table.grid_a = grid_a;
  table.grid_b = grid_b;
  table.search = search;
  table.sys = sys;
  table.decoy = decoy;
  table.fingerprint = parameter_fingerprint(sys, decoy, search);
  const Eigen::Index na = grid_a.size(), nb = grid_b.size();
  table.values.resize(na, nb);
  table.rate_static.resize(na, nb);
  table.rate_attenuated.resize(na, nb);

  std::vector<std::size_t> row_cap_hits(static_cast<std::size_t>(na), 0);
  parallel_for(static_cast<std::size_t>(na), threads, [&](std::size_t row) {
    const auto i = static_cast<Eigen::Index>(row);
    for (Eigen::Index j = 0; j < nb; ++j) {
      const double ea = grid_a[i], eb = grid_b[j];
      const auto choice = search_cell(ea, eb, sys, decoy, search);
      table.values(i, j) = choice.attenuation_db;
      table.rate_attenuated(i, j) = choice.rate;
      table.rate_static(i, j) = static_rate({ea, eb}, sys, decoy);
      if (choice.at_cap) ++row_cap_hits[row];
    }
  });
  for (std::size_t hits : row_cap_hits) table.cap_hits += hits;
  return table;
}

double query(const AttenuationTable& table, double eta_a, double eta_b) {
  if (table.empty()) throw ValidationError("query: attenuation table is empty");
  return table.values(table.grid_a.nearest(eta_a), table.grid_b.nearest(eta_b));
}

}  // namespace mdiqkd
