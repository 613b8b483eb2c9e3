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

#include "mdiqkd/noise_model.hpp"

#include <algorithm>
#include <initializer_list>
#include <string>

namespace mdiqkd {

namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

}  // namespace

void SystemParams::validate() const {
  require(eta_d > 0.0 && eta_d <= 1.0, "SystemParams: eta_d must lie in (0, 1]");
  require(is_probability(e_dz), "SystemParams: e_dz must be a probability");
  require(is_probability(e_dx), "SystemParams: e_dx must be a probability");
  require(is_probability(y0), "SystemParams: y0 must be a probability");
  require(f_ec >= 1.0, "SystemParams: f_ec must be >= 1");
  require(n_pulses >= 1.0, "SystemParams: n_pulses must be >= 1");
  require(gamma >= 0.0, "SystemParams: gamma must be >= 0");
}

SystemParams SystemParams::reference(double n_pulses) {
  SystemParams p;
  p.n_pulses = n_pulses;
  return p;
}

void DecoyParams::validate_basic() const {
  for (double k : {s_a, s_b, mu_a, mu_b, nu_a, nu_b}) {
    require(k >= 0.0 && std::isfinite(k), "DecoyParams: intensities must be finite and >= 0");
  }
  require(is_probability(p_s) && is_probability(p_mu) && is_probability(p_nu),
          "DecoyParams: send probabilities must lie in [0, 1]");
  // Small slack so probabilities read back from 17-digit text still pass.
  require(p_s + p_mu + p_nu <= 1.0 + 1e-12, "DecoyParams: p_s + p_mu + p_nu must be <= 1");
}

void DecoyParams::validate() const {
  validate_basic();
  require(s_a > mu_a && mu_a > nu_a && nu_a > 0.0,
          "DecoyParams: Alice needs s > mu > nu > 0");
  require(s_b > mu_b && mu_b > nu_b && nu_b > 0.0, "DecoyParams: Bob needs s > mu > nu > 0");
}

DecoyParams DecoyParams::symmetric(double s, double mu, double nu, double p_s, double p_mu,
                                   double p_nu) {
  DecoyParams d;
  d.s_a = d.s_b = s;
  d.mu_a = d.mu_b = mu;
  d.nu_a = d.nu_b = nu;
  d.p_s = p_s;
  d.p_mu = p_mu;
  d.p_nu = p_nu;
  return d;
}

bool outside_model_validity(double eta_a, double eta_b, const SystemParams& sys,
                            const DecoyParams& decoy) {
  const double ka = std::max({decoy.s_a, decoy.mu_a, decoy.nu_a});
  const double kb = std::max({decoy.s_b, decoy.mu_b, decoy.nu_b});
  return eta_a * sys.eta_d * ka > 0.5 || eta_b * sys.eta_d * kb > 0.5;
}

}  // namespace mdiqkd
