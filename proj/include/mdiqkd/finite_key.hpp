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

// Decoy-state parameter estimation with gamma-sigma statistical bounds and
// the resulting finite secret key rate per pulse.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "mdiqkd/errors.hpp"
#include "mdiqkd/noise_model.hpp"

namespace mdiqkd {

template <typename Scalar>
struct BoundedGain {
  Scalar central{0};
  Scalar lower{0};
  Scalar upper{0};
};

/// Bounded gains (or bounded error gains) for all nine X-basis pairs.
template <typename Scalar>
using PairBounds = std::array<BoundedGain<Scalar>, 9>;

template <typename Scalar>
struct KeyRateResult {
  Scalar rate{0};       // secret bits per pulse, >= 0
  Scalar y11_lower{0};  // single-photon-pair yield, lower bound
  Scalar e11_upper{1};  // single-photon-pair phase error, upper bound
  Scalar q_z{0};        // Z-basis signal gain
  Scalar e_z{0};        // Z-basis error rate
};

template <typename Scalar>
struct DecoyCombinations {
  Scalar q_m1{0};  // lower combination built from the nu pairs
  Scalar q_m2{0};  // upper combination built from the mu pairs
};

/// Estimates taken from central values only (no statistical allowance).
template <typename Scalar>
struct DecoyEstimate {
  Scalar y11{0};
  Scalar e11{0};
};

/// Binary Shannon entropy with H2(0) = H2(1) = 0.
template <typename Scalar>
Scalar binary_entropy(Scalar x) {
  using std::log2;
  if (!(x > Scalar(0)) || !(x < Scalar(1))) return Scalar(0);
  return -x * log2(x) - (Scalar(1) - x) * log2(Scalar(1) - x);
}

/// gain +/- gamma * sqrt(gain / (N p_i p_j)); the lower side is clamped at 0.
template <typename Scalar>
BoundedGain<Scalar> apply_bounds(Scalar gain, double n_pulses, double p_i, double p_j,
                                 double gamma) {
  using std::sqrt;
  if (!(gain >= Scalar(0))) throw DomainError("apply_bounds: gain must be >= 0");
  const double samples = n_pulses * (p_i * p_j);
  if (!(samples > 0.0)) {
    throw DegenerateStatistics("apply_bounds: zero effective sample size N * p_i * p_j");
  }
  const Scalar half = Scalar(gamma) * sqrt(gain / Scalar(samples));
  return {gain, std::max(gain - half, Scalar(0)), gain + half};
}

namespace detail {

template <typename Scalar>
PairBounds<Scalar> bound_pairs(const SiftedCounts<Scalar>& counts, const SystemParams& sys,
                               const DecoyParams& decoy, bool errors) {
  PairBounds<Scalar> out;
  for (Intensity i : kDecoyIntensities) {
    for (Intensity j : kDecoyIntensities) {
      const auto& g = counts.x_at(i, j);
      out[pair_index(i, j)] =
          apply_bounds(errors ? g.m : g.n, sys.n_pulses, send_probability(decoy, i),
                       send_probability(decoy, j), sys.gamma);
    }
  }
  return out;
}

template <typename Scalar>
PairBounds<Scalar> central_pairs(const SiftedCounts<Scalar>& counts, bool errors) {
  PairBounds<Scalar> out;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const Scalar v = errors ? counts.x[k].m : counts.x[k].n;
    out[k] = {v, v, v};
  }
  return out;
}

template <typename Scalar>
const BoundedGain<Scalar>& at(const PairBounds<Scalar>& b, Intensity i, Intensity j) {
  return b[pair_index(i, j)];
}

}  // namespace detail

/// Bounded X-basis gains Q for every pair, with N and send probabilities attached.
template <typename Scalar>
PairBounds<Scalar> bounded_gains(const SiftedCounts<Scalar>& counts, const SystemParams& sys,
                                 const DecoyParams& decoy) {
  return detail::bound_pairs(counts, sys, decoy, false);
}

/// Bounded X-basis error gains T for every pair.
template <typename Scalar>
PairBounds<Scalar> bounded_errors(const SiftedCounts<Scalar>& counts, const SystemParams& sys,
                                  const DecoyParams& decoy) {
  return detail::bound_pairs(counts, sys, decoy, true);
}

/// The two vacuum-subtracted combinations feeding the yield bound:
///   Q_M1 = e^(nuA+nuB) Q_lo(nu,nu) - e^nuA Q_hi(nu,om) - e^nuB Q_hi(om,nu) + Q_lo(om,om)
///   Q_M2 = e^(muA+muB) Q_hi(mu,mu) - e^muA Q_lo(mu,om) - e^muB Q_lo(om,mu) + Q_lo(om,om)
/// Both are clamped at 0.
template <typename Scalar>
DecoyCombinations<Scalar> decoy_combinations(const PairBounds<Scalar>& q,
                                             const DecoyParams& decoy) {
  using std::exp;
  using detail::at;
  constexpr auto mu = Intensity::mu;
  constexpr auto nu = Intensity::nu;
  constexpr auto om = Intensity::omega;
  const Scalar nua = Scalar(decoy.nu_a), nub = Scalar(decoy.nu_b);
  const Scalar mua = Scalar(decoy.mu_a), mub = Scalar(decoy.mu_b);
  const Scalar m1 = exp(nua + nub) * at(q, nu, nu).lower -
                    (exp(nua) * at(q, nu, om).upper + exp(nub) * at(q, om, nu).upper) +
                    at(q, om, om).lower;
  const Scalar m2 = exp(mua + mub) * at(q, mu, mu).upper -
                    (exp(mua) * at(q, mu, om).lower + exp(mub) * at(q, om, mu).lower) +
                    at(q, om, om).lower;
  return {std::max(m1, Scalar(0)), std::max(m2, Scalar(0))};
}

/// Lower bound on the single-photon-pair yield,
///   Y11 >= (muA/(nuA nuB) Q_M1 - nuA/(muA muB) Q_M2) / (muA - nuA),
/// clamped at 0.
template <typename Scalar>
Scalar y11_lower_bound(const PairBounds<Scalar>& q, const DecoyParams& decoy) {
  if (!(decoy.mu_a != decoy.nu_a)) {
    throw DegenerateStatistics("y11_lower_bound: decoy intensities mu and nu coincide");
  }
  const auto c = decoy_combinations(q, decoy);
  const Scalar mua = Scalar(decoy.mu_a), mub = Scalar(decoy.mu_b);
  const Scalar nua = Scalar(decoy.nu_a), nub = Scalar(decoy.nu_b);
  const Scalar y = (mua / (nua * nub) * c.q_m1 - nua / (mua * mub) * c.q_m2) / (mua - nua);
  return std::max(y, Scalar(0));
}

/// Upper bound on the single-photon-pair X-basis error rate, clamped to [0, 1].
template <typename Scalar>
Scalar e11_upper_bound(const PairBounds<Scalar>& t, Scalar y11_lower, const DecoyParams& decoy) {
  using std::exp;
  using detail::at;
  if (!(y11_lower > Scalar(0))) {
    throw DomainError("e11_upper_bound: requires a positive yield bound");
  }
  constexpr auto nu = Intensity::nu;
  constexpr auto om = Intensity::omega;
  const Scalar nua = Scalar(decoy.nu_a), nub = Scalar(decoy.nu_b);
  const Scalar num = exp(nua + nub) * at(t, nu, nu).upper -
                     (exp(nua) * at(t, nu, om).lower + exp(nub) * at(t, om, nu).lower) +
                     at(t, om, om).upper;
  const Scalar e = num / (nua * nub * y11_lower);
  return std::clamp(e, Scalar(0), Scalar(1));
}

/// Probability that both parties send single photons with their signal state.
template <typename Scalar>
Scalar single_photon_pair_probability(const DecoyParams& decoy) {
  using std::exp;
  const Scalar sa = Scalar(decoy.s_a), sb = Scalar(decoy.s_b);
  return Scalar(decoy.p_s) * Scalar(decoy.p_s) * (sa * sb) * exp(-(sa + sb));
}

namespace detail {

template <typename Scalar>
KeyRateResult<Scalar> key_rate_from_bounds(const SiftedCounts<Scalar>& counts,
                                           const PairBounds<Scalar>& q,
                                           const PairBounds<Scalar>& t, const SystemParams& sys,
                                           const DecoyParams& decoy) {
  using std::exp;
  KeyRateResult<Scalar> r;
  r.q_z = counts.z.n;
  r.e_z = counts.z.n > Scalar(0) ? counts.z.m / counts.z.n : Scalar(0);
  r.y11_lower = y11_lower_bound(q, decoy);
  if (!(r.y11_lower > Scalar(0))) {
    r.e11_upper = Scalar(1);
    r.rate = Scalar(0);
    return r;
  }
  r.e11_upper = e11_upper_bound(t, r.y11_lower, decoy);
  // A phase-error bound at or above 1/2 leaves nothing to distil.
  const Scalar privacy = Scalar(1) - binary_entropy(std::min(r.e11_upper, Scalar(0.5)));
  const Scalar sa = Scalar(decoy.s_a), sb = Scalar(decoy.s_b);
  const Scalar ps = Scalar(decoy.p_s);
  const Scalar rate =
      (ps * ps) * ((sa * sb) * exp(-(sa + sb)) * r.y11_lower * privacy -
                   Scalar(sys.f_ec) * r.q_z * binary_entropy(r.e_z));
  r.rate = std::max(rate, Scalar(0));
  return r;
}

}  // namespace detail

/// Finite secret key rate per pulse,
///   R = Ps^2 (sA sB e^-(sA+sB) Y11_lo [1 - H2(e11_hi)] - f_EC Q_Z H2(E_Z)),
/// clamped at 0. Short-circuits to 0 when the yield bound is not positive.
template <typename Scalar>
KeyRateResult<Scalar> secure_key_rate(const SiftedCounts<Scalar>& counts,
                                      const SystemParams& sys, const DecoyParams& decoy) {
  sys.validate();
  decoy.validate();
  return detail::key_rate_from_bounds(counts, bounded_gains(counts, sys, decoy),
                                      bounded_errors(counts, sys, decoy), sys, decoy);
}

/// Decoy-state estimates of Y11 and e11 from central gains (the gamma = 0
/// limit of the bound chain). e11 is clamped to [0, 1]; it is 1 when the
/// yield estimate vanishes.
template <typename Scalar>
DecoyEstimate<Scalar> decoy_estimates(const SiftedCounts<Scalar>& counts,
                                      const DecoyParams& decoy) {
  decoy.validate();
  DecoyEstimate<Scalar> e;
  e.y11 = y11_lower_bound(detail::central_pairs(counts, false), decoy);
  e.e11 = e.y11 > Scalar(0) ? e11_upper_bound(detail::central_pairs(counts, true), e.y11, decoy)
                            : Scalar(1);
  return e;
}

/// Asymptotic rate P11 Y11 [1 - H2(e11)] - Ps^2 f_EC Q_Z H2(E_Z), with
/// P11 = Ps^2 sA sB e^-(sA+sB); clamped at 0.
template <typename Scalar>
Scalar asymptotic_key_rate(Scalar y11, Scalar e11, Scalar q_z, Scalar e_z,
                           const SystemParams& sys, const DecoyParams& decoy) {
  const Scalar ps = Scalar(decoy.p_s);
  const Scalar privacy = Scalar(1) - binary_entropy(std::min(e11, Scalar(0.5)));
  const Scalar rate = single_photon_pair_probability<Scalar>(decoy) * y11 * privacy -
                      (ps * ps) * Scalar(sys.f_ec) * q_z * binary_entropy(e_z);
  return std::max(rate, Scalar(0));
}

/// Convenience: central decoy estimates fed through asymptotic_key_rate.
template <typename Scalar>
Scalar asymptotic_key_rate(const SiftedCounts<Scalar>& counts, const SystemParams& sys,
                           const DecoyParams& decoy) {
  const auto est = decoy_estimates(counts, decoy);
  const Scalar e_z = counts.z.n > Scalar(0) ? counts.z.m / counts.z.n : Scalar(0);
  return asymptotic_key_rate(est.y11, est.e11, counts.z.n, e_z, sys, decoy);
}

}  // namespace mdiqkd
