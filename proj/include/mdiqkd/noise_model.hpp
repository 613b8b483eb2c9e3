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

// Sifted-coincidence and error probabilities of a polarization-encoded
// MDI QKD link with weak coherent sources, per pulse pair and per
// intensity choice. Pulse count and send probabilities are not folded in
// here; the finite-key stage re-attaches them.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "mdiqkd/errors.hpp"

namespace mdiqkd {

struct SystemParams {
  double eta_d = 0.5;     // detector efficiency
  double e_dz = 0.003;    // Z-basis misalignment
  double e_dx = 0.03;     // X-basis misalignment
  double y0 = 7e-7;       // dark-count probability per pulse per detector
  double f_ec = 1.1;      // error-correction efficiency
  double n_pulses = 1e13;
  double gamma = 5.3;     // bound width in standard deviations

  void validate() const;

  /// Free-space link constants used throughout the reproductions.
  static SystemParams reference(double n_pulses = 1e13);
};

/// Four-intensity decoy settings {s, mu, nu, omega = 0}. Send probabilities
/// are shared by both parties; p_omega is whatever remains.
struct DecoyParams {
  double s_a = 0.45, s_b = 0.45;
  double mu_a = 0.2, mu_b = 0.2;
  double nu_a = 0.037, nu_b = 0.037;
  double p_s = 0.573, p_mu = 0.066, p_nu = 0.219;

  double p_omega() const { return 1.0 - p_s - p_mu - p_nu; }

  /// Nonnegative intensities and a valid probability split.
  void validate_basic() const;
  /// validate_basic plus s > mu > nu > omega = 0 for each party.
  void validate() const;

  static DecoyParams symmetric(double s, double mu, double nu, double p_s, double p_mu,
                               double p_nu);
};

/// Decoy (X-basis) intensity labels.
enum class Intensity : std::size_t { mu = 0, nu = 1, omega = 2 };

inline constexpr std::array<Intensity, 3> kDecoyIntensities{Intensity::mu, Intensity::nu,
                                                            Intensity::omega};

/// Row-major index of an (Alice, Bob) intensity pair.
constexpr std::size_t pair_index(Intensity a, Intensity b) {
  return 3 * static_cast<std::size_t>(a) + static_cast<std::size_t>(b);
}

inline double alice_intensity(const DecoyParams& d, Intensity i) {
  switch (i) {
    case Intensity::mu: return d.mu_a;
    case Intensity::nu: return d.nu_a;
    case Intensity::omega: break;
  }
  return 0.0;
}

inline double bob_intensity(const DecoyParams& d, Intensity i) {
  switch (i) {
    case Intensity::mu: return d.mu_b;
    case Intensity::nu: return d.nu_b;
    case Intensity::omega: break;
  }
  return 0.0;
}

inline double send_probability(const DecoyParams& d, Intensity i) {
  switch (i) {
    case Intensity::mu: return d.p_mu;
    case Intensity::nu: return d.p_nu;
    case Intensity::omega: break;
  }
  return d.p_omega();
}

/// Sifted probability n and error probability m for one basis/intensity pair.
template <typename Scalar>
struct Gain {
  Scalar n{0};
  Scalar m{0};

  Gain& operator+=(const Gain& o) {
    n += o.n;
    m += o.m;
    return *this;
  }
};

template <typename Scalar>
struct SiftedCounts {
  Gain<Scalar> z;                   // signal-signal, Z basis
  std::array<Gain<Scalar>, 9> x{};  // indexed by pair_index

  Gain<Scalar>& x_at(Intensity a, Intensity b) { return x[pair_index(a, b)]; }
  const Gain<Scalar>& x_at(Intensity a, Intensity b) const { return x[pair_index(a, b)]; }

  SiftedCounts& operator+=(const SiftedCounts& o) {
    z += o.z;
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += o.x[k];
    return *this;
  }

  template <typename Weight>
  SiftedCounts scaled(Weight w) const {
    SiftedCounts out = *this;
    out.z.n *= w;
    out.z.m *= w;
    for (auto& g : out.x) {
      g.n *= w;
      g.m *= w;
    }
    return out;
  }
};

template <typename Scalar>
struct ZTerms {
  Scalar n_z1;  // opposite polarizations, dark counts neglected
  Scalar n_z2;  // same polarization (errors)
};

template <typename Scalar>
struct XTerms {
  Scalar n_c1;  // psi-minus events
  Scalar n_w1;  // psi-plus events
};

namespace detail {

inline void check_transmittance(double eta_a, double eta_b) {
  if (!(eta_a >= 0.0 && eta_a <= 1.0 && eta_b >= 0.0 && eta_b <= 1.0)) {
    throw ValidationError("transmittances must lie in [0, 1]");
  }
}

// Unchecked kernels; the products are ordered so that exchanging the two
// parties (transmittance and intensity together) is bit-exact.
template <typename Scalar>
ZTerms<Scalar> z_terms(Scalar eta_a, Scalar eta_b, const SystemParams& sys, Scalar s_a,
                       Scalar s_b) {
  using std::exp;
  using std::expm1;
  const Scalar ed = Scalar(sys.e_dz);
  const Scalar a = eta_a * Scalar(sys.eta_d) * s_a;
  const Scalar b = eta_b * Scalar(sys.eta_d) * s_b;
  const Scalar click_a = -expm1(-a);
  const Scalar click_b = -expm1(-b);
  const Scalar n1 = Scalar(0.5) * (Scalar(1) - Scalar(2) * ed) * (click_a * click_b);
  const Scalar any_click = -expm1(-(Scalar(1) - ed) * (a + b));
  const Scalar n2 = Scalar(0.5) * any_click * ((ed * a + ed * b) + Scalar(2) * Scalar(sys.y0));
  return {n1, n2};
}

template <typename Scalar>
XTerms<Scalar> x_terms(Scalar eta_a, Scalar eta_b, const SystemParams& sys, Scalar k_a,
                       Scalar k_b) {
  using std::exp;
  const Scalar eta_d = Scalar(sys.eta_d);
  const Scalar ex = Scalar(sys.e_dx);
  const Scalar y0 = Scalar(sys.y0);
  const Scalar a = eta_a * eta_d * k_a;
  const Scalar b = eta_b * eta_d * k_b;
  const Scalar both = exp(-(a + b));
  // A single photon at the beam splitter: coincidence needs a dark count.
  const Scalar dark = a * exp(-a) * y0 + b * exp(-b) * y0;
  // One photon from each party.
  const Scalar one_each = (eta_a * eta_b) * (eta_d * eta_d) * (k_a * k_b) * both;
  // Two photons from one party, none from the other; both photons of the
  // sending party have to survive that party's channel.
  const Scalar ta = eta_a * k_a;
  const Scalar tb = eta_b * k_b;
  const Scalar two_one_side = (eta_d * eta_d) * both * ((ta * ta + tb * tb) / Scalar(2));
  const Scalar c = Scalar(0.5) * (dark + Scalar(0.5) * one_each * (Scalar(1) - Scalar(2) * ex) +
                                  Scalar(0.25) * two_one_side);
  const Scalar w = Scalar(0.5) * (dark + one_each * ex + Scalar(0.25) * two_one_side);
  return {c, w};
}

template <typename Scalar>
Gain<Scalar> x_gain(Scalar eta_a, Scalar eta_b, const SystemParams& sys, Scalar k_a,
                    Scalar k_b) {
  const auto t = x_terms(eta_a, eta_b, sys, k_a, k_b);
  return {Scalar(2) * (t.n_c1 + t.n_w1), Scalar(2) * t.n_w1};
}

template <typename Scalar>
SiftedCounts<Scalar> all_sifted_counts(Scalar eta_a, Scalar eta_b, const SystemParams& sys,
                                       const DecoyParams& decoy) {
  SiftedCounts<Scalar> out;
  const auto zt = z_terms(eta_a, eta_b, sys, Scalar(decoy.s_a), Scalar(decoy.s_b));
  out.z = {zt.n_z1 + zt.n_z2, zt.n_z2};
  for (Intensity i : kDecoyIntensities) {
    for (Intensity j : kDecoyIntensities) {
      out.x_at(i, j) = x_gain(eta_a, eta_b, sys, Scalar(alice_intensity(decoy, i)),
                              Scalar(bob_intensity(decoy, j)));
    }
  }
  return out;
}

}  // namespace detail

/// Z-basis closed forms n_z1, n_z2 for the signal intensities.
template <typename Scalar>
ZTerms<Scalar> z_terms(Scalar eta_a, Scalar eta_b, const SystemParams& sys,
                       const DecoyParams& decoy) {
  detail::check_transmittance(double(eta_a), double(eta_b));
  sys.validate();
  decoy.validate_basic();
  return detail::z_terms(eta_a, eta_b, sys, Scalar(decoy.s_a), Scalar(decoy.s_b));
}

/// Z-basis sifted probability n_z = n_z1 + n_z2 and error probability m_z = n_z2.
template <typename Scalar>
Gain<Scalar> z_counts(Scalar eta_a, Scalar eta_b, const SystemParams& sys,
                      const DecoyParams& decoy) {
  const auto t = z_terms(eta_a, eta_b, sys, decoy);
  return {t.n_z1 + t.n_z2, t.n_z2};
}

template <typename Scalar>
XTerms<Scalar> x_terms(Scalar eta_a, Scalar eta_b, const SystemParams& sys,
                       const DecoyParams& decoy, Intensity alice, Intensity bob) {
  detail::check_transmittance(double(eta_a), double(eta_b));
  sys.validate();
  decoy.validate_basic();
  return detail::x_terms(eta_a, eta_b, sys, Scalar(alice_intensity(decoy, alice)),
                         Scalar(bob_intensity(decoy, bob)));
}

/// X-basis sifted probability n_x = 2(n_c1 + n_w1) and errors m_x = 2 n_w1.
template <typename Scalar>
Gain<Scalar> x_counts(Scalar eta_a, Scalar eta_b, const SystemParams& sys,
                      const DecoyParams& decoy, Intensity alice, Intensity bob) {
  const auto t = x_terms(eta_a, eta_b, sys, decoy, alice, bob);
  return {Scalar(2) * (t.n_c1 + t.n_w1), Scalar(2) * t.n_w1};
}

/// Z basis plus all nine X-basis pairs in {mu, nu, omega}^2.
template <typename Scalar>
SiftedCounts<Scalar> all_sifted_counts(Scalar eta_a, Scalar eta_b, const SystemParams& sys,
                                       const DecoyParams& decoy) {
  detail::check_transmittance(double(eta_a), double(eta_b));
  sys.validate();
  decoy.validate_basic();
  return detail::all_sifted_counts(eta_a, eta_b, sys, decoy);
}

/// True where multi-photon truncation of the model becomes inaccurate
/// (mean detected photon number eta * eta_d * k above 0.5 on either arm).
bool outside_model_validity(double eta_a, double eta_b, const SystemParams& sys,
                            const DecoyParams& decoy);

}  // namespace mdiqkd
