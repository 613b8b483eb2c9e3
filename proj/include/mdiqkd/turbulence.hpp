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

#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Core>

#include "mdiqkd/errors.hpp"

namespace mdiqkd {

/// Lognormal description of one free-space arm: mean transmittance eta0
/// and log-irradiance variance sigma2 (weak-to-moderate turbulence).
struct ChannelModel {
  double eta0 = 0.1;
  double sigma2 = 0.1;

  /// Largest sigma2 for which the lognormal model is considered valid.
  static constexpr double kMaxSigma2 = 1.2;

  void validate() const;

  /// Channel with mean loss `loss_db` (eta0 = 10^(-loss/10)).
  static ChannelModel from_loss_db(double loss_db, double sigma2);
};

/// Uniform midpoint grid over transmittance. Point i sits at
/// first + i * step; every point lies in (0, 1].
class TransmittanceGrid {
 public:
  TransmittanceGrid() = default;
  TransmittanceGrid(double first, double step, Eigen::Index count);

  /// Midpoints of the `1/step` cells partitioning (0, 1]; the first point
  /// is step/2 so eta = 0 is never evaluated.
  static TransmittanceGrid unit_interval(double step);

  /// One cell of width `step` centred on `eta`.
  static TransmittanceGrid single(double eta, double step);

  const Eigen::VectorXd& points() const { return points_; }
  double first() const { return first_; }
  double step() const { return step_; }
  Eigen::Index size() const { return points_.size(); }
  bool empty() const { return points_.size() == 0; }
  double operator[](Eigen::Index i) const { return points_[i]; }

  /// Index of the nearest point. Out-of-range values clamp to the edge;
  /// exact midpoints resolve to the lower index.
  Eigen::Index nearest(double eta) const;

  friend bool operator==(const TransmittanceGrid& a, const TransmittanceGrid& b) {
    return a.first_ == b.first_ && a.step_ == b.step_ && a.size() == b.size();
  }

 private:
  double first_ = 0.0;
  double step_ = 0.0;
  Eigen::VectorXd points_;
};

/// Lognormal probability density of the transmittance coefficient,
///   P(eta) = exp(-(ln(eta/eta0) + sigma2/2)^2 / (2 sigma2)) / (sqrt(2 pi) sigma eta).
/// The location ln(eta0) - sigma2/2 makes the untruncated mean exactly eta0.
template <typename Scalar>
Scalar pdtc_density(Scalar eta, const ChannelModel& channel) {
  using std::exp;
  using std::log;
  using std::sqrt;
  if (!(eta > Scalar(0))) throw DomainError("pdtc_density: transmittance must be > 0");
  channel.validate();
  const Scalar s2 = Scalar(channel.sigma2);
  const Scalar sigma = sqrt(s2);
  const Scalar z = log(eta / Scalar(channel.eta0)) + s2 / Scalar(2);
  const Scalar norm = sqrt(Scalar(2) * std::numbers::pi_v<Scalar>) * sigma * eta;
  return exp(-(z * z) / (Scalar(2) * s2)) / norm;
}

/// Joint density of two independent arms.
template <typename Scalar>
Scalar joint_pdtc(Scalar eta_a, Scalar eta_b, const ChannelModel& channel_a,
                  const ChannelModel& channel_b) {
  return pdtc_density(eta_a, channel_a) * pdtc_density(eta_b, channel_b);
}

/// Probability masses of a channel on a grid.
struct DiscretePdtc {
  Eigen::VectorXd eta;
  Eigen::VectorXd mass;  // sums to 1
  // 1 - sum(P(eta_i) * step) before renormalization; dominated by the
  // lognormal tail above eta = 1.
  double tail_mass = 0.0;
};

/// Midpoint-rule masses P(eta_i) * step, renormalized over the grid.
DiscretePdtc discretize(const ChannelModel& channel, const TransmittanceGrid& grid);

}  // namespace mdiqkd
