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

#include "mdiqkd/turbulence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mdiqkd {

void ChannelModel::validate() const {
  if (!(eta0 > 0.0 && eta0 <= 1.0)) {
    throw ValidationError("ChannelModel: eta0 must lie in (0, 1], got " + std::to_string(eta0));
  }
  if (!(sigma2 > 0.0 && sigma2 <= kMaxSigma2)) {
    throw ValidationError("ChannelModel: sigma2 must lie in (0, 1.2], got " +
                          std::to_string(sigma2));
  }
}

ChannelModel ChannelModel::from_loss_db(double loss_db, double sigma2) {
  ChannelModel ch{std::pow(10.0, -loss_db / 10.0), sigma2};
  ch.validate();
  return ch;
}

TransmittanceGrid::TransmittanceGrid(double first, double step, Eigen::Index count)
    : first_(first), step_(step), points_(count) {
  if (count < 1) throw ValidationError("TransmittanceGrid: need at least one point");
  if (!(step > 0.0)) throw ValidationError("TransmittanceGrid: step must be positive");
  for (Eigen::Index i = 0; i < count; ++i) points_[i] = first + static_cast<double>(i) * step;
  if (!(points_[0] > 0.0)) throw ValidationError("TransmittanceGrid: points must be > 0");
  // Last point may exceed 1 by rounding only.
  if (points_[count - 1] > 1.0 + 1e-12) {
    throw ValidationError("TransmittanceGrid: points must be <= 1");
  }
}

TransmittanceGrid TransmittanceGrid::unit_interval(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw ValidationError("grid step must lie in (0, 1]");
  const double cells = 1.0 / step;
  const auto count = static_cast<Eigen::Index>(std::llround(cells));
  if (std::abs(cells - static_cast<double>(count)) > 1e-6 * cells) {
    throw ValidationError("grid step must divide 1 into a whole number of cells");
  }
  return TransmittanceGrid(0.5 * step, step, count);
}

TransmittanceGrid TransmittanceGrid::single(double eta, double step) {
  return TransmittanceGrid(eta, step, 1);
}

Eigen::Index TransmittanceGrid::nearest(double eta) const {
  if (empty()) throw ValidationError("TransmittanceGrid: empty grid");
  const double x = (eta - first_) / step_;
  if (!(x > 0.0)) return 0;  // also catches NaN
  const auto idx = static_cast<Eigen::Index>(std::ceil(x - 0.5));
  return std::min(idx, size() - 1);
}

DiscretePdtc discretize(const ChannelModel& channel, const TransmittanceGrid& grid) {
  channel.validate();
  if (grid.empty()) throw ValidationError("discretize: empty grid");
  DiscretePdtc out;
  out.eta = grid.points();
  out.mass.resize(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    out.mass[i] = pdtc_density(grid[i], channel) * grid.step();
  }
  const double total = out.mass.sum();
  if (!(total > 0.0)) throw ValidationError("discretize: channel has no mass on the grid");
  out.tail_mass = 1.0 - total;
  out.mass /= total;
  return out;
}

}  // namespace mdiqkd
