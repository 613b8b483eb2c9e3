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


// Published reference operating points: one decoy setting per block size,
// optimized for a static link with the given two-arm design loss.

#pragma once

#include <array>
#include <cmath>

#include "mdiqkd/noise_model.hpp"

namespace mdiqkd {

struct ReferencePoint {
  double n_pulses;
  double design_loss_db;  // sum over both arms
  DecoyParams decoy;

  double design_eta() const { return std::pow(10.0, -design_loss_db / 20.0); }
  SystemParams system() const { return SystemParams::reference(n_pulses); }
};

inline const std::array<ReferencePoint, 3>& reference_points() {
  static const std::array<ReferencePoint, 3> points{{
      {1e12, 28.0, DecoyParams::symmetric(0.353, 0.229, 0.051, 0.527, 0.055, 0.285)},
      {1e13, 34.0, DecoyParams::symmetric(0.450, 0.200, 0.037, 0.573, 0.066, 0.219)},
      {1e14, 40.0, DecoyParams::symmetric(0.499, 0.198, 0.026, 0.466, 0.123, 0.295)},
  }};
  return points;
}

}  // namespace mdiqkd
