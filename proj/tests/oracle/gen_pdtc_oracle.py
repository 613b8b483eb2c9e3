#!/usr/bin/env python3
# Copyright 2026 The mdiqkd Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""50-digit lognormal PDTC reference values.

Writes pdtc_oracle.inc with density values at randomized points and, for a
few channels, the probability mass inside (0, 1] from mpmath quadrature.

    python3 gen_pdtc_oracle.py > pdtc_oracle.inc
"""

import math
import random

from mpmath import mp, mpf, exp, log, sqrt, pi, quad, inf

mp.dps = 50
SEED = 7


def density(eta, eta0, s2):
    z = log(eta / eta0) + s2 / 2
    return exp(-z * z / (2 * s2)) / (sqrt(2 * pi * s2) * eta)


def main():
    rng = random.Random(SEED)
    print("// Generated by gen_pdtc_oracle.py (mpmath, 50 digits, seed %d). Do not edit." % SEED)
    print("inline const DensityCase kDensityCases[] = {")
    for _ in range(24):
        eta0 = math.exp(rng.uniform(math.log(0.01), math.log(0.5)))
        s2 = rng.choice([0.001, 0.2, 0.4, 0.6, 0.8, 1.0, 1.2])
        eta = eta0 * math.exp(rng.uniform(-2.0, 1.0) * math.sqrt(s2))
        v = density(mpf(eta), mpf(eta0), mpf(s2))
        print("    {%r, %r, %r, %r}," % (eta, eta0, s2, float(v)))
    print("};")
    print("inline const InsideMassCase kInsideMassCases[] = {")
    for eta0, s2 in ((0.158489, 0.2), (0.0398107, 1.2), (0.5, 1.0), (0.9, 0.6)):
        f = lambda t: density(exp(t), mpf(eta0), mpf(s2)) * exp(t)
        m = quad(f, [-inf, log(mpf(eta0)) - 10, log(mpf(eta0)), 0])
        print("    {%r, %r, %r}," % (eta0, s2, float(m)))
    print("};")


if __name__ == "__main__":
    main()
