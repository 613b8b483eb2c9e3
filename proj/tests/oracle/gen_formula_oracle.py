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
"""Independent 50-digit evaluation of the closed-form key-rate chain.

Writes formula_oracle.inc: randomized parameter points with the expected
sifted terms, statistical bounds, decoy combinations, single-photon bounds
and key rate. Points are kept only when the rate is positive and every
cancelling combination loses fewer than three digits, so double precision
can be held to 1e-12 relative.

    python3 gen_formula_oracle.py > formula_oracle.inc
"""

import math
import random
import sys

from mpmath import mp, mpf, exp, sqrt, log

mp.dps = 50
SEED = 20261019
CASES = 20
MAX_CONDITION = 1e3

MU, NU, OM = 0, 1, 2


def z_terms(ea, eb, p, sa, sb):
    a = ea * p["eta_d"] * sa
    b = eb * p["eta_d"] * sb
    e = p["e_dz"]
    n1 = mpf(1) / 2 * (1 - 2 * e) * (1 - exp(-a)) * (1 - exp(-b))
    n2 = mpf(1) / 2 * (1 - exp(-(1 - e) * (a + b))) * (e * a + e * b + 2 * p["y0"])
    return n1, n2


def x_terms(ea, eb, p, ka, kb):
    d = p["eta_d"]
    e = p["e_dx"]
    a = ea * d * ka
    b = eb * d * kb
    dark = (a * exp(-a) + b * exp(-b)) * p["y0"]
    one = ea * eb * d * d * ka * kb * exp(-(a + b))
    # Both photons from one party reach the relay.
    two = d * d * exp(-(a + b)) * ((ea * ka) ** 2 + (eb * kb) ** 2) / 2
    c1 = (dark + one * (1 - 2 * e) / 2 + two / 4) / 2
    w1 = (dark + one * e + two / 4) / 2
    return c1, w1


def h2(x):
    if x <= 0 or x >= 1:
        return mpf(0)
    return -x * log(x, 2) - (1 - x) * log(1 - x, 2)


def evaluate(ea, eb, p, d):
    ka = {MU: d["mu_a"], NU: d["nu_a"], OM: mpf(0)}
    kb = {MU: d["mu_b"], NU: d["nu_b"], OM: mpf(0)}
    prob = {MU: d["p_mu"], NU: d["p_nu"], OM: 1 - d["p_s"] - d["p_mu"] - d["p_nu"]}
    out = {}
    out["n_z1"], out["n_z2"] = z_terms(ea, eb, p, d["s_a"], d["s_b"])
    q = {}
    t = {}
    c1s, w1s = [], []
    near_kink = False
    for i in (MU, NU, OM):
        for j in (MU, NU, OM):
            c1, w1 = x_terms(ea, eb, p, ka[i], kb[j])
            c1s.append(c1)
            w1s.append(w1)
            n = 2 * (c1 + w1)
            m = 2 * w1
            samples = p["n_pulses"] * prob[i] * prob[j]
            for store, g in ((q, n), (t, m)):
                half = p["gamma"] * sqrt(g / samples)
                near_kink = near_kink or (g > 0 and abs(g - half) < 1e-6 * half)
                store[(i, j)] = (max(g - half, mpf(0)), g + half)
    out["n_c1"], out["n_w1"] = c1s, w1s
    out["q_lower"] = [q[(i, j)][0] for i in (MU, NU, OM) for j in (MU, NU, OM)]
    out["q_upper"] = [q[(i, j)][1] for i in (MU, NU, OM) for j in (MU, NU, OM)]
    out["t_lower"] = [t[(i, j)][0] for i in (MU, NU, OM) for j in (MU, NU, OM)]
    out["t_upper"] = [t[(i, j)][1] for i in (MU, NU, OM) for j in (MU, NU, OM)]

    mua, mub, nua, nub = d["mu_a"], d["mu_b"], d["nu_a"], d["nu_b"]
    lo = lambda s, i, j: s[(i, j)][0]
    up = lambda s, i, j: s[(i, j)][1]
    m1_terms = [exp(nua + nub) * lo(q, NU, NU), -exp(nua) * up(q, NU, OM),
                -exp(nub) * up(q, OM, NU), lo(q, OM, OM)]
    m2_terms = [exp(mua + mub) * up(q, MU, MU), -exp(mua) * lo(q, MU, OM),
                -exp(mub) * lo(q, OM, MU), lo(q, OM, OM)]
    qm1 = max(sum(m1_terms), mpf(0))
    qm2 = max(sum(m2_terms), mpf(0))
    y_terms = [mua / (nua * nub) * qm1, -nua / (mua * mub) * qm2]
    y = max(sum(y_terms) / (mua - nua), mpf(0))
    e_terms = [exp(nua + nub) * up(t, NU, NU), -exp(nua) * lo(t, NU, OM),
               -exp(nub) * lo(t, OM, NU), up(t, OM, OM)]
    e11 = min(max(sum(e_terms) / (nua * nub * y), mpf(0)), mpf(1)) if y > 0 else mpf(1)
    nz = out["n_z1"] + out["n_z2"]
    ez = out["n_z2"] / nz
    ps, sa, sb = d["p_s"], d["s_a"], d["s_b"]
    r_terms = [ps * ps * sa * sb * exp(-(sa + sb)) * y * (1 - h2(min(e11, mpf(1) / 2))),
               -ps * ps * p["f_ec"] * nz * h2(ez)]
    rate = max(sum(r_terms), mpf(0))
    out["near_kink"] = near_kink
    out.update(q_m1=qm1, q_m2=qm2, y11=y, e11=e11, rate=rate)

    def cond(terms):
        s = abs(sum(terms))
        return math.inf if s == 0 else float(sum(abs(x) for x in terms) / s)

    worst = max(cond(m1_terms), cond(m2_terms), cond(y_terms), cond(e_terms), cond(r_terms))
    return out, worst


def log_uniform(rng, lo, hi):
    return math.exp(rng.uniform(math.log(lo), math.log(hi)))


def draw(rng):
    ea = log_uniform(rng, 0.01, 0.5)
    eb = ea * log_uniform(rng, 0.3, 3.0)
    p = dict(eta_d=rng.uniform(0.4, 0.9), e_dz=rng.uniform(1e-3, 0.01),
             e_dx=rng.uniform(5e-3, 0.03), y0=log_uniform(rng, 1e-8, 1e-6),
             f_ec=rng.uniform(1.05, 1.2), n_pulses=10.0 ** rng.randint(13, 15),
             gamma=rng.uniform(3.0, 6.0))
    s = rng.uniform(0.3, 0.6)
    mu = s * rng.uniform(0.3, 0.6)
    nu = mu * rng.uniform(0.1, 0.3)
    skew = lambda v: v * rng.uniform(0.85, 1.15)
    d = dict(s_a=skew(s), s_b=skew(s), mu_a=skew(mu), mu_b=skew(mu), nu_a=skew(nu),
             nu_b=skew(nu), p_s=rng.uniform(0.3, 0.7), p_mu=rng.uniform(0.02, 0.15),
             p_nu=rng.uniform(0.1, 0.25))
    return ea, eb, p, d


def fmt(x):
    return repr(float(x))


def arr(xs):
    return "{" + ", ".join(fmt(x) for x in xs) + "}"


def main():
    rng = random.Random(SEED)
    cases = []
    while len(cases) < CASES:
        ea, eb, p, d = draw(rng)
        if eb > 1.0 or d["p_s"] + d["p_mu"] + d["p_nu"] > 0.95:
            continue
        mp_p = {k: mpf(v) for k, v in p.items()}
        mp_d = {k: mpf(v) for k, v in d.items()}
        out, worst = evaluate(mpf(ea), mpf(eb), mp_p, mp_d)
        if out["rate"] <= 0 or out["e11"] >= 0.5 or worst > MAX_CONDITION:
            continue
        if out["near_kink"]:
            continue
        cases.append((ea, eb, p, d, out))

    w = sys.stdout.write
    w("// Generated by gen_formula_oracle.py (mpmath, 50 digits, seed %d). Do not edit.\n" % SEED)
    w("inline const FormulaCase kFormulaCases[] = {\n")
    for ea, eb, p, d, o in cases:
        w("    {%s, %s,\n" % (fmt(ea), fmt(eb)))
        w("     {%s},\n" % ", ".join(fmt(p[k]) for k in
                                    ("eta_d", "e_dz", "e_dx", "y0", "f_ec", "n_pulses", "gamma")))
        w("     {%s},\n" % ", ".join(fmt(d[k]) for k in
                                    ("s_a", "s_b", "mu_a", "mu_b", "nu_a", "nu_b", "p_s", "p_mu",
                                     "p_nu")))
        w("     %s, %s,\n" % (fmt(o["n_z1"]), fmt(o["n_z2"])))
        for key in ("n_c1", "n_w1", "q_lower", "q_upper", "t_lower", "t_upper"):
            w("     %s,\n" % arr(o[key]))
        w("     %s, %s, %s, %s, %s},\n" % tuple(fmt(o[k]) for k in
                                             ("q_m1", "q_m2", "y11", "e11", "rate")))
    w("};\n")


if __name__ == "__main__":
    main()
