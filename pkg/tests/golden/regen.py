"""Recompute the named-instance golden values with the brute-force oracle.

Run from the repository root:  python tests/golden/regen.py
Only tests/oracles.py is used here, never hkit, so the frozen file is an
independent reference for the library.
"""

import json
import os
import sys
from fractions import Fraction

HERE = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.dirname(HERE))

import oracles as O  # noqa: E402

NI = {(1, 1): O.c(1), (0, 0): O.c(-1)}


def scaled(A, s):
    return O.mscale(A, O.c(*s) if isinstance(s, tuple) else O.c(s))


def compute():
    I2 = O.eye(2)
    N = O.mat([[0, 1], [0, 0]])
    T = O.mat([[1, 1], [0, 1]])
    S = O.madj(T)
    out = {}

    out["strict_3_isometry"] = {
        "T": O.to_plain(T),
        "beta_2": O.to_plain(O.beta(S, T, 2)),
        "beta_3": O.to_plain(O.beta(S, T, 3)),
    }
    out["strict_3_symmetry"] = {
        "N": O.to_plain(N),
        "gamma_2": O.to_plain(O.gamma(O.madj(N), N, 2)),
        "gamma_3": O.to_plain(O.gamma(O.madj(N), N, 3)),
    }

    # (I + N, I/2, I, 2I): tensor-product n-inverse relation at n = 2
    S1, T1, S2, T2 = O.madd(I2, N), scaled(I2, (Fraction(1, 2), 0)), I2, scaled(I2, 2)
    kS, kT = O.mkron(S1, S2), O.mkron(T1, T2)
    lam = 2
    out["tensor_product"] = {
        "operands": {k: O.to_plain(v) for k, v in (("S1", S1), ("T1", T1), ("S2", S2), ("T2", T2))},
        "n": 2,
        "combined_n": O.to_plain(O.beta(kS, kT, 2)),
        "combined_n_minus_1": O.to_plain(O.beta(kS, kT, 1)),
        "witness": {"lambda": "2", "l": 2, "m": 1},
        "factor1_l": O.to_plain(O.beta(S1, scaled(T1, lam), 2)),
        "factor1_l_minus_1": O.to_plain(O.beta(S1, scaled(T1, lam), 1)),
        "factor2_m": O.to_plain(O.beta(S2, scaled(T2, (Fraction(1, lam), 0)), 1)),
    }

    # (I + N, I, Q = N): perturbation n-inverse relation at n = 3
    Q = N
    pS = O.madd(O.mkron(S1, I2), O.mkron(I2, Q))
    pT = O.mkron(I2, I2)
    out["perturbation"] = {
        "operands": {"S": O.to_plain(S1), "T": O.to_plain(I2), "Q": O.to_plain(Q)},
        "n": 3,
        "combined_n": O.to_plain(O.peval(O.ppow(NI, 3), pS, pT)),
        "combined_n_minus_1": O.to_plain(O.peval(O.ppow(NI, 2), pS, pT)),
        "witness": {"lambda": "0", "l": 2, "m": 2},
        "factor1_l": O.to_plain(O.beta(S1, I2, 2)),
        "factor1_l_minus_1": O.to_plain(O.beta(S1, I2, 1)),
        "factor2_m": O.to_plain(O.mpow(Q, 2)),
        "factor2_m_minus_1": O.to_plain(O.mpow(Q, 1)),
    }
    return out


PATH = os.path.join(HERE, "named_instances.json")

if __name__ == "__main__":
    with open(PATH, "w", encoding="utf-8") as fh:
        json.dump(compute(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {PATH}")
