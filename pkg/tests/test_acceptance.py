"""Acceptance gate: one pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines, or
directly with ``python tests/test_acceptance.py``. All checks are exact
except criterion 9, whose numeric tolerance is 1e-9.
"""

import io
import json
import os
import random
import sys
import time
from fractions import Fraction
from math import gcd

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from golden.regen import PATH as GOLDEN_PATH, compute as golden_compute  # noqa: E402
from hkit.calculus import (  # noqa: E402
    RelationKind, beta_direct, beta_n, beta_recursive, eval_combined, gamma_n, gamma_recursive,
    nc_eval, phi,
)
from hkit.cli import main as cli_main  # noqa: E402
from hkit.errors import HkitError  # noqa: E402
from hkit.generators import (  # noqa: E402
    InstanceSpec, gen_combined_instance, solve_instance, verify_witness,
)
from hkit.matrix import ExactMatrix, kron  # noqa: E402
from hkit.poly import CommPoly, CommPoly4, DeltaKind, parse_poly  # noqa: E402
from hkit.quasihom import Certificate, classify_qh, make_certificate, verify_certificate  # noqa: E402
from hkit.scalar import GaussRat, I_UNIT  # noqa: E402
from hkit.serialize import scalar_from_json  # noqa: E402
from hkit.splitting import (  # noqa: E402
    NUMERIC_TOLERANCE, split_nsym, split_nsym2, split_perturbation, split_tensor_product,
)

NI = RelationKind.n_inverse()
HELTON = RelationKind.helton()
TP, PX, TS = DeltaKind.TENSOR_PRODUCT, DeltaKind.PERTURB_X, DeltaKind.TENSOR_SUM


def rand_gauss(rng, bound=4):
    return GaussRat(Fraction(rng.randint(-bound, bound), rng.randint(1, 3)),
                    Fraction(rng.randint(-bound, bound), rng.randint(1, 3)))


def rand_matrix(rng, dim):
    return ExactMatrix([[rand_gauss(rng) for _ in range(dim)] for _ in range(dim)])


def rand_poly(rng, degree=3):
    terms = {}
    for _ in range(rng.randint(1, 5)):
        i = rng.randint(0, degree)
        terms[(i, rng.randint(0, degree - i))] = rand_gauss(rng)
    return CommPoly(terms)


# -- 1: definition and recursion agree ------------------------------------------------

def criterion_1():
    rng = random.Random(1)
    checked = 0
    for _ in range(200):
        d = rng.randint(1, 3)
        S, T = rand_matrix(rng, d), rand_matrix(rng, d)
        for n in range(1, 7):
            if beta_direct(S, T, n) != beta_recursive(S, T, n):
                return False, f"beta mismatch at n={n}"
            if gamma_n(S, T, n) != gamma_recursive(S, T, n):
                return False, f"gamma mismatch at n={n}"
            checked += 2
    return True, f"{checked} exact comparisons on 200 pairs, n <= 6"


# -- 2: the normal-ordering diagram commutes ------------------------------------------

def criterion_2():
    rng = random.Random(2)
    for k in range(100):
        p = rand_poly(rng)
        S1, T1, S2, T2 = (rand_matrix(rng, 2) for _ in range(4))
        lhs = nc_eval(phi(p), kron(S1, S2), kron(T1, T2))
        rhs = ExactMatrix.zeros(4)
        for (i, j), c in p.items():
            rhs = rhs + kron(S1 ** i @ T1 ** j, S2 ** i @ T2 ** j).scale(c)
        if lhs != rhs:
            return False, f"sample {k}: {p}"
    return True, "100 polynomials of degree <= 3 on random 2x2 pairs"


# -- 3 and 4: forward constructions and converse solvers --------------------------------

SEEDS = 20
ORDER_PAIRS = [(l, m) for l in range(1, 6) for m in range(1, 6) if l + m <= 6]

FAMILIES = [
    # (name, relation, delta, adjoint, lambda pool)
    ("n-inverse/tensor-product", NI, TP, False, "nonzero"),
    ("helton/tensor-product", HELTON, TP, False, "nonzero"),
    ("nsym", HELTON, TP, True, "unimodular"),
    ("n-inverse/perturb", NI, PX, False, "any"),
    ("helton/perturb", HELTON, PX, False, "any"),
    ("helton/tensor-sum", HELTON, TS, False, "any"),
    ("nsym2", HELTON, TS, True, "imaginary"),
]


def _lambda(pool, rng, m):
    if pool == "unimodular":
        z = GaussRat(rng.randint(1, 4), rng.randint(0, 4))
        return z / z.conjugate()
    if pool == "imaginary":
        return I_UNIT * Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    while True:
        z = rand_gauss(rng, 3)
        if z or (pool == "any" and m > 1):
            return z


def _orders(adjoint):
    # Strict even-order n-symmetries do not exist on matrices.
    if adjoint:
        return [(l, m) for l, m in ORDER_PAIRS if l % 2 and m % 2]
    return ORDER_PAIRS


_INSTANCES = {}


def instances():
    if not _INSTANCES:
        for name, rel, delta, adjoint, pool in FAMILIES:
            for l, m in _orders(adjoint):
                for seed in range(SEEDS):
                    rng = random.Random(f"{name}:{l}:{m}:{seed}")
                    spec = InstanceSpec(rel, delta, l, m, _lambda(pool, rng, m), seed=seed, adjoint=adjoint)
                    _INSTANCES[(name, l, m, seed)] = gen_combined_instance(spec)
    return _INSTANCES


def criterion_3():
    count = 0
    for (name, l, m, seed), inst in instances().items():
        kind, delta = inst.spec.relation, inst.spec.delta
        args = inst.combined_args()
        n = l + m - 1
        if not eval_combined(kind, delta, *args, n).is_zero():
            return False, f"{name} l={l} m={m} seed={seed}: relation does not vanish at n={n}"
        if n > 1 and eval_combined(kind, delta, *args, n - 1).is_zero():
            return False, f"{name} l={l} m={m} seed={seed}: not strict at n-1={n - 1}"
        count += 1
    skipped = len(ORDER_PAIRS) * 2 - 2 * len(_orders(True))
    return True, (f"{count} instances, {len(FAMILIES)} families, l+m <= 6, {SEEDS} seeds "
                  f"({skipped} even-order (l,m) cells of the two n-symmetry families are not constructible)")


def criterion_4():
    solved, failures = 0, []
    for key, inst in instances().items():
        try:
            w = solve_instance(inst)
        except HkitError as exc:
            failures.append(f"{key}: {type(exc).__name__}: {exc}")
            continue
        if not (w.exact and w.l + w.m == inst.n + 1 and verify_witness(inst, w)):
            failures.append(f"{key}: witness {w} did not re-verify")
            continue
        solved += 1
    if failures:
        return False, f"{len(failures)} failures, first: {failures[0]}"
    return True, f"{solved} exact witnesses over the five solver entry points, all re-verified"


# -- 5: named instances ---------------------------------------------------------------

def _M(rows):
    return ExactMatrix([[scalar_from_json(v) for v in row] for row in rows])


def criterion_5():
    with open(GOLDEN_PATH, encoding="utf-8") as fh:
        golden = json.load(fh)
    if golden_compute() != golden:
        return False, "brute-force oracle no longer reproduces the frozen golden file"
    g = golden["strict_3_isometry"]
    T = _M(g["T"])
    checks = [beta_n(T.adjoint(), T, 2) == _M(g["beta_2"]), beta_n(T.adjoint(), T, 3) == _M(g["beta_3"])]
    g = golden["strict_3_symmetry"]
    N = _M(g["N"])
    checks += [gamma_n(N.adjoint(), N, 2) == _M(g["gamma_2"]), gamma_n(N.adjoint(), N, 3) == _M(g["gamma_3"])]
    g = golden["tensor_product"]
    ops = [_M(g["operands"][k]) for k in ("S1", "T1", "S2", "T2")]
    w = split_tensor_product(*ops, g["n"], NI)
    checks.append((str(w.lam), w.l, w.m) == (g["witness"]["lambda"], g["witness"]["l"], g["witness"]["m"]))
    checks.append(eval_combined(NI, TP, *ops, g["n"] - 1) == _M(g["combined_n_minus_1"]))
    g = golden["perturbation"]
    S, T, Q = (_M(g["operands"][k]) for k in ("S", "T", "Q"))
    w = split_perturbation(S, T, Q, g["n"], NI)
    checks.append((str(w.lam), w.l, w.m) == (g["witness"]["lambda"], g["witness"]["l"], g["witness"]["m"]))
    checks.append(eval_combined(NI, PX, S, T, Q, None, g["n"] - 1) == _M(g["combined_n_minus_1"]))
    if not all(checks):
        return False, f"golden checks {checks}"
    return True, "strict 3-isometry, strict 3-symmetry, (2,2,1) tensor product, (0,2,2) perturbation"


# -- 6: quasi-homogeneity classifier ---------------------------------------------------

def criterion_6():
    expected = {"x*y - 1": ((1, -1), 0), "x - y": ((1, 1), 1), "x^2*y^3 - 5": ((3, -2), 0)}
    for text, (weights, degree) in expected.items():
        qh = classify_qh(parse_poly(text))
        if qh is None or (qh.weights, qh.quasi_degree) != (weights, degree):
            return False, f"{text} -> {qh}"
    if classify_qh(parse_poly("x*y - x - 1")) is not None:
        return False, "x*y - x - 1 accepted"
    rng = random.Random(6)
    accepted = rejected = 0
    while accepted < 250:
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        if (a, b) == (0, 0):
            continue
        g = gcd(a, b)
        a, b = a // g, b // g
        i0, j0 = rng.randint(0, 4), rng.randint(0, 4)
        line = [(i0 + k * a, j0 + k * b) for k in range(-4, 5)]
        line = [e for e in line if min(e) >= 0]
        if len(line) < 2:
            continue
        p = CommPoly({e: rand_gauss(rng) or 1 for e in rng.sample(line, rng.randint(2, len(line)))})
        qh = classify_qh(p)
        if qh is None or any(qh.weights[0] * i + qh.weights[1] * j != qh.quasi_degree for i, j in p.support()):
            return False, f"collinear {p} -> {qh}"
        accepted += 1
    while rejected < 250:
        pts = [(rng.randint(0, 5), rng.randint(0, 5)) for _ in range(3)]
        (x0, y0), (x1, y1), (x2, y2) = pts
        if (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0) == 0:
            continue
        p = CommPoly({e: rng.randint(1, 5) for e in pts})
        if classify_qh(p) is not None:
            return False, f"non-collinear {p} accepted"
        rejected += 1
    return True, "4 named cases, 250 fuzzed accepts, 250 fuzzed rejects"


# -- 7: certificates ---------------------------------------------------------------------

def criterion_7():
    p = parse_poly("x*y - 1")
    decomps = make_certificate(p, TP, 1)
    if not (verify_certificate(p, decomps) and decomps.f == CommPoly4({(0, 0, 1, 1): 1})
            and decomps.g == CommPoly4.one()):
        return False, "the x1x2y1y2 - 1 identity did not verify"
    families = {
        "product": (["x*y - 1", "x^2*y^3 - 5", "(1+i)*x*y^2 - 3/2"], TP),
        "difference": (["x - y", "3*x^2 - i*y^3", "2*x^3 - y^2"], TP),
        "tensor-sum": (["x - y", "2*x - 2*y"], TS),
        "perturb": (["x*y - 1", "x - y", "x*y^2 + y - 3"], PX),
    }
    rng = random.Random(7)
    count = 0
    for name, (texts, kind) in families.items():
        for text in texts:
            q = parse_poly(text)
            form = classify_qh(q).canonical_form if kind is TP else None
            if kind is TP and type(form).__name__ != {"product": "ProductForm",
                                                      "difference": "DifferenceForm"}[name]:
                return False, f"{text} is not in the {name} shape"
            for _ in range(50):
                lam = rand_gauss(rng) or GaussRat(1)
                if not verify_certificate(q, make_certificate(q, kind, lam)):
                    return False, f"{name} certificate for {text} at lambda={lam} failed"
                count += 1
        q = parse_poly(texts[0])
        cert = make_certificate(q, kind, GaussRat(2, 1))
        mutated = Certificate(cert.q1, cert.q2 + CommPoly.one(), cert.f, cert.g, kind)
        if verify_certificate(q, mutated):
            return False, f"mutated {name} certificate accepted"
    return True, f"{count} certificates verified, 4 mutated ones rejected"


# -- 8: modulus and imaginary laws ---------------------------------------------------------

def criterion_8():
    rng = random.Random(8)
    nsym_seen = nsym2_seen = 0
    seed = 0
    while nsym_seen < 50:
        l, m = rng.choice([(1, 1), (1, 3), (3, 1), (3, 3), (1, 5)])
        inst = gen_combined_instance(InstanceSpec(HELTON, TP, l, m, _lambda("unimodular", rng, m),
                                                  seed=seed, adjoint=True))
        seed += 1
        w = split_nsym(inst.operands["T1"], inst.operands["T2"], inst.n)
        if not w.exact or w.lam * w.lam.conjugate() != 1:
            return False, f"nsym witness {w.lam} breaks |lambda| = 1"
        nsym_seen += 1
    while nsym2_seen < 50:
        l, m = rng.choice([(1, 1), (1, 3), (3, 1), (3, 3), (5, 1)])
        inst = gen_combined_instance(InstanceSpec(HELTON, TS, l, m, _lambda("imaginary", rng, m),
                                                  seed=seed, adjoint=True))
        seed += 1
        w = split_nsym2(inst.operands["T1"], inst.operands["T2"], inst.n)
        if not w.exact or w.lam + w.lam.conjugate() != 0:
            return False, f"nsym2 witness {w.lam} is not pure imaginary"
        nsym2_seen += 1
    return True, "50 nsym witnesses with lambda*conj(lambda) = 1, 50 nsym2 with lambda + conj(lambda) = 0"


# -- 9: numeric quarantine ------------------------------------------------------------------

def criterion_9(tmp_dir=None):
    kind = RelationKind.general("x*y^2 - 2")
    one, two = ExactMatrix([[1]]), ExactMatrix([[2]])
    w = split_tensor_product(one, one, two, one, 1, kind)
    if w.exact or w.verified != "numeric":
        return False, f"exact claim {w.lam} for an irrational witness"
    lam = complex(w.lam.value)
    if abs(abs(lam) - 2 ** 0.5) >= 1e-9 or abs(lam.imag) >= 1e-9 or w.residual >= NUMERIC_TOLERANCE:
        return False, f"lambda {lam} residual {w.residual}"
    manifest = {"relation": "general:x*y^2-2", "delta": "tensor-product", "n": 1,
                "operands": {"S1": {"dim": 1, "entries": [[1]]}, "T1": {"dim": 1, "entries": [[1]]},
                             "S2": {"dim": 1, "entries": [[2]]}, "T2": {"dim": 1, "entries": [[1]]}}}
    import tempfile
    with tempfile.TemporaryDirectory(dir=tmp_dir) as d:
        path = os.path.join(d, "numeric.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(manifest, fh)
        out, err = io.StringIO(), io.StringIO()
        code = cli_main(["split", path], out, err)
    if code != 3:
        return False, f"CLI exit {code}, expected 3"
    report = json.loads(out.getvalue())
    if report["verified"] != "numeric" or report["lambda"]["residual"] >= NUMERIC_TOLERANCE:
        return False, f"CLI report {report}"
    return True, f"lambda ~ {lam.real:.12f} (a square root of 2), residual {w.residual:.1e}, CLI exit 3"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


def _report(k, fn):
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {detail} ({elapsed:.1f}s)"
    return ok, line, elapsed


@pytest.mark.parametrize("k", range(1, len(CRITERIA) + 1))
def test_criterion(k, capsys):
    ok, line, elapsed = _report(k, CRITERIA[k - 1])
    with capsys.disabled():
        print("\n" + line)
    assert ok, line
    assert elapsed < 60, f"criterion {k} took {elapsed:.1f}s"


if __name__ == "__main__":
    results = [_report(k, fn) for k, fn in enumerate(CRITERIA, start=1)]
    for _, line, _ in results:
        print(line)
    sys.exit(0 if all(ok for ok, _, _ in results) else 1)
