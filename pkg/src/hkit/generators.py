"""Seeded builders of operator instances with known splitting witnesses.

Every builder asserts the orders it promises at generation time, so a
generated instance is also an oracle: the combined relation vanishes at
n = l + m - 1 and (for strict builders) not at n - 1.
"""

import random
from dataclasses import dataclass, field
from typing import Optional

from .calculus import RelationKind, eval_combined, gamma_n, min_order, nc_eval, phi
from .errors import InternalContradiction, PreconditionError
from .matrix import ExactMatrix, nilpotency_index
from .poly import DeltaKind, poly_pow, scale_vars
from .scalar import GaussRat, I_UNIT, ONE
from .splitting import (
    SplitWitness, split_nsym, split_nsym2, split_perturbation, split_tensor_product,
    split_tensor_sum_helton,
)


# -- random exact building blocks -------------------------------------------------

def rand_gauss(rng, bound=3, imaginary=True, nonzero=False):
    while True:
        den = rng.choice((1, 1, 2, 3))
        re = rng.randint(-bound, bound)
        im = rng.randint(-bound, bound) if imaginary else 0
        z = GaussRat(re, im) / den
        if z or not nonzero:
            return z


def rand_unimodular(rng):
    """A Gaussian rational of modulus one, from a Pythagorean parametrization."""
    a, b = rng.randint(1, 4), rng.randint(0, 4)
    z = GaussRat(a, b)
    return z / z.conjugate()


def rand_unit_upper(rng, dim):
    return ExactMatrix([[ONE if r == c else rand_gauss(rng, 2) if c > r else 0
                         for c in range(dim)] for r in range(dim)])


def rand_invertible(rng, dim):
    """Unit upper times unit lower triangular: determinant one."""
    lower = rand_unit_upper(rng, dim).adjoint()
    return rand_unit_upper(rng, dim) @ lower


def rand_unitary(rng, dim):
    """Cayley transform (I - K)(I + K)^-1 of a skew-hermitian K; exact."""
    H = rand_hermitian(rng, dim)
    K = H.scale(I_UNIT)
    I = ExactMatrix.identity(dim)
    return (I - K) @ (I + K).inverse()


def rand_hermitian(rng, dim, invertible=False):
    while True:
        rows = [[0] * dim for _ in range(dim)]
        for r in range(dim):
            rows[r][r] = rand_gauss(rng, 3, imaginary=False)
            for c in range(r + 1, dim):
                z = rand_gauss(rng, 2)
                rows[r][c], rows[c][r] = z, z.conjugate()
        H = ExactMatrix(rows)
        if not H.is_zero() and (not invertible or H.is_invertible()):
            return H


def jordan_nilpotent(dim, index):
    """Shift with one Jordan chain of length ``index`` padded by zeros."""
    return ExactMatrix([[1 if c == r + 1 and c < index else 0 for c in range(dim)] for r in range(dim)])


def rand_nilpotent(rng, dim, index):
    """Strictly upper-triangular matrix of nilpotency index exactly ``index``."""
    if not 1 <= index <= dim:
        raise PreconditionError(f"nilpotency index {index} impossible in dimension {dim}")
    U = rand_unit_upper(rng, dim)
    N = U @ jordan_nilpotent(dim, index) @ U.inverse()
    if nilpotency_index(N) != index:
        raise InternalContradiction("nilpotent builder produced the wrong index")
    return N


def _conjugate(P, *mats):
    P_inv = P.inverse()
    return tuple(P @ A @ P_inv for A in mats)


def _assert_order(kind, S, T, order):
    got = min_order(kind, S, T, order + 1)
    if got != order:
        raise InternalContradiction(f"builder promised strict {kind.label} order {order}, got {got}")


# -- relation-level builders ------------------------------------------------------

def gen_strict_inverse_pair(l, dim, c=1, seed=0, conjugate=True):
    """(S, T) = (c^-1 (I + N), cI) with N of index l, so beta_l(S, T) = N^l.

    Optionally conjugated jointly by a random invertible matrix.
    """
    if l > dim:
        raise PreconditionError(f"strict order {l} needs dimension >= {l}")
    rng = random.Random(seed)
    c = GaussRat.coerce(c)
    I = ExactMatrix.identity(dim)
    N = rand_nilpotent(rng, dim, l) if l > 1 else ExactMatrix.zeros(dim)
    S, T = (I + N).scale(c.inverse()), I.scale(c)
    if conjugate and dim > 1:
        S, T = _conjugate(rand_invertible(rng, dim), S, T)
    _assert_order(RelationKind.n_inverse(), S, T, l)
    return S, T


def _isometric_inverse_pair(order, dim, c, rng):
    # beta_n(A*, A) for A = I + (Jordan block of size q) vanishes first at 2q - 1
    q = (order + 1) // 2
    A = ExactMatrix.identity(dim) + rand_nilpotent(rng, dim, q)
    S, T = A.adjoint().scale(c.inverse()), A.scale(c)
    return _conjugate(rand_invertible(rng, dim), S, T)


def inverse_pair(order, dim, c, rng):
    """Strict left ``order``-inverse pair in the smallest construction that fits."""
    if order <= dim:
        S, T = gen_strict_inverse_pair(order, dim, c, rng.getrandbits(64))
    elif order % 2 == 1 and order <= 2 * dim - 1:
        S, T = _isometric_inverse_pair(order, dim, GaussRat.coerce(c), rng)
    else:
        raise PreconditionError(f"no strict {order}-inverse construction in dimension {dim}")
    _assert_order(RelationKind.n_inverse(), S, T, order)
    return S, T


def helton_pair(order, dim, rng):
    """Invertible (S, T) with gamma_order(S, T) = 0 strictly."""
    a = rand_gauss(rng, 3, nonzero=True)
    I = ExactMatrix.identity(dim)
    if order <= dim:
        N = rand_nilpotent(rng, dim, order) if order > 1 else ExactMatrix.zeros(dim)
        S, T = I.scale(a) + N, I.scale(a)
    elif order % 2 == 1 and order <= 2 * dim - 1:
        N = rand_nilpotent(rng, dim, (order + 1) // 2)
        S, T = I.scale(a) + N.adjoint(), I.scale(a) + N
    else:
        raise PreconditionError(f"no strict Helton order {order} construction in dimension {dim}")
    if dim > 1:
        S, T = _conjugate(rand_invertible(rng, dim), S, T)
    _assert_order(RelationKind.helton(), S, T, order)
    return S, T


def symmetry(order, dim, rng, invertible=False):
    """A strict ``order``-symmetry (odd order), optionally invertible."""
    if order % 2 == 0:
        raise PreconditionError("strict even-order n-symmetries do not exist on matrices")
    q = (order + 1) // 2
    if order == 1:
        T = rand_hermitian(rng, dim, invertible=invertible)
    else:
        if q > dim:
            raise PreconditionError(f"a strict {order}-symmetry needs dimension >= {q}")
        T = rand_nilpotent(rng, dim, q)
        if invertible:
            T = T.add_scalar(rand_gauss(rng, 3, imaginary=False, nonzero=True))
    if dim > 1:
        U = rand_unitary(rng, dim)
        T = U @ T @ U.adjoint()
    _assert_order(RelationKind.helton(), T.adjoint(), T, order)
    return T


def gen_nsymmetry(order, dim, seed=0):
    """order 1: hermitian; order 2q - 1: nilpotent of index q."""
    return symmetry(order, dim, random.Random(seed))


def dim_for(order, adjoint=False):
    """Smallest dimension the builders use for a strict order."""
    if adjoint or (order > 2 and order % 2 == 1):
        return max(1, (order + 1) // 2) if order > 1 else (2 if adjoint else 1)
    return order


# -- combined instances -----------------------------------------------------------

@dataclass(frozen=True)
class InstanceSpec:
    relation: RelationKind
    delta: DeltaKind
    l: int
    m: int
    lam: GaussRat = ONE
    dims: Optional[tuple] = None
    seed: int = 0
    adjoint: bool = False

    @property
    def family(self):
        if self.adjoint:
            return {DeltaKind.TENSOR_PRODUCT: "nsym", DeltaKind.TENSOR_SUM: "nsym2"}[self.delta]
        return f"{self.relation.name}/{self.delta.value}"


@dataclass(frozen=True)
class GeneratedInstance:
    spec: InstanceSpec
    n: int
    operands: dict = field(compare=False)
    expected: SplitWitness

    def combined_args(self):
        """(S1, T1, S2, T2) in the layout ``eval_combined`` expects."""
        ops = self.operands
        if "Q" in ops:
            return ops["S"], ops["T"], ops["Q"], None
        if "T1" in ops and "S1" not in ops:
            return ops["T1"].adjoint(), ops["T1"], ops["T2"].adjoint(), ops["T2"]
        return ops["S1"], ops["T1"], ops["S2"], ops["T2"]


def _redraw(draw, *operands, tries=64):
    """Redraw a pair until every derived operand is nonzero (solvers refuse zero operands)."""
    for _ in range(tries):
        pair = draw()
        if all(not f(*pair).is_zero() for f in operands):
            return pair
    raise PreconditionError("could not draw a pair with nonzero operands")


def gen_combined_instance(spec):
    if spec.l < 1 or spec.m < 1:
        raise PreconditionError("l and m must be positive")
    rng = random.Random(spec.seed)
    lam = GaussRat.coerce(spec.lam)
    d1, d2 = spec.dims or (dim_for(spec.l, spec.adjoint), dim_for(spec.m, spec.adjoint))
    n = spec.l + spec.m - 1
    kind, delta = spec.relation, spec.delta
    family = spec.family
    name = kind.name

    if family == "nsym":
        u = lam if lam * lam.conjugate() == 1 else rand_unimodular(rng)
        T1 = symmetry(spec.l, d1, rng, invertible=True).scale(u)
        T2 = symmetry(spec.m, d2, rng, invertible=True).scale(u.conjugate())
        operands = {"T1": T1, "T2": T2}
        witness_lam = u.conjugate() / u
    elif family == "nsym2":
        if lam.re:
            raise PreconditionError("nsym2 instances need a pure imaginary lambda")
        T1 = symmetry(spec.l, d1, rng).add_scalar(-lam)
        T2 = symmetry(spec.m, d2, rng).add_scalar(lam)
        operands = {"T1": T1, "T2": T2}
        witness_lam = lam
    elif delta is DeltaKind.TENSOR_PRODUCT and name in ("n-inverse", "helton"):
        if not lam:
            raise PreconditionError("tensor-product instances need a nonzero lambda")
        if name == "n-inverse":
            S1, T1 = inverse_pair(spec.l, d1, rand_gauss(rng, 2, nonzero=True), rng)
            S2, T2 = inverse_pair(spec.m, d2, rand_gauss(rng, 2, nonzero=True), rng)
        else:
            S1, T1 = helton_pair(spec.l, d1, rng)
            S2, T2 = helton_pair(spec.m, d2, rng)
        operands = {"S1": S1, "T1": T1.scale(lam.inverse()), "S2": S2, "T2": T2.scale(lam)}
        witness_lam = lam
    elif delta is DeltaKind.PERTURB_X and name in ("n-inverse", "helton"):
        if spec.m == 1 and not lam:
            raise PreconditionError("Q = lambda*I must be nonzero when m = 1")
        def draw():
            if name == "n-inverse":
                return inverse_pair(spec.l, d1, rand_gauss(rng, 2, nonzero=True), rng)
            return helton_pair(spec.l, d1, rng)
        S, T = _redraw(draw, lambda S, T: S.add_scalar(-lam), lambda S, T: T)
        d2 = max(d2, spec.m)
        Q = rand_nilpotent(rng, d2, spec.m) if spec.m > 1 else ExactMatrix.zeros(d2)
        if d2 > 1:
            Q, = _conjugate(rand_invertible(rng, d2), Q)
        operands = {"S": S.add_scalar(-lam), "T": T, "Q": Q.add_scalar(lam)}
        witness_lam = lam
    elif delta is DeltaKind.TENSOR_SUM and name == "helton":
        S1, T1 = _redraw(lambda: helton_pair(spec.l, d1, rng),
                         lambda S, T: S.add_scalar(-lam), lambda S, T: T)
        S2, T2 = _redraw(lambda: helton_pair(spec.m, d2, rng),
                         lambda S, T: S.add_scalar(lam), lambda S, T: T)
        operands = {"S1": S1.add_scalar(-lam), "T1": T1, "S2": S2.add_scalar(lam), "T2": T2}
        witness_lam = lam
    else:
        raise PreconditionError(f"no generator for {family}")

    expected = SplitWitness(witness_lam, spec.l, spec.m, n, n,
                            family.split("/")[0] if "/" in family else family,
                            delta.value)
    instance = GeneratedInstance(spec, n, operands, expected)
    _assert_forward(instance)
    return instance


def _assert_forward(inst):
    kind = inst.spec.relation
    args = inst.combined_args()
    if not eval_combined(kind, inst.spec.delta, *args, inst.n).is_zero():
        raise InternalContradiction(f"{inst.spec.family}: combined relation does not vanish at n={inst.n}")
    if inst.n > 1 and eval_combined(kind, inst.spec.delta, *args, inst.n - 1).is_zero():
        raise InternalContradiction(f"{inst.spec.family}: combined relation already vanishes at n-1")


def solve_instance(inst, numeric_fallback=True):
    """Run the solver matching the instance family."""
    ops, n, spec = inst.operands, inst.n, inst.spec
    family = spec.family
    if family == "nsym":
        return split_nsym(ops["T1"], ops["T2"], n, numeric_fallback)
    if family == "nsym2":
        return split_nsym2(ops["T1"], ops["T2"], n, numeric_fallback)
    if spec.delta is DeltaKind.TENSOR_PRODUCT:
        return split_tensor_product(ops["S1"], ops["T1"], ops["S2"], ops["T2"], n,
                                    spec.relation, numeric_fallback)
    if spec.delta is DeltaKind.PERTURB_X:
        return split_perturbation(ops["S"], ops["T"], ops["Q"], n, spec.relation)
    return split_tensor_sum_helton(ops["S1"], ops["T1"], ops["S2"], ops["T2"], n, numeric_fallback)


def verify_witness(inst, w):
    """Independent exact re-check of a witness against the instance operands.

    Evaluates the two factor relations directly, without the solver's pencils.
    """
    if not w.exact:
        return False
    ops, spec, lam = inst.operands, inst.spec, w.lam
    family = spec.family
    if family == "nsym":
        T1, T2 = ops["T1"], ops["T2"]
        first = lambda k: gamma_n(T1.adjoint(), T1.scale(lam), k)
        second = lambda k: gamma_n(T2.adjoint(), T2.scale(lam.conjugate()), k)
    elif family == "nsym2":
        A1, A2 = ops["T1"].add_scalar(lam), ops["T2"].add_scalar(-lam)
        first = lambda k: gamma_n(A1.adjoint(), A1, k)
        second = lambda k: gamma_n(A2.adjoint(), A2, k)
    elif spec.delta is DeltaKind.TENSOR_PRODUCT:
        p = spec.relation.poly
        q1, q2 = scale_vars(p, 1, lam), scale_vars(p, 1, lam.inverse())
        first = lambda k: nc_eval(phi(poly_pow(q1, k)), ops["S1"], ops["T1"])
        second = lambda k: nc_eval(phi(poly_pow(q2, k)), ops["S2"], ops["T2"])
    elif spec.delta is DeltaKind.PERTURB_X:
        p, S, Qs = spec.relation.poly, ops["S"].add_scalar(lam), ops["Q"].add_scalar(-lam)
        first = lambda k: nc_eval(phi(poly_pow(p, k)), S, ops["T"])
        second = lambda k: Qs ** k
    else:
        S1, S2 = ops["S1"].add_scalar(lam), ops["S2"].add_scalar(-lam)
        first = lambda k: gamma_n(S1, ops["T1"], k)
        second = lambda k: gamma_n(S2, ops["T2"], k)
    for value_at, k in ((first, w.l), (second, w.m)):
        if not value_at(k).is_zero() or (k > 1 and value_at(k - 1).is_zero()):
            return False
    return w.l + w.m == inst.n + 1
