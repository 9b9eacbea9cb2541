"""Witness search for the tensor splitting theorems.

Given a relation Phi(p^n) that vanishes on a combined operator pair (a
tensor product, a tensor sum, or a nilpotent perturbation), the solvers
recover lambda and orders l, m with l + m = n + 1 for which the individual
relations hold, then re-verify the witness from scratch.

Admissible lambdas are found by writing Phi(p_lambda^l)(S, T) as a
matrix-valued polynomial in lambda (a pencil) and taking the common roots of
its entries: the monic gcd over Q(i) of all entry polynomials. Roots outside
Q(i) are located in floating point and reported as numeric witnesses, never
as exact ones.
"""

import enum
from dataclasses import dataclass
from math import comb
from typing import Union

import numpy as np

from . import univariate as upoly
from .calculus import (
    RelationKind, _Powers, combined_pair, gamma_n, min_order, nc_eval, phi,
)
from .errors import (
    CapExceeded, DimensionMismatch, ImaginaryViolation, InternalContradiction,
    ModulusViolation, NoSplit, NotSatisfied, PreconditionError, QNotShiftedNilpotent,
)
from .limits import MAX_PENCIL_DEGREE, check_dim, check_order
from .matrix import ExactMatrix, nilpotency_index
from .poly import CommPoly, DeltaKind, poly_pow, scale_vars
from .quasihom import classify_qh
from .scalar import GaussRat, ZERO

NUMERIC_TOLERANCE = 1e-9


class PencilMode(enum.Enum):
    SCALE = "scale"
    SHIFT = "shift"


@dataclass(frozen=True)
class NumericScalar:
    value: complex
    residual: float

    def __complex__(self):
        return self.value


@dataclass(frozen=True)
class PencilPoly:
    """sum_k lambda^k coeffs[k], trailing zero matrices trimmed."""

    coeffs: tuple
    dim: int

    def __post_init__(self):
        coeffs = list(self.coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __call__(self, lam):
        lam = GaussRat.coerce(lam)
        out = ExactMatrix.zeros(self.dim)
        for c in reversed(self.coeffs):
            out = out.scale(lam) + c
        return out

    def evaluate_complex(self, z):
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for c in reversed(self.coeffs):
            out = out * z + c.to_complex()
        return out

    def residual(self, z):
        """||P(z)||_F relative to sum_k |z|^k ||C_k||_F."""
        scale = sum(abs(z) ** k * np.linalg.norm(c.to_complex()) for k, c in enumerate(self.coeffs))
        if scale == 0:
            return 0.0
        return float(np.linalg.norm(self.evaluate_complex(z)) / scale)

    def entry_polys(self):
        for r in range(self.dim):
            for c in range(self.dim):
                yield upoly.trim([m[r, c] for m in self.coeffs])


def lambda_pencil(kind, mode, l, S, T):
    """Pencil P with P(lam) = Phi(p(x, lam*y)^l)(S, T) or Phi(p(x + lam, y)^l)(S, T)."""
    if S.dim != T.dim:
        raise DimensionMismatch(f"S is {S.dim}x{S.dim} but T is {T.dim}x{T.dim}")
    q = poly_pow(kind.poly, l)
    s_pow, t_pow = _Powers(S), _Powers(T)
    coeffs = {}

    def add(k, matrix):
        coeffs[k] = coeffs[k] + matrix if k in coeffs else matrix

    for (i, j), c in q.items():
        if mode is PencilMode.SCALE:
            add(j, (s_pow[i] @ t_pow[j]).scale(c))
        else:
            for e in range(i + 1):
                add(e, (s_pow[i - e] @ t_pow[j]).scale(c * comb(i, e)))
    degree = max(coeffs, default=-1)
    if degree > MAX_PENCIL_DEGREE:
        raise CapExceeded(f"pencil degree {degree} exceeds cap {MAX_PENCIL_DEGREE}")
    zero = ExactMatrix.zeros(S.dim)
    return PencilPoly(tuple(coeffs.get(k, zero) for k in range(degree + 1)), S.dim)


@dataclass(frozen=True)
class RootSet:
    exact: tuple = ()
    numeric: tuple = ()
    all_lambda: bool = False


ALL_LAMBDA = RootSet(all_lambda=True)


def common_roots(P):
    """Scalars annihilating every entry of the pencil P."""
    g = ()
    for entry in P.entry_polys():
        g = upoly.gcd_poly(g, entry)
        if upoly.degree(g) == 0:
            return RootSet()
    if not g:
        return ALL_LAMBDA
    exact, rest = upoly.exact_roots(g)
    numeric = []
    for z in upoly.numeric_roots(rest):
        r = P.residual(z)
        if r < NUMERIC_TOLERANCE:
            numeric.append(NumericScalar(z, r))
    exact.sort(key=lambda z: (z.re, z.im))
    numeric.sort(key=lambda z: (round(z.value.real, 12), round(z.value.imag, 12)))
    return RootSet(tuple(exact), tuple(numeric))


# -- witnesses ------------------------------------------------------------------


@dataclass(frozen=True)
class SplitWitness:
    """lam, l, m certifying that an order-n combined relation splits.

    ``order`` is the strict order of the combined relation, so
    l + m == order + 1 <= n + 1, with equality when n itself is strict.
    """

    lam: Union[GaussRat, NumericScalar]
    l: int
    m: int
    n: int
    order: int
    relation: str
    delta: str

    @property
    def exact(self):
        return isinstance(self.lam, GaussRat)

    @property
    def verified(self):
        return "exact" if self.exact else "numeric"

    @property
    def residual(self):
        return 0.0 if self.exact else self.lam.residual


def _exact_candidates(roots, nonzero):
    return [z for z in roots.exact if not (nonzero and z.is_zero())]


def _numeric_candidates(roots, nonzero):
    return [z for z in roots.numeric if not (nonzero and abs(z.value) < NUMERIC_TOLERANCE)]


def _numeric_relation(coeffs, S, T):
    """Phi(q)(S, T) in floating point for q given as {(i, j): complex}."""
    n = S.shape[0]
    out = np.zeros((n, n), dtype=complex)
    scale = 0.0
    for (i, j), c in coeffs.items():
        term = c * (np.linalg.matrix_power(S, i) @ np.linalg.matrix_power(T, j))
        out += term
        scale += np.linalg.norm(term)
    return out, scale


def _numeric_power(coeffs, k):
    out = {(0, 0): 1 + 0j}
    for _ in range(k):
        nxt = {}
        for (i1, j1), a in out.items():
            for (i2, j2), b in coeffs.items():
                e = (i1 + i2, j1 + j2)
                nxt[e] = nxt.get(e, 0j) + a * b
        out = nxt
    return out


def numeric_residual(coeffs, S, T, k):
    value, scale = _numeric_relation(_numeric_power(coeffs, k), S.to_complex(), T.to_complex())
    norm = float(np.linalg.norm(value))
    return 0.0 if norm == 0 else float(norm / max(scale, 1e-300))


def _numeric_min_order(coeffs, S, T, cap):
    for k in range(1, cap + 1):
        if numeric_residual(coeffs, S, T, k) < NUMERIC_TOLERANCE:
            return k
    return None


def _exact_min_order(q, S, T, cap):
    if cap < 1:
        return None
    return min_order(RelationKind("general", q), S, T, cap)


def _check_strict(l, m, order):
    if l + m != order + 1:
        raise InternalContradiction(
            f"witness orders l={l}, m={m} do not match strict combined order {order}"
        )


def _require_vanishing(kind, dkind, S1, T1, S2, T2, n):
    check_order(n)
    if n < 1:
        raise PreconditionError("n must be positive")
    S, T = combined_pair(dkind, S1, T1, S2, T2)
    check_dim(S.dim)
    order = min_order(kind, S, T, n)
    if order is None:
        raise NotSatisfied(f"{kind.label} relation of order {n} does not vanish on the combined pair")
    return order


def _verify_exact_order(q, S, T, k):
    """Phi(q^k)(S, T) = 0 with Phi(q^(k-1))(S, T) != 0."""
    if not nc_eval(phi(poly_pow(q, k)), S, T).is_zero():
        return False
    return k == 1 or not nc_eval(phi(poly_pow(q, k - 1)), S, T).is_zero()


def _verify_numeric_order(coeffs, S, T, k):
    if numeric_residual(coeffs, S, T, k) >= NUMERIC_TOLERANCE:
        return False
    return k == 1 or numeric_residual(coeffs, S, T, k - 1) >= NUMERIC_TOLERANCE


# -- tensor products ------------------------------------------------------------


def _second_factor_scale(form, lam):
    """t with p_t(x, y) := p with its y^beta term scaled by t = B / lam^beta.

    This is p(x, (eta/lam) y) for any eta with eta^beta = B, without needing
    eta itself.
    """
    if isinstance(lam, GaussRat):
        return form.B / lam ** form.beta
    return complex(form.B) / complex(lam) ** form.beta


def _scale_y_power(p, t, beta):
    if isinstance(t, GaussRat):
        return CommPoly({(i, j): c * t ** (j // beta) for (i, j), c in p.items()})
    return {(i, j): complex(c) * t ** (j // beta) for (i, j), c in p.items()}


def _scale_y_numeric(p, lam):
    return {(i, j): complex(c) * lam ** j for (i, j), c in p.items()}


def split_tensor_product(S1, T1, S2, T2, n, kind, numeric_fallback=True):
    """Split Phi(p^n)(S1 (x) S2, T1 (x) T2) = 0 into factor relations.

    Returns a witness with Phi(p_lam^l)(S1, T1) = 0 and
    Phi(p_{eta/lam}^m)(S2, T2) = 0, where p_c(x, y) = p(x, c*y) and
    eta^beta = B for the canonical form of p. For p = xy - 1 this says S1 is
    a strict left l-inverse of lam*T1 and S2 a strict left m-inverse of
    T2/lam.
    """
    qh = classify_qh(kind.poly)
    if qh is None or qh.canonical_form is None:
        raise PreconditionError(f"{kind.label} is not an irreducible quasi-homogeneous relation")
    form = qh.canonical_form
    if kind.name != "n-inverse":
        for name, A in (("S1", S1), ("T1", T1), ("S2", S2), ("T2", T2)):
            if not A.is_invertible():
                raise PreconditionError(f"{name} must be invertible for the {kind.label} relation")
    order = _require_vanishing(kind, DeltaKind.TENSOR_PRODUCT, S1, T1, S2, T2, n)
    label = kind.label

    pencils = [lambda_pencil(kind, PencilMode.SCALE, l, S1, T1) for l in range(1, n + 1)]
    roots = []
    for P in pencils:
        found = common_roots(P)
        if found.all_lambda:
            # impossible: the lambda^0 coefficient is a nonzero multiple of a power of S1
            raise InternalContradiction("scale pencil vanished identically")
        roots.append(found)

    tried = set()
    for l, found in enumerate(roots, start=1):
        for lam in _exact_candidates(found, nonzero=True):
            if lam in tried:
                continue
            tried.add(lam)
            q2 = _scale_y_power(kind.poly, _second_factor_scale(form, lam), form.beta)
            m = _exact_min_order(q2, S2, T2, n + 1 - l)
            if m is None:
                continue
            q1 = scale_vars(kind.poly, 1, lam)
            if not (_verify_exact_order(q1, S1, T1, l) and _verify_exact_order(q2, S2, T2, m)):
                raise InternalContradiction(f"exact witness lam={lam} failed re-verification")
            _check_strict(l, m, order)
            return SplitWitness(lam, l, m, n, order, label, DeltaKind.TENSOR_PRODUCT.value)

    if not numeric_fallback:
        raise NoSplit("no exact witness in Q(i); numeric fallback disabled")
    tried = []
    for l, found in enumerate(roots, start=1):
        for z in _numeric_candidates(found, nonzero=True):
            if any(abs(z.value - t) < 1e-7 for t in tried):
                continue
            tried.append(z.value)
            q2 = _scale_y_power(kind.poly, _second_factor_scale(form, z.value), form.beta)
            m = _numeric_min_order(q2, S2, T2, n + 1 - l)
            if m is None:
                continue
            q1 = _scale_y_numeric(kind.poly, z.value)
            if not (_verify_numeric_order(q1, S1, T1, l) and _verify_numeric_order(q2, S2, T2, m)):
                continue
            _check_strict(l, m, order)
            residual = float(max(z.residual, numeric_residual(q1, S1, T1, l), numeric_residual(q2, S2, T2, m)))
            return SplitWitness(NumericScalar(z.value, residual), l, m, n, order, label,
                                DeltaKind.TENSOR_PRODUCT.value)
    raise NoSplit(f"no splitting witness found for {label} at order {n}")


def split_nsym(T1, T2, n, numeric_fallback=True):
    """T1 (x) T2 an n-symmetry -> lam with |lam| = 1 splitting it.

    The witness satisfies gamma_l(T1*, lam*T1) = 0 and
    gamma_m(T2*, conj(lam)*T2) = 0.
    """
    for name, A in (("T1", T1), ("T2", T2)):
        if not A.is_invertible():
            raise PreconditionError(f"{name} must be left-invertible")
    w = split_tensor_product(T1.adjoint(), T1, T2.adjoint(), T2, n, RelationKind.helton(),
                             numeric_fallback=numeric_fallback)
    if w.exact:
        if w.lam * w.lam.conjugate() != 1:
            raise ModulusViolation(f"|lambda| != 1 for lambda = {w.lam}")
    elif abs(abs(w.lam.value) - 1) > 1e-7:
        raise ModulusViolation(f"|lambda| != 1 for lambda ~ {w.lam.value}")
    return SplitWitness(w.lam, w.l, w.m, w.n, w.order, "nsym", w.delta)


# -- nilpotent perturbation -------------------------------------------------------


def split_perturbation(S, T, Q, n, kind):
    """Split Phi(p^n)(S (x) I + I (x) Q, T (x) I) = 0 for p linear in x.

    lam is forced to be the only eigenvalue of Q, so it is read off as
    trace(Q)/dim(Q); then m is the nilpotency index of Q - lam and l the
    order of Phi(p^l)(S + lam, T).
    """
    if not kind.is_linear_in_x():
        raise PreconditionError(f"{kind.label} is not linear in x")
    if Q.is_zero():
        raise PreconditionError("Q must be nonzero")
    if S.is_zero() and T.is_zero():
        raise PreconditionError("S and T must not both be zero")
    order = _require_vanishing(kind, DeltaKind.PERTURB_X, S, T, Q, None, n)
    lam = Q.trace() / Q.dim
    m = nilpotency_index(Q.add_scalar(-lam))
    if m is None:
        raise QNotShiftedNilpotent(f"Q - ({lam})I is not nilpotent")
    shifted = S.add_scalar(lam)
    l = min_order(kind, shifted, T, n + 1 - m) if n + 1 - m >= 1 else None
    if l is None:
        raise NoSplit(f"S + ({lam})I has no {kind.label} order within {n + 1 - m}")
    if not _verify_exact_order(kind.poly, shifted, T, l):
        raise InternalContradiction("perturbation witness failed re-verification")
    _check_strict(l, m, order)
    return SplitWitness(lam, l, m, n, order, kind.label, DeltaKind.PERTURB_X.value)


# -- tensor sums ------------------------------------------------------------------


def _shift_x_numeric(p, lam):
    out = {}
    for (i, j), c in p.items():
        for k in range(i + 1):
            out[(k, j)] = out.get((k, j), 0j) + complex(c) * comb(i, k) * lam ** (i - k)
    return out


def split_tensor_sum_helton(S1, T1, S2, T2, n, numeric_fallback=True):
    """gamma_n(S1 (x) I + I (x) S2, T1 (x) I + I (x) T2) = 0 -> (lam, l, m).

    The witness has gamma_l(S1 + lam, T1) = 0 and gamma_m(S2 - lam, T2) = 0.
    """
    for name, A in (("S1", S1), ("T1", T1), ("S2", S2), ("T2", T2)):
        if A.is_zero():
            raise PreconditionError(f"{name} must be nonzero")
    helton = RelationKind.helton()
    order = _require_vanishing(helton, DeltaKind.TENSOR_SUM, S1, T1, S2, T2, n)
    roots = [common_roots(lambda_pencil(helton, PencilMode.SHIFT, l, S1, T1)) for l in range(1, n + 1)]

    tried = set()
    for l, found in enumerate(roots, start=1):
        for lam in _exact_candidates(found, nonzero=False):
            if lam in tried:
                continue
            tried.add(lam)
            m = min_order(helton, S2.add_scalar(-lam), T2, n + 1 - l) if n + 1 - l >= 1 else None
            if m is None:
                continue
            ok = (_verify_exact_order(helton.poly, S1.add_scalar(lam), T1, l)
                  and _verify_exact_order(helton.poly, S2.add_scalar(-lam), T2, m))
            if not ok:
                raise InternalContradiction(f"exact witness lam={lam} failed re-verification")
            _check_strict(l, m, order)
            return SplitWitness(lam, l, m, n, order, helton.label, DeltaKind.TENSOR_SUM.value)

    if not numeric_fallback:
        raise NoSplit("no exact witness in Q(i); numeric fallback disabled")
    p = helton.poly
    tried = []
    for l, found in enumerate(roots, start=1):
        for z in _numeric_candidates(found, nonzero=False):
            if any(abs(z.value - t) < 1e-7 for t in tried):
                continue
            tried.append(z.value)
            q1 = _shift_x_numeric(p, z.value)
            q2 = _shift_x_numeric(p, -z.value)
            m = _numeric_min_order(q2, S2, T2, n + 1 - l)
            if m is None or not (_verify_numeric_order(q1, S1, T1, l)
                                 and _verify_numeric_order(q2, S2, T2, m)):
                continue
            _check_strict(l, m, order)
            residual = float(max(z.residual, numeric_residual(q1, S1, T1, l), numeric_residual(q2, S2, T2, m)))
            return SplitWitness(NumericScalar(z.value, residual), l, m, n, order, helton.label,
                                DeltaKind.TENSOR_SUM.value)
    raise NoSplit(f"no tensor-sum witness found at order {n}")


def shift_decomposition(w, alpha, S1, T1, S2, T2):
    """Rewrite a tensor-sum witness lam as alpha + beta.

    Returns beta after checking gamma_l(S1 + alpha, T1 - beta) = 0 and
    gamma_m(S2 - alpha, T2 + beta) = 0.
    """
    if not w.exact:
        raise PreconditionError("decomposition is only offered for exact witnesses")
    alpha = GaussRat.coerce(alpha)
    beta = w.lam - alpha
    ok = (gamma_n(S1.add_scalar(alpha), T1.add_scalar(-beta), w.l).is_zero()
          and gamma_n(S2.add_scalar(-alpha), T2.add_scalar(beta), w.m).is_zero())
    if not ok:
        raise InternalContradiction("shift decomposition failed to verify")
    return beta


def split_nsym2(T1, T2, n, numeric_fallback=True):
    """T1 (x) I + I (x) T2 an n-symmetry -> pure imaginary lam.

    The witness makes T1 + lam an l-symmetry and T2 - lam an m-symmetry.
    """
    w = split_tensor_sum_helton(T1.adjoint(), T1, T2.adjoint(), T2, n,
                                numeric_fallback=numeric_fallback)
    # gamma_l(T1* + s, T1) = 0 with s = conj(lam) - lam = -2 lam for imaginary lam
    if w.exact:
        if w.lam.re:
            raise ImaginaryViolation(f"shift {w.lam} is not pure imaginary")
        lam = -w.lam / 2
        A1, A2 = T1.add_scalar(lam), T2.add_scalar(-lam)
        ok = (gamma_n(A1.adjoint(), A1, w.l).is_zero() and gamma_n(A2.adjoint(), A2, w.m).is_zero())
        if not ok or lam + lam.conjugate() != ZERO:
            raise InternalContradiction(f"n-symmetry witness lam={lam} failed re-verification")
    else:
        if abs(w.lam.value.real) > 1e-7:
            raise ImaginaryViolation(f"shift {w.lam.value} is not pure imaginary")
        lam = NumericScalar(complex(0.0, -w.lam.value.imag / 2), w.lam.residual)
    return SplitWitness(lam, w.l, w.m, w.n, w.order, "nsym2", w.delta)
