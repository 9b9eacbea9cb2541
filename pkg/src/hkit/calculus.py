"""Normal-ordered evaluation of commutative polynomials at operator pairs.

``phi`` sends x^i y^j to the word X^i Y^j, keeping every power of the first
operator to the left of every power of the second. Evaluating ``phi(p)`` at
a pair (S, T) gives sum k_ij S^i T^j, which is what beta_n and gamma_n are
for p = xy - 1 and p = x - y.
"""

from dataclasses import dataclass
from math import comb

from .errors import DimensionMismatch, InternalContradiction, PreconditionError
from .matrix import ExactMatrix, kron, tensor_sum
from .poly import CommPoly, DeltaKind, SparsePoly, parse_poly, poly_pow


class NcPoly(SparsePoly):
    """Linear combination of normal-ordered words X^i Y^j."""

    names = ("X", "Y")
    __slots__ = ()

    def left_mul_x(self):
        return NcPoly._wrap({(i + 1, j): c for (i, j), c in self.items()})

    def right_mul_y(self):
        return NcPoly._wrap({(i, j + 1): c for (i, j), c in self.items()})

    def __mul__(self, other):
        # Only scalars: the product of two normal-ordered words need not be one.
        if isinstance(other, SparsePoly):
            return NotImplemented
        return super().__mul__(other)

    __rmul__ = __mul__

    def to_comm(self):
        """Read the (i, j) coefficients back as a commutative polynomial."""
        return CommPoly._wrap(dict(self.items()))


def phi(p):
    return NcPoly._wrap(dict(p.items()))


@dataclass(frozen=True)
class RelationKind:
    name: str
    poly: CommPoly

    @classmethod
    def n_inverse(cls):
        return cls("n-inverse", parse_poly("x*y - 1"))

    @classmethod
    def helton(cls):
        return cls("helton", parse_poly("x - y"))

    @classmethod
    def general(cls, p):
        if isinstance(p, str):
            p = parse_poly(p)
        if p.is_zero():
            raise PreconditionError("relation polynomial must be nonzero")
        if p == cls.n_inverse().poly:
            return cls.n_inverse()
        if p == cls.helton().poly:
            return cls.helton()
        return cls("general", p)

    @property
    def label(self):
        return self.name if self.name != "general" else f"general:{self.poly}"

    def is_linear_in_x(self):
        return self.poly.degree_in("x") <= 1


def _check_pair(S, T):
    if S.dim != T.dim:
        raise DimensionMismatch(f"S is {S.dim}x{S.dim} but T is {T.dim}x{T.dim}")


class _Powers:
    """Power table for one matrix, confined to a single evaluation."""

    def __init__(self, A):
        self.table = [ExactMatrix.identity(A.dim), A]

    def __getitem__(self, k):
        while len(self.table) <= k:
            self.table.append(self.table[-1] @ self.table[1])
        return self.table[k]


def nc_eval(w, S, T):
    """Evaluate sum k_ij X^i Y^j at (S, T) as sum k_ij S^i T^j."""
    _check_pair(S, T)
    n = S.dim
    if isinstance(w, CommPoly):
        w = phi(w)
    s_pow, t_pow = _Powers(S), _Powers(T)
    by_i = {}
    for (i, j), c in w.items():
        by_i.setdefault(i, []).append((j, c))
    out = ExactMatrix.zeros(n)
    for i in sorted(by_i):
        inner = ExactMatrix.zeros(n)
        for j, c in by_i[i]:
            inner = inner + t_pow[j].scale(c)
        out = out + (inner if i == 0 else s_pow[i] @ inner)
    return out


def relation_value(kind, S, T, n):
    """Phi(p^n)(S, T) for the relation polynomial p of ``kind``."""
    if n < 0:
        raise PreconditionError("order must be nonnegative")
    if kind.name == "n-inverse":
        return beta_recursive(S, T, n)
    if kind.name == "helton":
        return gamma_recursive(S, T, n)
    return nc_eval(phi(poly_pow(kind.poly, n)), S, T)


def beta_direct(S, T, n):
    return nc_eval(phi(poly_pow(RelationKind.n_inverse().poly, n)), S, T)


def beta_recursive(S, T, n):
    _check_pair(S, T)
    b = ExactMatrix.identity(S.dim)
    for _ in range(n):
        b = S @ b @ T - b
    return b


def beta_n(S, T, n):
    """sum_k (-1)^(n-k) C(n,k) S^k T^k, cross-checked against the recursion."""
    if n < 1:
        raise PreconditionError("n must be positive")
    direct = beta_direct(S, T, n)
    if direct != beta_recursive(S, T, n):
        raise InternalContradiction("beta_n direct sum disagrees with its recursion")
    return direct


def gamma_recursive(S, T, n):
    _check_pair(S, T)
    g = ExactMatrix.identity(S.dim)
    for _ in range(n):
        g = S @ g - g @ T
    return g


def gamma_n(S, T, n):
    """sum_k (-1)^(n-k) C(n,k) S^k T^(n-k)."""
    if n < 1:
        raise PreconditionError("n must be positive")
    _check_pair(S, T)
    s_pow, t_pow = _Powers(S), _Powers(T)
    out = ExactMatrix.zeros(S.dim)
    for k in range(n + 1):
        coeff = (-1) ** (n - k) * comb(n, k)
        out = out + (s_pow[k] @ t_pow[n - k]).scale(coeff)
    return out


def _order_values(kind, S, T, cap):
    # Yields Phi(p^l)(S, T) for l = 1..cap; the named relations use their
    # one-step recursions, anything else re-evaluates p^l.
    if kind.name == "n-inverse":
        b = ExactMatrix.identity(S.dim)
        for _ in range(cap):
            b = S @ b @ T - b
            yield b
    elif kind.name == "helton":
        g = ExactMatrix.identity(S.dim)
        for _ in range(cap):
            g = S @ g - g @ T
            yield g
    else:
        power = CommPoly.one()
        for _ in range(cap):
            power = power * kind.poly
            yield nc_eval(phi(power), S, T)


def min_order(kind, S, T, cap):
    """Least l <= cap with Phi(p^l)(S, T) = 0, or None."""
    if cap < 1:
        raise PreconditionError("cap must be at least 1")
    _check_pair(S, T)
    for l, value in enumerate(_order_values(kind, S, T, cap), start=1):
        if value.is_zero():
            return l
    return None


def combined_pair(dkind, S1, T1, S2, T2):
    """The pair on the tensor product space built according to ``dkind``.

    For PERTURB_X the second pair is (Q, ignored) and the result is
    (S1 (x) I + I (x) Q, T1 (x) I).
    """
    _check_pair(S1, T1)
    if dkind is DeltaKind.TENSOR_PRODUCT:
        _check_pair(S2, T2)
        return kron(S1, S2), kron(T1, T2)
    if dkind is DeltaKind.PERTURB_X:
        return tensor_sum(S1, S2), kron(T1, ExactMatrix.identity(S2.dim))
    _check_pair(S2, T2)
    return tensor_sum(S1, S2), tensor_sum(T1, T2)


def eval_combined(kind, dkind, S1, T1, S2, T2, n):
    if n < 1:
        raise PreconditionError("n must be positive")
    S, T = combined_pair(dkind, S1, T1, S2, T2)
    return relation_value(kind, S, T, n)
