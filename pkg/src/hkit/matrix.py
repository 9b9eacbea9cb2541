"""Dense square matrices over the Gaussian rationals."""

from fractions import Fraction
from math import lcm

import numpy as np

from .errors import DimensionMismatch
from .scalar import GaussRat, ONE, ZERO, _new


class ExactMatrix:
    __slots__ = ("dim", "rows", "_hash")

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0:
            raise ValueError("matrix dimension must be positive")
        for r in rows:
            if len(r) != n:
                raise DimensionMismatch(f"matrix must be square, got a row of length {len(r)} in a {n}-row matrix")
        self.dim = n
        self.rows = tuple(tuple(GaussRat.coerce(v) for v in r) for r in rows)
        self._hash = None

    @classmethod
    def _wrap(cls, rows):
        m = object.__new__(cls)
        m.dim = len(rows)
        m.rows = rows
        m._hash = None
        return m

    @classmethod
    def identity(cls, n):
        return cls._wrap(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, n):
        return cls._wrap(tuple((ZERO,) * n for _ in range(n)))

    @classmethod
    def scalar(cls, c, n):
        c = GaussRat.coerce(c)
        return cls._wrap(tuple(tuple(c if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, values):
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, idx):
        r, c = idx
        return self.rows[r][c]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(v) for v in r) + "]" for r in self.rows)
        return f"ExactMatrix([{body}])"

    def is_zero(self):
        return all(not v for r in self.rows for v in r)

    def _check(self, other):
        if self.dim != other.dim:
            raise DimensionMismatch(f"dimension mismatch: {self.dim} vs {other.dim}")

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check(other)
        return ExactMatrix._wrap(tuple(
            tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)
        ))

    def __sub__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check(other)
        return ExactMatrix._wrap(tuple(
            tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)
        ))

    def __neg__(self):
        return ExactMatrix._wrap(tuple(tuple(-a for a in r) for r in self.rows))

    def scale(self, c):
        c = GaussRat.coerce(c)
        if not c:
            return ExactMatrix.zeros(self.dim)
        return ExactMatrix._wrap(tuple(tuple(a * c for a in r) for r in self.rows))

    def __mul__(self, c):
        if isinstance(c, ExactMatrix):
            return NotImplemented
        try:
            return self.scale(c)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check(other)
        # Clear denominators and multiply Gaussian integers; Fraction products
        # would normalize on every step.
        (ar, ai), da = _integer_parts(self.rows)
        (br, bi), db = _integer_parts(other.rows)
        n = self.dim
        den = da * db
        out = []
        for r in range(n):
            row_r, row_i = ar[r], ai[r]
            acc_r, acc_i = [0] * n, [0] * n
            for k in range(n):
                x, y = row_r[k], row_i[k]
                if not (x or y):
                    continue
                ur, ui = br[k], bi[k]
                for j in range(n):
                    u, v = ur[j], ui[j]
                    if u or v:
                        acc_r[j] += x * u - y * v
                        acc_i[j] += x * v + y * u
            out.append(tuple(_from_integer(acc_r[j], acc_i[j], den) for j in range(n)))
        return ExactMatrix._wrap(tuple(out))

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = ExactMatrix.identity(self.dim), self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def add_scalar(self, c):
        """self + c*I."""
        return self + ExactMatrix.scalar(c, self.dim)

    def trace(self):
        t = ZERO
        for i in range(self.dim):
            t = t + self.rows[i][i]
        return t

    def adjoint(self):
        n = self.dim
        return ExactMatrix._wrap(tuple(
            tuple(self.rows[j][i].conjugate() for j in range(n)) for i in range(n)
        ))

    def is_hermitian(self):
        return self == self.adjoint()

    # -- linear algebra ---------------------------------------------------

    def rank(self):
        m = [list(r) for r in self.rows]
        n = self.dim
        rank = 0
        for col in range(n):
            pivot = next((r for r in range(rank, n) if m[r][col]), None)
            if pivot is None:
                continue
            m[rank], m[pivot] = m[pivot], m[rank]
            inv = m[rank][col].inverse()
            for r in range(rank + 1, n):
                if m[r][col]:
                    f = m[r][col] * inv
                    m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
            rank += 1
        return rank

    def is_invertible(self):
        return self.rank() == self.dim

    def inverse(self):
        n = self.dim
        m = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(self.rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if m[r][col]), None)
            if pivot is None:
                raise ZeroDivisionError("matrix is singular")
            m[col], m[pivot] = m[pivot], m[col]
            inv = m[col][col].inverse()
            m[col] = [a * inv for a in m[col]]
            for r in range(n):
                if r != col and m[r][col]:
                    f = m[r][col]
                    m[r] = [a - f * b for a, b in zip(m[r], m[col])]
        return ExactMatrix._wrap(tuple(tuple(r[n:]) for r in m))

    def to_complex(self):
        return np.array([[complex(v) for v in r] for r in self.rows], dtype=complex)

    def frobenius(self):
        """Frobenius norm as a float (for reports only)."""
        return float(sum(v.norm() for r in self.rows for v in r)) ** 0.5


def _integer_parts(rows):
    den = 1
    for row in rows:
        for z in row:
            den = lcm(den, z.re.denominator, z.im.denominator)
    re = [[z.re.numerator * (den // z.re.denominator) for z in row] for row in rows]
    im = [[z.im.numerator * (den // z.im.denominator) for z in row] for row in rows]
    return (re, im), den


def _from_integer(re, im, den):
    if not (re or im):
        return ZERO
    return _new(Fraction(re, den), Fraction(im, den))


def kron(a, b):
    """Kronecker product; block (r, c) is a[r, c] * b."""
    n, m = a.dim, b.dim
    rows = []
    for r in range(n):
        for br in range(m):
            row = []
            for c in range(n):
                x = a.rows[r][c]
                brow = b.rows[br]
                row.extend(x * y if x and y else ZERO for y in brow)
            rows.append(tuple(row))
    return ExactMatrix._wrap(tuple(rows))


def tensor_sum(a, b):
    """a (x) I + I (x) b."""
    return kron(a, ExactMatrix.identity(b.dim)) + kron(ExactMatrix.identity(a.dim), b)


def adjoint(a):
    return a.adjoint()


def nilpotency_index(a):
    """Least m <= dim with a^m = 0, or None if a is not nilpotent."""
    power = a
    for m in range(1, a.dim + 1):
        if power.is_zero():
            return m
        power = power @ a
    return None


def perfect_shuffle(n, m):
    """Permutation P with P (A (x) B) P^-1 = B (x) A for dim A = n, dim B = m."""
    rows = [[0] * (n * m) for _ in range(n * m)]
    for i in range(n):
        for j in range(m):
            rows[j * n + i][i * m + j] = 1
    return ExactMatrix(rows)
