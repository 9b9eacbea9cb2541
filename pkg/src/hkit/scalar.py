"""Exact Gaussian rationals: complex numbers with rational parts."""

from fractions import Fraction
from numbers import Rational


class GaussRat:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussRat):
            if im:
                raise TypeError("GaussRat real part must be rational")
            re, im = re.re, re.im
        if not isinstance(re, Rational) or not isinstance(im, Rational):
            raise TypeError(f"GaussRat parts must be rational, got {re!r}, {im!r}")
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @classmethod
    def coerce(cls, value):
        if isinstance(value, GaussRat):
            return value
        return cls(value)

    # -- predicates -------------------------------------------------------

    def is_zero(self):
        return not self.re and not self.im

    def is_real(self):
        return not self.im

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, Rational):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- arithmetic -------------------------------------------------------

    def __neg__(self):
        return _new(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if not isinstance(other, GaussRat):
            if not isinstance(other, Rational):
                return NotImplemented
            return _new(self.re + other, self.im)
        return _new(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussRat):
            if not isinstance(other, Rational):
                return NotImplemented
            return _new(self.re - other, self.im)
        return _new(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if not isinstance(other, GaussRat):
            if not isinstance(other, Rational):
                return NotImplemented
            return _new(self.re * other, self.im * other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return _new(a * c, _FZERO)
        return _new(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def norm(self):
        """Squared modulus, an exact rational."""
        return self.re * self.re + self.im * self.im

    def conjugate(self):
        return _new(self.re, -self.im)

    def inverse(self):
        n = self.norm()
        if not n:
            raise ZeroDivisionError("GaussRat division by zero")
        return _new(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if not isinstance(other, GaussRat):
            if not isinstance(other, Rational):
                return NotImplemented
            if not other:
                raise ZeroDivisionError("GaussRat division by zero")
            return _new(self.re / other, self.im / other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    # -- text -------------------------------------------------------------

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"GaussRat({format_scalar(self)!r})"


def _fmt_rational(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(z):
    """Text form in the scalar grammar: ``a/b``, ``c/d*i`` or ``a/b+c/d*i``."""
    if not z.im:
        return _fmt_rational(z.re)
    if z.im == 1:
        imag = "i"
    elif z.im == -1:
        imag = "-i"
    else:
        imag = f"{_fmt_rational(z.im)}*i"
    if not z.re:
        return imag
    sign = "" if imag.startswith("-") else "+"
    return f"{_fmt_rational(z.re)}{sign}{imag}"


def _new(re, im):
    z = object.__new__(GaussRat)
    object.__setattr__(z, "re", re)
    object.__setattr__(z, "im", im)
    return z


_FZERO = Fraction(0)
ZERO = GaussRat(0)
ONE = GaussRat(1)
I_UNIT = GaussRat(0, 1)


def gauss_sqrt(z):
    """Exact square root in Q(i) if one exists, else None.

    Returns the root with positive real part (or positive imaginary part when
    the real part vanishes).
    """
    z = GaussRat.coerce(z)
    if z.is_zero():
        return ZERO
    modulus = rational_sqrt(z.norm())
    if modulus is None:
        return None
    re = rational_sqrt((z.re + modulus) / 2)
    if re is None:
        return None
    if re:
        root = GaussRat(re, z.im / (2 * re))
    else:
        im = rational_sqrt((modulus - z.re) / 2)
        if im is None:
            return None
        root = GaussRat(0, im)
    return root if root * root == z else None


def rational_sqrt(q):
    return rational_root(q, 2)


def rational_root(q, k):
    q = Fraction(q)
    if q < 0:
        if k % 2 == 0:
            return None
        r = rational_root(-q, k)
        return None if r is None else -r
    num = _int_root(q.numerator, k)
    den = _int_root(q.denominator, k)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _int_root(n, k):
    if n < 2:
        return n
    r = round(n ** (1.0 / k)) if n < 2 ** 1000 else _int_root_newton(n, k)
    for c in (r - 1, r, r + 1):
        if c >= 0 and c ** k == n:
            return c
    r = _int_root_newton(n, k)
    return r if r ** k == n else None


def _int_root_newton(n, k):
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y
