"""Sparse commutative polynomials over Q(i) in two and four variables.

``CommPoly`` lives in C[x, y]; ``CommPoly4`` lives in C[x1, y1, x2, y2] and
holds the images of the tensor maps and the decomposition certificates.
Both are immutable and canonical: one entry per exponent tuple and no
stored zero coefficients.
"""

import enum
import re
from math import comb

from .errors import ExponentOverflow, ParseError
from .scalar import GaussRat, ONE, ZERO, format_scalar

MAX_EXPONENT = 2 ** 16


class SparsePoly:
    names = ()
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        nvars = len(self.names)
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"expected {nvars} exponents, got {exps}")
            if min(exps) < 0:
                raise ValueError(f"negative exponent in {exps}")
            _check_cap(exps)
            coeff = GaussRat.coerce(coeff)
            if coeff:
                clean[exps] = clean.get(exps, ZERO) + coeff
        self._terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _wrap(cls, terms):
        # trusted constructor: exps validated, coefficients nonzero
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls):
        return cls._wrap({})

    @classmethod
    def constant(cls, c):
        c = GaussRat.coerce(c)
        return cls._wrap({(0,) * len(cls.names): c} if c else {})

    @classmethod
    def one(cls):
        return cls.constant(ONE)

    @classmethod
    def var(cls, name):
        k = cls.names.index(name)
        exps = tuple(1 if v == k else 0 for v in range(len(cls.names)))
        return cls._wrap({exps: ONE})

    @classmethod
    def monomial(cls, exps, coeff=ONE):
        return cls({tuple(exps): coeff})

    @classmethod
    def parse(cls, text):
        return _Parser(text, cls).parse()

    # -- access -----------------------------------------------------------

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, exps):
        return self._terms.get(tuple(exps), ZERO)

    def support(self):
        return set(self._terms)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(not any(e) for e in self._terms)

    def constant_term(self):
        return self._terms.get((0,) * len(self.names), ZERO)

    def total_degree(self):
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, name):
        k = self.names.index(name)
        return max((e[k] for e in self._terms), default=-1)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            return type(self) is type(other) and self._terms == other._terms
        if isinstance(other, (int, GaussRat)):
            return self._terms == type(self).constant(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, SparsePoly):
            raise TypeError(f"cannot mix {type(self).__name__} and {type(other).__name__}")
        try:
            return type(self).constant(other)
        except TypeError:
            return None

    def __neg__(self):
        return self._wrap({e: -c for e, c in self._terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return self._wrap(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, ZERO) + c1 * c2
        for e in out:
            _check_cap(e)
        return self._wrap({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        scalar = GaussRat.coerce(scalar)
        inv = scalar.inverse()
        return self._wrap({e: c * inv for e, c in self._terms.items()})

    def __pow__(self, n):
        return poly_pow(self, n)

    def map_coefficients(self, fn):
        return type(self)({e: fn(e, c) for e, c in self._terms.items()})

    def substitute(self, images, target):
        """Ring homomorphism sending variable k to ``images[k]`` in ``target``."""
        images = [target.constant(g) if not isinstance(g, SparsePoly) else g for g in images]
        powers = [{0: target.one()} for _ in images]

        def power(k, e):
            cache = powers[k]
            if e not in cache:
                cache[e] = power(k, e - 1) * images[k]
            return cache[e]

        out = target.zero()
        for exps, c in self._terms.items():
            term = target.constant(c)
            for k, e in enumerate(exps):
                if e:
                    term = term * power(k, e)
            out = out + term
        return out

    # -- text -------------------------------------------------------------

    def sorted_terms(self):
        """Terms in graded-lex order, highest first."""
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.names, exps) if e
            )
            if c.re and c.im:
                sign, body = "+", f"({format_scalar(c)})"
            else:
                text = format_scalar(c)
                sign, body = ("-", text[1:]) if text.startswith("-") else ("+", text)
            if mono:
                if body == "1":
                    body = mono
                elif body == "i":
                    body = f"i*{mono}"
                else:
                    body = f"{body}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"


class CommPoly(SparsePoly):
    names = ("x", "y")
    __slots__ = ()


class CommPoly4(SparsePoly):
    names = ("x1", "y1", "x2", "y2")
    __slots__ = ()


def _check_cap(exps):
    for e in exps:
        if e > MAX_EXPONENT:
            raise ExponentOverflow(f"exponent {e} exceeds cap {MAX_EXPONENT}")


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S)")
_SPACE = re.compile(r"\s*")


class _Parser:
    """Recursive-descent parser for sums, products and powers of polynomials."""

    def __init__(self, text, cls):
        self.text = text
        self.cls = cls
        self.tokens = []
        pos = 0
        while pos < len(text):
            pos = _SPACE.match(text, pos).end()
            if pos == len(text):
                break
            m = _TOKEN.match(text, pos)
            kind = "num" if m.group(1) else "name" if m.group(2) else "op"
            value = m.group(m.lastindex)
            start = m.start(m.lastindex)
            if kind == "op" and value not in "+-*/^()":
                raise ParseError(f"unexpected character {value!r}", self._offset(start))
            self.tokens.append((kind, value, start))
            pos = m.end()
        self.i = 0

    def _offset(self, char_pos):
        return len(self.text[:char_pos].encode("utf-8"))

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def _take(self):
        tok = self._peek()
        self.i += 1
        return tok

    def _error(self, message, tok=None):
        tok = tok or self._peek()
        return ParseError(message, self._offset(tok[2]))

    def parse(self):
        if not self.tokens:
            raise ParseError("empty polynomial", self._offset(len(self.text)))
        p = self._expr()
        if self.i != len(self.tokens):
            raise self._error(f"unexpected token {self._peek()[1]!r}")
        return p

    def _expr(self):
        kind, value, _ = self._peek()
        negate = False
        if kind == "op" and value in "+-":
            self._take()
            negate = value == "-"
        acc = self._term()
        if negate:
            acc = -acc
        while True:
            kind, value, _ = self._peek()
            if kind == "op" and value in "+-":
                self._take()
                t = self._term()
                acc = acc + t if value == "+" else acc - t
            else:
                return acc

    def _term(self):
        acc = self._factor()
        while True:
            kind, value, _ = self._peek()
            if kind == "op" and value in "*/":
                tok = self._take()
                f = self._factor()
                if value == "*":
                    acc = acc * f
                else:
                    if not f.is_constant() or f.is_zero():
                        raise self._error("divisor must be a nonzero constant", tok)
                    acc = acc / f.constant_term()
            else:
                return acc

    def _factor(self):
        base = self._atom()
        kind, value, _ = self._peek()
        if kind == "op" and value == "^":
            self._take()
            tok = self._take()
            if tok[0] != "num":
                raise self._error("exponent must be a nonnegative integer", tok)
            e = int(tok[1])
            if e > MAX_EXPONENT:
                raise ExponentOverflow(f"exponent {e} exceeds cap {MAX_EXPONENT}")
            return poly_pow(base, e)
        return base

    def _atom(self):
        tok = self._take()
        kind, value, _ = tok
        if kind == "num":
            return self.cls.constant(int(value))
        if kind == "name":
            if value == "i":
                return self.cls.constant(GaussRat(0, 1))
            if value in self.cls.names:
                return self.cls.var(value)
            raise self._error(f"unknown variable {value!r}", tok)
        if kind == "op" and value == "(":
            inner = self._expr()
            close = self._take()
            if close[1] != ")":
                raise self._error("expected ')'", close)
            return inner
        if kind == "op" and value == "-":
            return -self._factor()
        raise self._error("unexpected end of input" if kind is None else f"unexpected token {value!r}", tok)


def parse_poly(text):
    """Parse ``text`` into a canonical ``CommPoly`` in x, y."""
    return CommPoly.parse(text)


def parse_poly4(text):
    return CommPoly4.parse(text)


def parse_scalar(text):
    """Parse a scalar such as ``3``, ``-1/2`` or ``1/2-3/4*i``."""
    if isinstance(text, int) and not isinstance(text, bool):
        return GaussRat(text)
    if not isinstance(text, str):
        raise ParseError(f"scalar must be a string or integer, got {type(text).__name__}", 0)
    p = CommPoly.parse(text)
    if not p.is_constant():
        raise ParseError(f"expected a scalar, got {text!r}", 0)
    return p.constant_term()


# -- operations ---------------------------------------------------------------

def poly_pow(p, n):
    if n < 0:
        raise ValueError("negative power")
    result, base = type(p).one(), p
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def scale_vars(p, lam, mu):
    """p(lam*x, mu*y): the coefficient of x^i y^j gains lam^i mu^j."""
    lam, mu = GaussRat.coerce(lam), GaussRat.coerce(mu)
    return CommPoly({(i, j): c * lam ** i * mu ** j for (i, j), c in p.items()})


def weighted_scale(p, t, weights):
    """p(t^w1 x, t^w2 y); weights may be negative, t must then be nonzero."""
    t = GaussRat.coerce(t)
    w1, w2 = weights
    return CommPoly({(i, j): c * t ** (w1 * i + w2 * j) for (i, j), c in p.items()})


def shift_x(p, lam):
    """p(x + lam, y), binomially expanded."""
    lam = GaussRat.coerce(lam)
    out = {}
    for (i, j), c in p.items():
        for k in range(i + 1):
            e = (k, j)
            out[e] = out.get(e, ZERO) + c * comb(i, k) * lam ** (i - k)
    return CommPoly(out)


class DeltaKind(enum.Enum):
    TENSOR_PRODUCT = "tensor-product"
    PERTURB_X = "perturb"
    TENSOR_SUM = "tensor-sum"

    def images(self):
        x1, y1, x2, y2 = (CommPoly4.var(v) for v in CommPoly4.names)
        if self is DeltaKind.TENSOR_PRODUCT:
            return [x1 * x2, y1 * y2]
        if self is DeltaKind.PERTURB_X:
            return [x1 + x2, y1]
        return [x1 + x2, y1 + y2]


def hat(p, kind):
    """Image of p under the tensor map of ``kind``, as a CommPoly4."""
    return p.substitute(kind.images(), CommPoly4)


def embed_first(q):
    """(x, y) -> (x1, y1)."""
    return CommPoly4({(i, j, 0, 0): c for (i, j), c in q.items()})


def embed_second(q):
    """(x, y) -> (x2, y2)."""
    return CommPoly4({(0, 0, i, j): c for (i, j), c in q.items()})
