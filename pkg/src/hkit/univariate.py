"""Univariate polynomials over Q(i): gcd and root extraction.

A polynomial is a tuple of GaussRat coefficients, lowest degree first, with
trailing zeros trimmed; the zero polynomial is the empty tuple.
"""

from fractions import Fraction

import numpy as np

from .scalar import GaussRat, ONE, ZERO, gauss_sqrt


def trim(coeffs):
    coeffs = [GaussRat.coerce(c) for c in coeffs]
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def degree(p):
    return len(p) - 1


def evaluate(p, z):
    acc = ZERO
    for c in reversed(p):
        acc = acc * z + c
    return acc


def evaluate_complex(p, z):
    acc = 0j
    for c in reversed(p):
        acc = acc * z + complex(c)
    return acc


def monic(p):
    if not p:
        return p
    inv = p[-1].inverse()
    return tuple(c * inv for c in p)


def divmod_poly(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [ZERO] * max(len(a) - len(b) + 1, 0)
    inv = b[-1].inverse()
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] * inv
        q[shift] = f
        for k, c in enumerate(b):
            a[shift + k] = a[shift + k] - f * c
        a.pop()
        a = list(trim(a))
    return trim(q), trim(a)


def gcd_poly(a, b):
    """Monic gcd; gcd(0, 0) = 0."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def derivative(p):
    return trim([c * k for k, c in enumerate(p)][1:])


def squarefree(p):
    g = gcd_poly(p, derivative(p))
    return monic(divmod_poly(p, g)[0]) if degree(g) > 0 else monic(p)


def exact_roots(p):
    """Split p into its roots in Q(i) and the leftover factor without any.

    Returns (roots, rest) where rest is monic and has no root in Q(i).
    Degrees one and two are solved in closed form; higher degrees are
    factored over Q(i) by sympy and the linear factors read off.
    """
    p = squarefree(trim(p))
    if degree(p) <= 0:
        return [], (ONE,)
    if degree(p) == 1:
        return [-p[0] / p[1]], (ONE,)
    if degree(p) == 2:
        c, b, _ = p
        root = gauss_sqrt(b * b - c * 4)
        if root is None:
            return [], p
        return [(-b + root) / 2, (-b - root) / 2], (ONE,)
    return _sympy_roots(p)


def _sympy_roots(p):
    import sympy

    lam = sympy.Symbol("lam")
    expr = sum(
        (sympy.Rational(c.re.numerator, c.re.denominator)
         + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)) * lam ** k
        for k, c in enumerate(p)
    )
    _, factors = sympy.Poly(expr, lam, domain="QQ_I").factor_list()
    roots, rest = [], (ONE,)
    for factor, _ in factors:
        coeffs = [_from_sympy(c) for c in reversed(factor.all_coeffs())]
        if len(coeffs) == 2:
            roots.append(-coeffs[0] / coeffs[1])
        else:
            rest = mul_poly(rest, monic(trim(coeffs)))
    return roots, rest


def _from_sympy(c):
    re, im = c.as_real_imag()
    return GaussRat(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def mul_poly(a, b):
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return trim(out)


def numeric_roots(p, polish=8):
    """Complex roots of p by companion matrix, Newton-polished."""
    if degree(p) <= 0:
        return []
    coeffs = np.array([complex(c) for c in reversed(p)])
    roots = np.roots(coeffs)
    dp = derivative(p)
    out = []
    for z in roots:
        z = complex(z)
        for _ in range(polish):
            d = evaluate_complex(dp, z)
            if d == 0:
                break
            step = evaluate_complex(p, z) / d
            z -= step
            if abs(step) <= 1e-17 * max(1.0, abs(z)):
                break
        out.append(z)
    return out
