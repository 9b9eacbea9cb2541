"""Quasi-homogeneity of bivariate polynomials and decomposition certificates.

A polynomial is quasi-homogeneous when its support lies on one affine line
w1*i + w2*j = d. The two irreducible shapes A(x^a y^b - B) and
A(B x^a - y^b) with gcd(a, b) = 1 are the ones the splitting solvers know
how to handle; for them ``make_certificate`` writes the tensor image of p as
f*q1(x1, y1) + g*q2(x2, y2), which is checked exactly by
``verify_certificate``.
"""

from dataclasses import dataclass
from math import gcd
from typing import Optional, Union

from .errors import PreconditionError
from .poly import CommPoly, CommPoly4, DeltaKind, embed_first, embed_second, hat, shift_x
from .scalar import GaussRat


@dataclass(frozen=True)
class ProductForm:
    """A * (x^alpha * y^beta - B)."""

    A: GaussRat
    B: GaussRat
    alpha: int
    beta: int

    def expand(self):
        return CommPoly({(self.alpha, self.beta): self.A, (0, 0): -self.A * self.B})


@dataclass(frozen=True)
class DifferenceForm:
    """A * (B * x^alpha - y^beta)."""

    A: GaussRat
    B: GaussRat
    alpha: int
    beta: int

    def expand(self):
        return CommPoly({(self.alpha, 0): self.A * self.B, (0, self.beta): -self.A})


CanonicalForm = Union[ProductForm, DifferenceForm]


@dataclass(frozen=True)
class QhClass:
    weights: tuple
    quasi_degree: int
    canonical_form: Optional[CanonicalForm] = None


def _primitive_normal(di, dj):
    """Primitive integer normal to (di, dj), first nonzero entry positive."""
    w1, w2 = dj, -di
    g = gcd(abs(w1), abs(w2))
    w1, w2 = w1 // g, w2 // g
    if w1 < 0 or (w1 == 0 and w2 < 0):
        w1, w2 = -w1, -w2
    return w1, w2


def classify_qh(p):
    """QhClass for quasi-homogeneous p, None when the support is not collinear."""
    if p.is_zero():
        raise PreconditionError("cannot classify the zero polynomial")
    support = sorted(p.support())
    if len(support) == 1:
        (i, j), = support
        if j == 0:
            return QhClass((1, 0), i)
        return QhClass(_primitive_normal(i, j), 0)
    i0, j0 = support[0]
    di, dj = support[1][0] - i0, support[1][1] - j0
    for i, j in support[2:]:
        if di * (j - j0) - dj * (i - i0) != 0:
            return None
    weights = _primitive_normal(di, dj)
    degree = weights[0] * i0 + weights[1] * j0
    return QhClass(weights, degree, _canonical_form(p))


def _canonical_form(p):
    if len(p) != 2:
        return None
    (e1, c1), (e2, c2) = sorted(p.items(), reverse=True)
    if e2 == (0, 0):
        alpha, beta = e1
        if alpha > 0 and beta > 0 and gcd(alpha, beta) == 1:
            return ProductForm(c1, -c2 / c1, alpha, beta)
        return None
    if e1[1] == 0 and e2[0] == 0:
        alpha, beta = e1[0], e2[1]
        if alpha > 0 and beta > 0 and gcd(alpha, beta) == 1:
            A = -c2
            return DifferenceForm(A, c1 / A, alpha, beta)
    return None


@dataclass(frozen=True)
class Certificate:
    """hat(p, kind) == f * q1(x1, y1) + g * q2(x2, y2)."""

    q1: CommPoly
    q2: CommPoly
    f: CommPoly4
    g: CommPoly4
    kind: DeltaKind


def _mono4(i1=0, j1=0, i2=0, j2=0, c=1):
    return CommPoly4({(i1, j1, i2, j2): c})


def make_certificate(p, kind, lam):
    lam = GaussRat.coerce(lam)
    if kind is DeltaKind.TENSOR_PRODUCT:
        if not lam:
            raise PreconditionError("lambda must be nonzero for a tensor-product certificate")
        qh = classify_qh(p)
        if qh is None or qh.canonical_form is None:
            raise PreconditionError(f"{p} has no irreducible quasi-homogeneous canonical form")
        form = qh.canonical_form
        A, B, a, b = form.A, form.B, form.alpha, form.beta
        if isinstance(form, ProductForm):
            # u1 u2 - B = (u1 - lam) u2 + lam (u2 - B/lam),  u = x^a y^b
            q1 = CommPoly({(a, b): 1, (0, 0): -lam})
            q2 = CommPoly({(a, b): 1, (0, 0): -B / lam})
            return Certificate(q1, q2, _mono4(i2=a, j2=b, c=A), _mono4(c=A * lam), kind)
        # B x1^a x2^a - y1^b y2^b = (B x1^a - lam y1^b) x2^a + lam y1^b (x2^a - y2^b/lam)
        q1 = CommPoly({(a, 0): B, (0, b): -lam})
        q2 = CommPoly({(a, 0): 1, (0, b): -lam.inverse()})
        return Certificate(q1, q2, _mono4(i2=a, c=A), _mono4(j1=b, c=A * lam), kind)

    if kind is DeltaKind.PERTURB_X:
        if p.degree_in("x") > 1:
            raise PreconditionError(f"{p} is not linear in x")
        # p(x1 + x2, y1) = p(x1 + lam, y1) + (x2 - lam) * alpha(y1)
        alpha_y1 = CommPoly4({(0, j, 0, 0): c for (i, j), c in p.items() if i == 1})
        q2 = CommPoly({(1, 0): 1, (0, 0): -lam})
        return Certificate(shift_x(p, lam), q2, CommPoly4.one(), alpha_y1, kind)

    c = p.coeff((1, 0))
    if len(p) != 2 or not c or p.coeff((0, 1)) != -c:
        raise PreconditionError(f"{p} is not a scalar multiple of x - y")
    # (x1 + x2) - (y1 + y2) = (x1 - y1 + lam) + (x2 - y2 - lam)
    q1 = CommPoly({(1, 0): 1, (0, 1): -1, (0, 0): lam})
    q2 = CommPoly({(1, 0): 1, (0, 1): -1, (0, 0): -lam})
    return Certificate(q1, q2, CommPoly4.constant(c), CommPoly4.constant(c), kind)


def certificate_residual(p, cert):
    return hat(p, cert.kind) - cert.f * embed_first(cert.q1) - cert.g * embed_second(cert.q2)


def verify_certificate(p, cert):
    return certificate_residual(p, cert).is_zero()
