"""Exact hereditary functional calculus on matrix pairs and splitting witnesses."""

from .calculus import (
    NcPoly, RelationKind, beta_n, eval_combined, gamma_n, min_order, nc_eval, phi,
)
from .errors import (
    CapExceeded, DimensionMismatch, HkitError, ImaginaryViolation, InternalContradiction,
    ModulusViolation, NoSplit, NotSatisfied, ParseError, PreconditionError, QNotShiftedNilpotent,
)
from .matrix import ExactMatrix, adjoint, kron, nilpotency_index, tensor_sum
from .poly import CommPoly, CommPoly4, DeltaKind, hat, parse_poly, poly_pow, scale_vars, shift_x
from .quasihom import classify_qh, make_certificate, verify_certificate
from .scalar import GaussRat
from .splitting import (
    SplitWitness, common_roots, lambda_pencil, split_nsym, split_nsym2, split_perturbation,
    split_tensor_product, split_tensor_sum_helton,
)

__version__ = "0.1.0"

__all__ = [
    "NcPoly",
    "RelationKind",
    "beta_n",
    "eval_combined",
    "gamma_n",
    "min_order",
    "nc_eval",
    "phi",
    "CapExceeded",
    "DimensionMismatch",
    "HkitError",
    "ImaginaryViolation",
    "InternalContradiction",
    "ModulusViolation",
    "NoSplit",
    "NotSatisfied",
    "ParseError",
    "PreconditionError",
    "QNotShiftedNilpotent",
    "ExactMatrix",
    "adjoint",
    "kron",
    "nilpotency_index",
    "tensor_sum",
    "CommPoly",
    "CommPoly4",
    "DeltaKind",
    "hat",
    "parse_poly",
    "poly_pow",
    "scale_vars",
    "shift_x",
    "classify_qh",
    "make_certificate",
    "verify_certificate",
    "GaussRat",
    "SplitWitness",
    "common_roots",
    "lambda_pencil",
    "split_nsym",
    "split_nsym2",
    "split_perturbation",
    "split_tensor_product",
    "split_tensor_sum_helton",
]
