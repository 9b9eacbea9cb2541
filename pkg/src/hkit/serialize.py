"""JSON forms of matrices, certificates, witnesses and manifests."""

from dataclasses import dataclass, field
from typing import Optional

from .calculus import RelationKind
from .errors import HkitError, ParseError
from .matrix import ExactMatrix
from .poly import DeltaKind, embed_first, embed_second, parse_scalar
from .scalar import GaussRat, format_scalar


class SchemaError(HkitError, ValueError):
    """A JSON document does not match the expected schema."""


# -- scalars and matrices -----------------------------------------------------

def scalar_to_json(z):
    z = GaussRat.coerce(z)
    if z.is_real() and z.re.denominator == 1:
        return int(z.re)
    return format_scalar(z)


def scalar_from_json(value, where="scalar"):
    try:
        return parse_scalar(value)
    except ParseError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def matrix_to_json(A):
    return {"dim": A.dim, "entries": [[scalar_to_json(v) for v in row] for row in A.rows]}


def matrix_from_json(obj, where="matrix"):
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object with 'dim' and 'entries'")
    extra = set(obj) - {"dim", "entries"}
    if extra:
        raise SchemaError(f"{where}: unknown fields {sorted(extra)}")
    dim, entries = obj.get("dim"), obj.get("entries")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise SchemaError(f"{where}: 'dim' must be a positive integer")
    if not isinstance(entries, list) or len(entries) != dim:
        raise SchemaError(f"{where}: 'entries' must be a list of {dim} rows")
    rows = []
    for r, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != dim:
            raise SchemaError(f"{where}: row {r} must have {dim} entries")
        rows.append([scalar_from_json(v, f"{where}[{r}][{c}]") for c, v in enumerate(row)])
    return ExactMatrix(rows)


# -- certificates and witnesses -----------------------------------------------

def certificate_to_json(cert):
    return {
        "kind": cert.kind.value,
        "q1": str(embed_first(cert.q1)),
        "q2": str(embed_second(cert.q2)),
        "f": str(cert.f),
        "g": str(cert.g),
    }


def lambda_to_json(lam):
    if isinstance(lam, GaussRat):
        return format_scalar(lam)
    z = complex(lam.value)
    return {"approx": [z.real, z.imag], "residual": float(lam.residual)}


def witness_to_json(w):
    return {
        "lambda": lambda_to_json(w.lam),
        "l": w.l,
        "m": w.m,
        "verified": w.verified,
        "relation": w.relation,
        "delta": w.delta,
    }


# -- relation names -------------------------------------------------------------

ADJOINT_RELATIONS = ("nsym", "nsym2")


def parse_relation(text):
    """Relation name -> (RelationKind, adjoint flavour or None)."""
    if not isinstance(text, str):
        raise SchemaError("relation must be a string")
    if text == "n-inverse":
        return RelationKind.n_inverse(), None
    if text == "helton":
        return RelationKind.helton(), None
    if text in ADJOINT_RELATIONS:
        return RelationKind.helton(), text
    if text.startswith("general:"):
        try:
            return RelationKind.general(text[len("general:"):]), None
        except ParseError as exc:
            raise SchemaError(f"relation polynomial: {exc}") from None
    raise SchemaError(f"unknown relation {text!r}")


def parse_delta(text):
    try:
        return DeltaKind(text)
    except ValueError:
        choices = ", ".join(d.value for d in DeltaKind)
        raise SchemaError(f"unknown delta {text!r} (expected one of {choices})") from None


# -- manifests --------------------------------------------------------------------

MANIFEST_FIELDS = {"relation", "delta", "n", "operands", "options"}
OPTION_FIELDS = {"cap", "numeric_fallback"}


@dataclass
class Manifest:
    relation: str
    n: int
    operands: dict
    delta: Optional[str] = None
    cap: Optional[int] = None
    numeric_fallback: bool = True
    source: dict = field(default_factory=dict, repr=False)


def _positive_int(value, where):
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise SchemaError(f"{where} must be a positive integer")
    return value


def manifest_from_json(obj, load_operand):
    """Validate a manifest object; ``load_operand`` resolves file references."""
    if not isinstance(obj, dict):
        raise SchemaError("manifest must be a JSON object")
    extra = set(obj) - MANIFEST_FIELDS
    if extra:
        raise SchemaError(f"manifest: unknown fields {sorted(extra)}")
    for key in ("relation", "n", "operands"):
        if key not in obj:
            raise SchemaError(f"manifest: missing field {key!r}")
    relation = obj["relation"]
    parse_relation(relation)
    delta = obj.get("delta")
    if delta is not None:
        parse_delta(delta)
    n = _positive_int(obj["n"], "manifest 'n'")
    operands = obj["operands"]
    if not isinstance(operands, dict) or not operands:
        raise SchemaError("manifest 'operands' must be a non-empty object")
    matrices = {}
    for name, ref in operands.items():
        if isinstance(ref, str):
            matrices[name] = matrix_from_json(load_operand(ref), f"operand {name} ({ref})")
        else:
            matrices[name] = matrix_from_json(ref, f"operand {name}")
    options = obj.get("options", {})
    if not isinstance(options, dict):
        raise SchemaError("manifest 'options' must be an object")
    extra = set(options) - OPTION_FIELDS
    if extra:
        raise SchemaError(f"manifest options: unknown fields {sorted(extra)}")
    cap = options.get("cap")
    if cap is not None:
        _positive_int(cap, "option 'cap'")
    fallback = options.get("numeric_fallback", True)
    if not isinstance(fallback, bool):
        raise SchemaError("option 'numeric_fallback' must be a boolean")
    return Manifest(relation, n, matrices, delta, cap, fallback, obj)


def manifest_to_json(relation, n, operands, delta=None, options=None):
    obj = {"relation": relation, "n": n}
    if delta is not None:
        obj["delta"] = delta
    obj["operands"] = {name: matrix_to_json(A) for name, A in operands.items()}
    if options:
        obj["options"] = options
    return obj
