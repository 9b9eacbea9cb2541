"""hkit command line: check, split, classify, certify, generate.

Exit codes
  0  success (relation holds, exact witness, certificate verified)
  1  relation fails / NotSatisfied / certificate does not verify
  2  I/O, parse, schema or precondition errors
  3  split found only a numeric witness
  4  NoSplit or an internal contradiction (a bug on exact input)
"""

import argparse
import io
import json
import os
import sys

from .calculus import combined_pair, min_order, relation_value
from .errors import (
    CapExceeded, DimensionMismatch, HkitError, InternalContradiction, NoSplit, NotSatisfied,
    ParseError, PreconditionError,
)
from .generators import InstanceSpec, gen_combined_instance
from .limits import MAX_ORDER, check_dim, check_order
from .poly import DeltaKind, parse_poly, parse_scalar
from .quasihom import ProductForm, classify_qh, make_certificate, verify_certificate
from .serialize import (
    SchemaError, certificate_to_json, manifest_from_json, manifest_to_json, matrix_to_json,
    parse_delta, parse_relation, scalar_to_json, witness_to_json,
)
from .splitting import (
    split_nsym, split_nsym2, split_perturbation, split_tensor_product, split_tensor_sum_helton,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_NUMERIC, EXIT_BUG = 0, 1, 2, 3, 4

INPUT_ERRORS = (SchemaError, ParseError, PreconditionError, CapExceeded, DimensionMismatch, OSError)


class _Usage(Exception):
    pass


def _emit(obj, out):
    out.write(json.dumps(obj, indent=2) + "\n")


# -- manifests ----------------------------------------------------------------------

def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: malformed JSON: {exc}") from None


def _load_manifest(args):
    obj = _load_json(args.manifest)
    if isinstance(obj, dict) and set(obj) == {"manifest", "expected"}:
        obj = obj["manifest"]  # a bundle written by ``generate``
    if not isinstance(obj, dict):
        raise SchemaError("manifest must be a JSON object")
    obj = dict(obj)
    for key, value in (("relation", args.relation), ("delta", args.delta), ("n", args.n)):
        if value is not None:
            obj[key] = value
    options = dict(obj.get("options") or {})
    if args.cap is not None:
        options["cap"] = args.cap
    if args.numeric_fallback is not None:
        options["numeric_fallback"] = args.numeric_fallback == "on"
    if options or "options" in obj:
        obj["options"] = options
    base = os.path.dirname(os.path.abspath(args.manifest))
    return manifest_from_json(obj, lambda ref: _load_json(os.path.join(base, ref)))


def _operands(manifest, names):
    missing = [n for n in names if n not in manifest.operands]
    extra = sorted(set(manifest.operands) - set(names))
    if missing or extra:
        raise SchemaError(f"operands must be exactly {list(names)}"
                          + (f"; missing {missing}" if missing else "")
                          + (f"; unexpected {extra}" if extra else ""))
    return [manifest.operands[n] for n in names]


def _layout(manifest):
    """(kind, combined S, combined T) for a check."""
    kind, flavour = parse_relation(manifest.relation)
    delta = parse_delta(manifest.delta) if manifest.delta else None
    if flavour == "nsym":
        if delta not in (None, DeltaKind.TENSOR_PRODUCT):
            raise SchemaError("nsym uses the tensor-product delta")
        if "T" in manifest.operands and delta is None:
            T, = _operands(manifest, ["T"])
            return kind, T.adjoint(), T
        T1, T2 = _operands(manifest, ["T1", "T2"])
        S, T = combined_pair(DeltaKind.TENSOR_PRODUCT, T1.adjoint(), T1, T2.adjoint(), T2)
        return kind, S, T
    if flavour == "nsym2":
        if delta not in (None, DeltaKind.TENSOR_SUM):
            raise SchemaError("nsym2 uses the tensor-sum delta")
        T1, T2 = _operands(manifest, ["T1", "T2"])
        S, T = combined_pair(DeltaKind.TENSOR_SUM, T1.adjoint(), T1, T2.adjoint(), T2)
        return kind, S, T
    if delta is None:
        S, T = _operands(manifest, ["S", "T"])
        if S.dim != T.dim:
            raise DimensionMismatch(f"S is {S.dim}x{S.dim} but T is {T.dim}x{T.dim}")
        return kind, S, T
    if delta is DeltaKind.PERTURB_X:
        S, T, Q = _operands(manifest, ["S", "T", "Q"])
        return kind, *combined_pair(delta, S, T, Q, None)
    S1, T1, S2, T2 = _operands(manifest, ["S1", "T1", "S2", "T2"])
    return kind, *combined_pair(delta, S1, T1, S2, T2)


# -- subcommands ----------------------------------------------------------------------

def cmd_check(args, out):
    manifest = _load_manifest(args)
    check_order(manifest.n)
    kind, S, T = _layout(manifest)
    check_dim(S.dim)
    value = relation_value(kind, S, T, manifest.n)
    holds = value.is_zero()
    cap = manifest.cap or max(manifest.n, MAX_ORDER)
    order = min_order(kind, S, T, min(cap, manifest.n) if holds else cap)
    report = {
        "relation": manifest.relation,
        "delta": manifest.delta,
        "n": manifest.n,
        "holds": holds,
        "strict_order": order,
        "residual": 0 if holds else {
            "nonzero_entries": sum(1 for row in value.rows for v in row if v),
            "frobenius": value.frobenius(),
            "matrix": matrix_to_json(value),
        },
    }
    _emit(report, out)
    return EXIT_OK if holds else EXIT_FAIL


def cmd_split(args, out):
    manifest = _load_manifest(args)
    n, fallback = manifest.n, manifest.numeric_fallback
    kind, flavour = parse_relation(manifest.relation)
    delta = parse_delta(manifest.delta) if manifest.delta else None
    if flavour == "nsym":
        T1, T2 = _operands(manifest, ["T1", "T2"])
        w = split_nsym(T1, T2, n, fallback)
    elif flavour == "nsym2":
        T1, T2 = _operands(manifest, ["T1", "T2"])
        w = split_nsym2(T1, T2, n, fallback)
    elif delta is DeltaKind.TENSOR_PRODUCT:
        w = split_tensor_product(*_operands(manifest, ["S1", "T1", "S2", "T2"]), n, kind, fallback)
    elif delta is DeltaKind.PERTURB_X:
        w = split_perturbation(*_operands(manifest, ["S", "T", "Q"]), n, kind)
    elif delta is DeltaKind.TENSOR_SUM:
        if kind.name != "helton":
            raise PreconditionError("tensor-sum splitting is only available for the helton relation")
        w = split_tensor_sum_helton(*_operands(manifest, ["S1", "T1", "S2", "T2"]), n, fallback)
    else:
        raise SchemaError("split needs a delta (or relation nsym / nsym2)")
    _emit(witness_to_json(w), out)
    return EXIT_OK if w.exact else EXIT_NUMERIC


def _form_to_json(form):
    if form is None:
        return None
    return {
        "shape": "product" if isinstance(form, ProductForm) else "difference",
        "A": scalar_to_json(form.A),
        "B": scalar_to_json(form.B),
        "alpha": form.alpha,
        "beta": form.beta,
    }


def cmd_classify(args, out):
    p = parse_poly(args.poly)
    qh = classify_qh(p)
    if qh is None:
        _emit({"polynomial": str(p), "quasi_homogeneous": False}, out)
    else:
        _emit({
            "polynomial": str(p),
            "quasi_homogeneous": True,
            "weights": list(qh.weights),
            "quasi_degree": qh.quasi_degree,
            "canonical_form": _form_to_json(qh.canonical_form),
        }, out)
    return EXIT_OK


def cmd_certify(args, out):
    p = parse_poly(args.poly)
    cert = make_certificate(p, parse_delta(args.delta), parse_scalar(args.lam))
    ok = verify_certificate(p, cert)
    _emit({"polynomial": str(p), "verified": ok, "certificate": certificate_to_json(cert)}, out)
    return EXIT_OK if ok else EXIT_FAIL


def _parse_dims(text):
    try:
        dims = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise SchemaError(f"--dims must look like 2,3, got {text!r}") from None
    if len(dims) != 2 or min(dims) < 1:
        raise SchemaError("--dims needs two positive integers")
    return dims


def cmd_generate(args, out):
    kind, flavour = parse_relation(args.relation)
    if flavour == "nsym":
        delta = DeltaKind.TENSOR_PRODUCT
    elif flavour == "nsym2":
        delta = DeltaKind.TENSOR_SUM
    elif args.delta is None:
        raise SchemaError("generate needs --delta for this relation")
    else:
        delta = parse_delta(args.delta)
    spec = InstanceSpec(kind, delta, args.l, args.m, parse_scalar(args.lam),
                        _parse_dims(args.dims) if args.dims else None,
                        args.seed if args.seed is not None else 0, adjoint=flavour is not None)
    inst = gen_combined_instance(spec)
    bundle = {
        "manifest": manifest_to_json(args.relation, inst.n, inst.operands,
                                     None if flavour else delta.value),
        "expected": witness_to_json(inst.expected),
    }
    text = json.dumps(bundle, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


# -- argument parsing -------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _seed(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an unsigned 64-bit seed, got {text!r}") from None
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def build_parser():
    parser = _Parser(prog="hkit", description="Hereditary calculus checks and splitting witnesses.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def manifest_command(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("manifest", help="manifest JSON (or a bundle written by generate)")
        p.add_argument("--relation", help="n-inverse | helton | nsym | nsym2 | general:<poly>")
        p.add_argument("--delta", choices=[d.value for d in DeltaKind])
        p.add_argument("--n", type=_positive)
        p.add_argument("--cap", type=_positive)
        p.add_argument("--numeric-fallback", choices=["on", "off"])
        p.add_argument("--seed", type=_seed, help="accepted for uniformity; check and split are deterministic")
        return p

    manifest_command("check", "test whether the relation vanishes at order n")
    manifest_command("split", "find a splitting witness (lambda, l, m)")

    p = sub.add_parser("classify", help="quasi-homogeneity of a polynomial in x, y")
    p.add_argument("poly")

    p = sub.add_parser("certify", help="decomposition certificate for a relation polynomial")
    p.add_argument("poly")
    p.add_argument("--delta", required=True, choices=[d.value for d in DeltaKind])
    p.add_argument("--lambda", dest="lam", default="1")

    p = sub.add_parser("generate", help="write an instance bundle with its expected witness")
    p.add_argument("--relation", required=True)
    p.add_argument("--delta", choices=[d.value for d in DeltaKind])
    p.add_argument("--l", type=_positive, required=True)
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--lambda", dest="lam", default="1")
    p.add_argument("--dims")
    p.add_argument("--seed", type=_seed)
    p.add_argument("--out")
    return parser


COMMANDS = {
    "check": cmd_check,
    "split": cmd_split,
    "classify": cmd_classify,
    "certify": cmd_certify,
    "generate": cmd_generate,
}


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except _Usage as exc:
        err.write(f"hkit: error: {exc}\n")
        return EXIT_INPUT
    except SystemExit as exc:  # --help
        return exc.code or 0
    # Buffer stdout so a failing command leaves no partial report behind.
    buffer = io.StringIO()
    try:
        code = COMMANDS[args.command](args, buffer)
    except NotSatisfied as exc:
        err.write(f"hkit: not satisfied: {exc}\n")
        return EXIT_FAIL
    except (NoSplit, InternalContradiction) as exc:
        err.write(f"hkit: {type(exc).__name__}: {exc}\n")
        return EXIT_BUG
    except INPUT_ERRORS as exc:
        err.write(f"hkit: error: {exc}\n")
        return EXIT_INPUT
    except HkitError as exc:
        err.write(f"hkit: error: {exc}\n")
        return EXIT_INPUT
    out.write(buffer.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
