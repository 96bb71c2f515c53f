"""Command-line front end.

Subcommands::

    eval   phi(x; m) for one pair
    table  the full PhiTable over X(n, N)
    check  orthogonality certificate(s)
    solve  weights making a parameter matrix orthogonal
    make   write an instance file for a known family

Exit codes: 0 success / orthogonal, 1 not orthogonal or no weights,
2 input error, 3 internal error (including a disagreement between the two
conditions or the two evaluators in exact arithmetic).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .combinatorics import as_composition
from .constructors import (
    InstanceFormatError,
    classical_krawtchouk,
    dft_character,
    grunbaum_rahman,
    instance_to_json,
    kronecker,
    load_instance,
)
from .krawtchouk import phi_generating, phi_hypergeometric, phi_table
from .orthogonality import (
    SolveError,
    check_condition_a,
    check_condition_b,
    solve_weights,
)
from .scalars import DEFAULT_TOLERANCE, FIELDS, EqualityPolicy, ScalarParseError, get_field, magnitude

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

METHOD_NAMES = {"gen": "generating", "hyp": "hypergeometric"}


class InputError(Exception):
    pass


class InternalError(Exception):
    pass


def _emit(text, args):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj):
    return json.dumps(obj, indent=2, ensure_ascii=True) + "\n"


def _read_instance(args):
    field = args.field
    if args.input in (None, "-"):
        text = sys.stdin.read()
        source = "<stdin>"
    else:
        source = args.input
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"{source}: {exc.strerror}") from None
    try:
        return load_instance(text, field)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    except (InstanceFormatError, ScalarParseError) as exc:
        raise InputError(f"{source}: {exc}") from None
    except ValueError as exc:
        raise InputError(f"{source}: {exc}") from None


def _policy(spec, args):
    return EqualityPolicy.for_field(spec.field, args.tol)


def _composition_arg(text):
    body = text.strip().strip("[]()")
    try:
        return as_composition(int(p) for p in body.split(",") if p.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad composition {text!r}: {exc}") from None


def _require_N(args):
    if args.N is None:
        raise InputError("--N is required for this command")
    if args.N < 0:
        raise InputError("--N must be nonnegative")
    return args.N


def _close(a, b, policy):
    if policy.exact:
        return a == b
    return magnitude(a - b) <= policy.epsilon * max(1.0, magnitude(a), magnitude(b))


# -- commands ------------------------------------------------------------------


def cmd_eval(args):
    spec = _read_instance(args)
    A0 = spec.A0
    fld = spec.field
    try:
        if len(args.x) != A0.n or len(args.m) != A0.n:
            raise ValueError(f"x and m need {A0.n} parts")
        if sum(args.x) != sum(args.m):
            raise ValueError("x and m must have the same degree")
    except ValueError as exc:
        raise InputError(str(exc)) from None
    results = {}
    if args.method in ("gen", "both"):
        results["generating"] = phi_generating(A0, args.x, args.m)
    if args.method in ("hyp", "both"):
        results["hypergeometric"] = phi_hypergeometric(A0, args.x, args.m)
    value = next(iter(results.values()))
    agree = None
    if len(results) == 2:
        agree = _close(results["generating"], results["hypergeometric"], _policy(spec, args))
    if args.output == "json":
        doc = {
            "x": list(args.x),
            "m": list(args.m),
            "field": fld.name,
            "value": fld.format(value),
            "methods": {k: fld.format(v) for k, v in results.items()},
        }
        if agree is not None:
            doc["agree"] = agree
        _emit(_dump(doc), args)
    else:
        lines = [fld.format(value)]
        if agree is not None:
            lines.append(f"agree: {'true' if agree else 'false'}")
        _emit("\n".join(lines) + "\n", args)
    if agree is False:
        if fld.exact:
            raise InternalError("generating and hypergeometric evaluations disagree")
        return EXIT_FAIL
    return EXIT_OK


def table_to_json(table):
    fld = table.field
    return {
        "n": table.n,
        "N": table.N,
        "method": table.method,
        "field": fld.name,
        "order": [list(c) for c in table.order],
        "values": [[fld.format(v) for v in row] for row in table.values],
    }


def _composition_label(c):
    return "[" + ",".join(str(p) for p in c) + "]"


def table_to_csv(table):
    fld = table.field
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x\\m"] + [_composition_label(m) for m in table.order])
    for x, row in zip(table.order, table.values):
        writer.writerow([_composition_label(x)] + [fld.format(v) for v in row])
    return buf.getvalue()


def cmd_table(args):
    spec = _read_instance(args)
    N = _require_N(args)
    if args.method == "both":
        raise InputError("table takes --method gen or hyp")
    table = phi_table(spec.A0, N, METHOD_NAMES[args.method], jobs=args.jobs)
    if args.output == "csv":
        _emit(table_to_csv(table), args)
    else:
        _emit(_dump(table_to_json(table)), args)
    return EXIT_OK


def cmd_check(args):
    spec = _read_instance(args)
    N = _require_N(args)
    if not spec.has_weights:
        raise InputError("check needs an instance with weights (eta1, eta2)")
    fld = spec.field
    if N < 1:
        raise InputError("check needs --N >= 1")
    policy = _policy(spec, args)
    doc = {"N": N, "field": fld.name, "tolerance": None if policy.exact else policy.epsilon}
    cert_b = check_condition_b(spec.A0, spec.eta1, spec.eta2, N, policy)
    doc["condition_b"] = cert_b.to_json(fld)
    certs = [cert_b]
    if args.check in ("a", "both"):
        method = "generating" if args.method in ("gen", "both") else "hypergeometric"
        cert_a = check_condition_a(
            spec.A0, spec.eta1, spec.eta2, N, policy, method=method, jobs=args.jobs
        )
        doc["condition_a"] = cert_a.to_json(fld)
        doc["agreement"] = cert_a.verdict == cert_b.verdict
        certs.append(cert_a)
    _emit(_dump(doc), args)
    if len(certs) == 2 and not doc["agreement"] and policy.exact:
        raise InternalError("conditions (a) and (b) disagree in exact arithmetic")
    return EXIT_OK if all(c.orthogonal for c in certs) else EXIT_FAIL


def cmd_solve(args):
    spec = _read_instance(args)
    fld = spec.field
    try:
        eta1, eta2 = solve_weights(spec.A0, _policy(spec, args))
    except SolveError as exc:
        _emit(_dump({"status": "failure", "reason": exc.reason, "detail": str(exc)}), args)
        return EXIT_FAIL
    doc = {
        "status": "ok",
        "field": fld.name,
        "eta1": [fld.format(v) for v in eta1],
        "eta2": [fld.format(v) for v in eta2],
        "zeta": fld.format(fld.coerce(1)),
    }
    _emit(_dump(doc), args)
    return EXIT_OK


def _load_file(path, field):
    try:
        with open(path, encoding="utf-8") as fh:
            return load_instance(fh.read(), field)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_make(args):
    field = args.field
    try:
        if args.kind == "classical":
            spec = classical_krawtchouk(args.p, field or "exact-rational")
        elif args.kind == "dft":
            spec = dft_character(args.k, field or "gaussian-rational")
        elif args.kind == "grunbaum-rahman":
            spec = grunbaum_rahman(args.u1, args.u2, args.v1, args.v2, field)
        else:
            spec = kronecker(_load_file(args.left, field), _load_file(args.right, field))
    except (ValueError, ScalarParseError) as exc:
        raise InputError(str(exc)) from None
    _emit(_dump(instance_to_json(spec)), args)
    return EXIT_OK


# -- argument parsing ----------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", choices=sorted(FIELDS), default=None,
                        help="scalar field (default: from the instance file)")
    common.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE,
                        help="relative tolerance for complex-float (default 1e-9)")
    common.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")

    instance = argparse.ArgumentParser(add_help=False)
    instance.add_argument("--input", metavar="PATH", help="instance JSON file ('-' or omitted: stdin)")
    instance.add_argument("--jobs", type=int, default=1, help="worker processes for table fills")

    parser = argparse.ArgumentParser(
        prog="mvkrawtchouk",
        description="Evaluate multivariate Krawtchouk polynomials and certify their orthogonality.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common, instance], help="evaluate phi(x; m)")
    p.add_argument("--x", type=_composition_arg, required=True, help="e.g. 1,1")
    p.add_argument("--m", type=_composition_arg, required=True, help="e.g. 0,2")
    p.add_argument("--method", choices=["gen", "hyp", "both"], default="gen")
    p.add_argument("--output", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("table", parents=[common, instance], help="full table over X(n, N)")
    p.add_argument("--N", type=int)
    p.add_argument("--method", choices=["gen", "hyp"], default="gen")
    p.add_argument("--output", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("check", parents=[common, instance], help="orthogonality certificate")
    p.add_argument("--N", type=int)
    p.add_argument("--check", choices=["a", "b", "both"], default="b",
                   help="condition (b) always runs; 'a' or 'both' adds the brute-force Gram check")
    p.add_argument("--method", choices=["gen", "hyp", "both"], default="gen",
                   help="evaluator used to build the table for condition (a)")
    p.add_argument("--output", choices=["json"], default="json")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", parents=[common, instance], help="recover admissible weights")
    p.add_argument("--output", choices=["json"], default="json")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("make", help="write an instance file")
    kinds = p.add_subparsers(dest="kind", required=True)
    k = kinds.add_parser("classical", parents=[common])
    k.add_argument("--p", required=True)
    k = kinds.add_parser("dft", parents=[common])
    k.add_argument("--k", type=int, required=True)
    k = kinds.add_parser("grunbaum-rahman", parents=[common])
    for name in ("u1", "u2", "v1", "v2"):
        k.add_argument(f"--{name}", required=True)
    k = kinds.add_parser("kronecker", parents=[common])
    k.add_argument("--left", required=True)
    k.add_argument("--right", required=True)
    p.set_defaults(func=cmd_make)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    if args.field is not None:
        args.field = get_field(args.field)
    if not args.tol > 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # exit-code contract: never leak other codes
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
