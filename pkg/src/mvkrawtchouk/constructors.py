"""Parameter matrices (and weights) for known families.

* ``classical`` - n = 2, the ordinary Krawtchouk case.
* ``dft`` - character table of Z/kZ, entries w**(i*j) with w = exp(2 pi i / k).
* ``grunbaum-rahman`` - the 3x3 family with inner block [[1-u1, 1-u2], [1-v1, 1-v2]].
* ``kronecker`` - tensor product of two instances that carry weights.

Weights are filled in by :func:`solve_weights` unless the family comes with
them (dft, kronecker).  When the solver fails, ``weights_failure`` holds its
reason and the weights are left empty.
"""
from __future__ import annotations

import cmath
import json
from dataclasses import dataclass, field as dc_field

from .krawtchouk import ParameterMatrix
from .orthogonality import SolveError, solve_weights, weight_vector
from .scalars import COMPLEX, GAUSSIAN, RATIONAL, GaussianRational, get_field, infer_field

__all__ = [
    "InstanceSpec",
    "InstanceFormatError",
    "classical_krawtchouk",
    "dft_character",
    "grunbaum_rahman",
    "kronecker",
    "instance_to_json",
    "instance_from_json",
    "load_instance",
    "KINDS",
]

KINDS = ("classical", "dft", "grunbaum-rahman", "kronecker", "raw")


@dataclass(frozen=True)
class InstanceSpec:
    kind: str
    parameters: tuple
    A0: ParameterMatrix
    eta1: tuple | None = None
    eta2: tuple | None = None
    weights_failure: str | None = dc_field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown instance kind {self.kind!r}")
        if (self.eta1 is None) != (self.eta2 is None):
            raise ValueError("give both eta1 and eta2 or neither")
        if self.eta1 is not None:
            for name in ("eta1", "eta2"):
                eta = weight_vector(getattr(self, name), self.A0.field)
                if len(eta) != self.A0.n:
                    raise ValueError(f"{name} must have {self.A0.n} entries")
                object.__setattr__(self, name, eta)

    @property
    def field(self):
        return self.A0.field

    @property
    def has_weights(self):
        return self.eta1 is not None


def _with_solved_weights(kind, parameters, A0, policy=None):
    try:
        eta1, eta2 = solve_weights(A0, policy)
    except SolveError as exc:
        return InstanceSpec(kind, parameters, A0, weights_failure=exc.reason)
    return InstanceSpec(kind, parameters, A0, eta1, eta2)


def classical_krawtchouk(p, field=RATIONAL):
    """n = 2 instance with inner entry 1 - 1/p."""
    field = get_field(field)
    p = field.coerce(p)
    if p == 0:
        raise ValueError("p must be nonzero")
    one = field.coerce(1)
    A0 = ParameterMatrix([[1, 1], [1, one - one / p]], field)
    return _with_solved_weights("classical", (p,), A0)


def _gaussian_unit_power(k, e):
    # w = exp(2 pi i / k) for k | 4 is a power of i
    quarter = (4 // k) * e % 4
    return (
        GaussianRational(1),
        GaussianRational(0, 1),
        GaussianRational(-1),
        GaussianRational(0, -1),
    )[quarter]


def dft_character(k, field=GAUSSIAN):
    """Character table of Z/kZ with weights eta1 = 1, eta2 = k.

    Exact fields are allowed only where the characters live in them:
    k in {1, 2} for rationals, k in {1, 2, 4} for Gaussian rationals.
    """
    field = get_field(field)
    if k < 1:
        raise ValueError("k must be at least 1")
    if field is RATIONAL and k > 2:
        raise ValueError(f"characters of Z/{k} are not rational; use gaussian-rational or complex-float")
    if field is GAUSSIAN and k not in (1, 2, 4):
        raise ValueError(f"characters of Z/{k} are not in Q(i); use complex-float")
    if field is COMPLEX:
        entries = [[cmath.exp(2j * cmath.pi * ((i * j) % k) / k) for j in range(k)] for i in range(k)]
    else:
        entries = [[_gaussian_unit_power(k, i * j) for j in range(k)] for i in range(k)]
    A0 = ParameterMatrix(entries, field)
    return InstanceSpec("dft", (k,), A0, (1,) * k, (k,) * k)


def grunbaum_rahman(u1, u2, v1, v2, field=None):
    """3x3 instance with inner block [[1-u1, 1-u2], [1-v1, 1-v2]].

    Most parameter choices are not orthogonal for any weights; the solver
    decides, and ``weights_failure`` records a negative answer.
    """
    params = (u1, u2, v1, v2)
    field = infer_field(params) if field is None else get_field(field)
    u1, u2, v1, v2 = (field.coerce(v) for v in params)
    one = field.coerce(1)
    A0 = ParameterMatrix.from_inner([[one - u1, one - u2], [one - v1, one - v2]], field)
    return _with_solved_weights("grunbaum-rahman", (u1, u2, v1, v2), A0)


def _kron(a, b):
    return [[x * y for x in a_row for y in b_row] for a_row in a for b_row in b]


def kronecker(spec1, spec2):
    """Tensor product; index (i1, i2) maps to i1 * n2 + i2.

    Both factors must carry weights, and they must share a field (an exact
    rational factor is promoted when the other is Gaussian or floating).
    """
    if not (spec1.has_weights and spec2.has_weights):
        raise ValueError("kronecker needs both instances to carry weights")
    field = _join_fields(spec1.field, spec2.field)
    a = [[field.coerce(v) for v in row] for row in spec1.A0.entries]
    b = [[field.coerce(v) for v in row] for row in spec2.A0.entries]
    A0 = ParameterMatrix(_kron(a, b), field)
    eta1 = [field.coerce(x) * field.coerce(y) for x in spec1.eta1 for y in spec2.eta1]
    eta2 = [field.coerce(x) * field.coerce(y) for x in spec1.eta2 for y in spec2.eta2]
    return InstanceSpec("kronecker", (spec1.kind, spec2.kind), A0, eta1, eta2)


def _join_fields(f1, f2):
    rank = {RATIONAL.name: 0, GAUSSIAN.name: 1, COMPLEX.name: 2}
    return f1 if rank[f1.name] >= rank[f2.name] else f2


# -- JSON ----------------------------------------------------------------------


def _format_param(field, p):
    if isinstance(p, str):
        return p
    if isinstance(p, int):
        return p
    return field.format(p)


def instance_to_json(spec):
    """Dict in the instance-file layout; scalars use the text grammar."""
    fld = spec.field
    out = {
        "kind": spec.kind,
        "field": fld.name,
        "parameters": [_format_param(fld, p) for p in spec.parameters],
        "matrix": [[fld.format(v) for v in row] for row in spec.A0.entries],
    }
    if spec.has_weights:
        out["weights"] = {
            "eta1": [fld.format(v) for v in spec.eta1],
            "eta2": [fld.format(v) for v in spec.eta2],
        }
    if spec.weights_failure is not None:
        out["weights_failure"] = spec.weights_failure
    return out


class InstanceFormatError(ValueError):
    """Malformed instance document; ``path`` locates the offending value."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


def _scalar(field, value, path):
    if isinstance(value, bool) or not isinstance(value, (str, int, float)):
        raise InstanceFormatError(path, f"expected a scalar, got {value!r}")
    try:
        return field.coerce(value if not isinstance(value, float) else repr(value))
    except (ValueError, TypeError) as exc:
        raise InstanceFormatError(path, str(exc)) from None


def instance_from_json(doc, field=None):
    """Build an :class:`InstanceSpec` from a parsed instance document.

    ``field`` overrides the document's ``"field"`` key; without either the
    field is inferred from the matrix and weight literals.
    """
    if not isinstance(doc, dict):
        raise InstanceFormatError("", "instance must be a JSON object")
    if "matrix" not in doc:
        raise InstanceFormatError("matrix", "missing")
    matrix = doc["matrix"]
    if not isinstance(matrix, list) or not all(isinstance(r, list) for r in matrix):
        raise InstanceFormatError("matrix", "expected a list of rows")
    weights = doc.get("weights")
    if weights is not None and not isinstance(weights, dict):
        raise InstanceFormatError("weights", "expected an object with eta1 and eta2")
    if field is None:
        field = doc.get("field")
    if field is None:
        literals = [v for row in matrix for v in row]
        if weights:
            literals += list(weights.get("eta1", [])) + list(weights.get("eta2", []))
        field = infer_field(literals)
    try:
        field = get_field(field)
    except ValueError as exc:
        raise InstanceFormatError("field", str(exc)) from None
    rows = [
        [_scalar(field, v, f"matrix[{i}][{j}]") for j, v in enumerate(row)]
        for i, row in enumerate(matrix)
    ]
    try:
        A0 = ParameterMatrix(rows, field)
    except ValueError as exc:
        raise InstanceFormatError("matrix", str(exc)) from None
    eta1 = eta2 = None
    if weights:
        etas = []
        for name in ("eta1", "eta2"):
            vec = weights.get(name)
            if not isinstance(vec, list):
                raise InstanceFormatError(f"weights.{name}", "expected a list")
            etas.append([_scalar(field, v, f"weights.{name}[{k}]") for k, v in enumerate(vec)])
        eta1, eta2 = etas
    kind = doc.get("kind", "raw")
    params = doc.get("parameters", [])
    if not isinstance(params, list):
        raise InstanceFormatError("parameters", "expected a list")
    if kind in ("classical", "grunbaum-rahman"):
        params = [_scalar(field, v, f"parameters[{k}]") for k, v in enumerate(params)]
    try:
        return InstanceSpec(kind, tuple(params), A0, eta1, eta2, doc.get("weights_failure"))
    except ValueError as exc:
        raise InstanceFormatError("weights" if eta1 is not None else "kind", str(exc)) from None


def load_instance(text, field=None):
    """Parse instance JSON text; JSON syntax errors propagate as ``json.JSONDecodeError``."""
    return instance_from_json(json.loads(text), field)

