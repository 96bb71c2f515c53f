"""Orthogonality of phi_A in both equivalent forms, plus a weight solver.

Condition (a) is the brute-force Gram relation

    sum_x b(x; N; eta1) phi(x; m) conj(phi(x; m')) = delta_{m m'} eta2**m / binom(N; m)

over all m, m' in X(n, N).  Condition (b) is the matrix identity

    A0^* diag(eta1) A0 = zeta * diag(eta2)

for some N-th root of unity zeta.  The two are checked by independent code
paths; their verdicts must agree.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .combinatorics import as_composition, enumerate_compositions, multinomial
from .krawtchouk import phi_generating, phi_table
from .scalars import (
    EqualityPolicy,
    is_zero,
    magnitude,
    nth_root_of_unity_check,
)

__all__ = [
    "OrthogonalityCertificate",
    "SolveError",
    "weight_vector",
    "weight",
    "gram_sum",
    "gram_matrix",
    "check_condition_a",
    "check_condition_b",
    "solve_weights",
    "nullspace",
    "weighted_gram",
]

ORTHOGONAL = "orthogonal"
NOT_ORTHOGONAL = "not-orthogonal"


class SolveError(Exception):
    """``solve_weights`` found no admissible weights; ``reason`` says why."""

    def __init__(self, reason, detail=""):
        self.reason = reason
        super().__init__(f"{reason}: {detail}" if detail else reason)


@dataclass(frozen=True)
class OrthogonalityCertificate:
    """Outcome of one orthogonality check.

    ``witness`` is a pair of compositions (condition a) or a matrix index
    pair ``(i, j)`` into A0^* D1 A0 (condition b).
    """

    verdict: str
    method: str
    max_deviation: float
    zeta: object = None
    witness: tuple | None = None
    field: str = ""
    tolerance: float | None = None
    N: int | None = None
    reason: str | None = None

    @property
    def orthogonal(self):
        return self.verdict == ORTHOGONAL

    def to_json(self, field):
        """JSON-ready dict; ``field`` formats ``zeta``."""
        if self.witness is None:
            witness = None
        elif self.method == "condition-a":
            witness = [list(w) for w in self.witness]
        else:
            witness = list(self.witness)
        out = {
            "verdict": self.verdict,
            "method": self.method,
            "zeta": None if self.zeta is None else field.format(self.zeta),
            "max_deviation": repr(float(self.max_deviation)),
            "witness": witness,
            "field": self.field,
            "tolerance": self.tolerance,
            "N": self.N,
        }
        if self.reason is not None:
            out["reason"] = self.reason
        return out


def weight_vector(entries, field):
    """Coerce weights into ``field``; every entry must be nonzero."""
    eta = tuple(field.coerce(v) for v in entries)
    if any(v == 0 for v in eta):
        raise ValueError("weights must be nonzero")
    return eta


def _check_eta(A0, eta):
    eta = weight_vector(eta, A0.field)
    if len(eta) != A0.n:
        raise ValueError(f"weight vector has {len(eta)} entries, expected {A0.n}")
    return eta


def weight(x, N, eta):
    """b(x; N; eta) = multinomial(N, x) * prod_j eta_j ** x_j."""
    x = as_composition(x, degree=N)
    if len(x) != len(eta):
        raise ValueError(f"weight vector has {len(eta)} entries, expected {len(x)}")
    value = multinomial(N, x)
    for e, xj in zip(eta, x):
        if xj:
            value = value * e**xj
    return value


def _monomial(eta, m):
    value = eta[0] - eta[0] + 1
    for e, mj in zip(eta, m):
        if mj:
            value = value * e**mj
    return value


def _expected(eta2, N, m, mp):
    if m != mp:
        return 0
    return _monomial(eta2, m) / multinomial(N, m)


def gram_sum(A0, eta1, m, mp, N, table=None):
    """Left side of the Gram relation for one pair (m, m').

    With a cached ``table`` the two columns are read from it; otherwise only
    those two columns are evaluated.
    """
    eta1 = _check_eta(A0, eta1)
    m = as_composition(m, degree=N, length=A0.n)
    mp = as_composition(mp, degree=N, length=A0.n)
    if table is not None:
        col, colp = table.order.index(m), table.order.index(mp)
        pairs = [(x, row[col], row[colp]) for x, row in zip(table.order, table.values)]
    else:
        pairs = [
            (x, phi_generating(A0, x, m), phi_generating(A0, x, mp))
            for x in enumerate_compositions(A0.n, N)
        ]
    total = A0.field.coerce(0)
    for x, u, v in pairs:
        total = total + weight(x, N, eta1) * u * v.conjugate()
    return total


def gram_matrix(table, eta1):
    """All Gram sums at once as a square list, indexed like the table."""
    N = table.N
    eta1 = weight_vector(eta1, table.field)
    weights = [weight(x, N, eta1) for x in table.order]
    size = len(table.order)
    conj = [[v.conjugate() for v in row] for row in table.values]
    zero = table.field.coerce(0)
    gram = [[zero] * size for _ in range(size)]
    for a in range(size):
        for b in range(size):
            total = zero
            for w, row, crow in zip(weights, table.values, conj):
                total = total + w * row[a] * crow[b]
            gram[a][b] = total
    return gram


def _policy_tolerance(policy):
    return None if policy.exact else policy.epsilon


def check_condition_a(A0, eta1, eta2, N, policy=None, table=None, method="generating", jobs=1):
    """Brute-force Gram orthogonality over every pair in X(n, N).

    Deviations are measured as ``|lhs - rhs|``; in tolerance mode a pair
    passes when that is within ``epsilon * scale`` with
    ``scale = max(1, sqrt(|rhs(m, m) rhs(m', m')|))``.  The witness is the
    first pair (canonical order) with the largest deviation among failures.
    """
    if policy is None:
        policy = EqualityPolicy.for_field(A0.field)
    eta1 = _check_eta(A0, eta1)
    eta2 = _check_eta(A0, eta2)
    if table is None:
        table = phi_table(A0, N, method, jobs=jobs)
    order = table.order
    gram = gram_matrix(table, eta1)
    diag = [magnitude(_expected(eta2, N, m, m)) for m in order]
    worst = 0.0
    worst_fail = -1.0
    witness = None
    for a, m in enumerate(order):
        for b, mp in enumerate(order):
            delta = gram[a][b] - _expected(eta2, N, m, mp)
            dev = magnitude(delta)
            worst = max(worst, dev)
            scale = max(1.0, math.sqrt(diag[a] * diag[b]))
            if not is_zero(delta, policy, scale) and dev > worst_fail:
                worst_fail = dev
                witness = (m, mp)
    return OrthogonalityCertificate(
        verdict=ORTHOGONAL if witness is None else NOT_ORTHOGONAL,
        method="condition-a",
        max_deviation=worst,
        witness=witness,
        field=A0.field.name,
        tolerance=_policy_tolerance(policy),
        N=N,
    )


def weighted_gram(A0, eta1):
    """M = A0^* diag(eta1) A0 as a nested tuple."""
    n = A0.n
    a = A0.entries
    zero = A0.field.coerce(0)
    rows = []
    for k in range(n):
        row = []
        for l in range(n):
            total = zero
            for i in range(n):
                total = total + a[i][k].conjugate() * eta1[i] * a[i][l]
            row.append(total)
        rows.append(tuple(row))
    return tuple(rows)


def check_condition_b(A0, eta1, eta2, N, policy=None):
    """Check A0^* D1 A0 == zeta D2 with zeta an N-th root of unity.

    zeta is read off as M_00 / eta2_0 and every other diagonal ratio is
    compared against it.  A failing certificate names the first offending
    entry of M as its witness.
    """
    if N < 1:
        raise ValueError("condition (b) needs N >= 1")
    if policy is None:
        policy = EqualityPolicy.for_field(A0.field)
    eta1 = _check_eta(A0, eta1)
    eta2 = _check_eta(A0, eta2)
    n = A0.n
    M = weighted_gram(A0, eta1)
    scale = max([1.0] + [magnitude(v) for row in M for v in row])
    zeta = M[0][0] / eta2[0]
    worst = 0.0
    witness = None
    reason = None
    for i in range(n):
        for j in range(n):
            target = zeta * eta2[i] if i == j else 0
            delta = M[i][j] - target
            worst = max(worst, magnitude(delta))
            if witness is None and not is_zero(delta, policy, scale):
                witness = (i, j)
                reason = "off-diagonal" if i != j else "diagonal-ratio"
    if witness is None and not nth_root_of_unity_check(zeta, N, policy):
        witness = (0, 0)
        reason = "zeta-not-root-of-unity"
    return OrthogonalityCertificate(
        verdict=ORTHOGONAL if witness is None else NOT_ORTHOGONAL,
        method="condition-b",
        max_deviation=worst,
        zeta=zeta,
        witness=witness,
        field=A0.field.name,
        tolerance=_policy_tolerance(policy),
        N=N,
        reason=reason,
    )


def nullspace(rows, ncols, policy, one):
    """Basis of the right nullspace of ``rows`` by Gauss-Jordan elimination.

    Exact policies pivot on the first nonzero entry.  Tolerance policies use
    partial pivoting and treat a pivot as zero when it is below
    ``epsilon * (largest pivot seen so far)``.
    """
    work = [list(r) for r in rows]
    pivots = []
    r = 0
    biggest = 0.0
    for c in range(ncols):
        if r == len(work):
            break
        if policy.exact:
            p = next((k for k in range(r, len(work)) if work[k][c] != 0), None)
        else:
            p = max(range(r, len(work)), key=lambda k: magnitude(work[k][c]))
            size = magnitude(work[p][c])
            biggest = max(biggest, size)
            if size <= policy.epsilon * biggest or size == 0:
                p = None
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        piv = work[r][c]
        work[r] = [v / piv for v in work[r]]
        for k in range(len(work)):
            if k != r:
                f = work[k][c]
                if f != 0:
                    work[k] = [u - f * v for u, v in zip(work[k], work[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [one - one] * ncols
        vec[fc] = one
        for row, pc in zip(work, pivots):
            vec[pc] = -row[fc]
        basis.append(vec)
    return basis


def solve_weights(A0, policy=None):
    """Weights (eta1, eta2) with A0^* diag(eta1) A0 = diag(eta2), eta1_0 = 1.

    Solves sum_i conj(a_ik) a_il eta_i = 0 for all k < l.  Raises
    :class:`SolveError` with reason ``no-solution``, ``non-unique`` or
    ``zero-weight``.  Any phase is absorbed into eta2, so the resulting pair
    always certifies with zeta = 1.
    """
    if policy is None:
        policy = EqualityPolicy.for_field(A0.field)
    n = A0.n
    a = A0.entries
    one = A0.field.coerce(1)
    equations = [
        [a[i][k].conjugate() * a[i][l] for i in range(n)]
        for k in range(n)
        for l in range(k + 1, n)
    ]
    basis = nullspace(equations, n, policy, one) if equations else [[one]]
    if not basis:
        raise SolveError("no-solution", "the only diagonal D1 is zero")
    if len(basis) > 1:
        raise SolveError("non-unique", f"solution space has dimension {len(basis)}")
    vec = basis[0]
    scale = max(magnitude(v) for v in vec)
    if is_zero(vec[0], policy, scale):
        raise SolveError("zero-weight", "eta1_0 vanishes, cannot normalise")
    eta1 = tuple(v / vec[0] for v in vec)
    eta1 = (one,) + eta1[1:]
    if any(is_zero(v, policy) for v in eta1):
        raise SolveError("zero-weight", "eta1 has a zero entry")
    M = weighted_gram(A0, eta1)
    eta2 = tuple(M[i][i] for i in range(n))
    dscale = max([1.0] + [magnitude(v) for row in M for v in row])
    if any(is_zero(v, policy, dscale) for v in eta2):
        raise SolveError("zero-weight", "eta2 has a zero entry")
    return eta1, eta2

