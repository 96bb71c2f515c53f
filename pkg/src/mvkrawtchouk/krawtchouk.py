"""Multivariate Krawtchouk polynomials phi_A(x; m).

Two independent evaluators are provided:

* :func:`phi_generating` reads the coefficient of ``t**m`` off the product
  ``prod_i (sum_j a_ij t_j) ** x_i`` and divides by ``multinomial(N, m)``.
* :func:`phi_hypergeometric` evaluates the terminating hypergeometric sum
  over (n-1) x (n-1) matrices ``c`` of nonnegative integers.

They share nothing beyond the parameter matrix and the integer primitives,
so agreement between them is a meaningful check.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from math import factorial

from .combinatorics import (
    as_composition,
    composition_index,
    enumerate_compositions,
    multinomial,
    neg_pochhammer,
)
from .scalars import RATIONAL, Field, get_field

__all__ = [
    "ParameterMatrix",
    "PhiTable",
    "phi_generating",
    "phi_hypergeometric",
    "phi_table",
    "METHODS",
]

METHODS = ("generating", "hypergeometric")


@dataclass(frozen=True)
class ParameterMatrix:
    """The bordered n x n matrix A0: first row and first column are ones.

    ``entries`` may be given as any nested sequence of values the field can
    coerce (ints, Fractions, grammar strings, ...).  The inner
    (n-1) x (n-1) block is the free parameter A.
    """

    entries: tuple
    field: Field = RATIONAL

    def __post_init__(self):
        fld = get_field(self.field)
        rows = tuple(tuple(fld.coerce(v) for v in row) for row in self.entries)
        n = len(rows)
        if n == 0:
            raise ValueError("parameter matrix must be at least 1x1")
        if any(len(row) != n for row in rows):
            raise ValueError("parameter matrix must be square")
        for k in range(n):
            if rows[0][k] != 1 or rows[k][0] != 1:
                raise ValueError("first row and first column of A0 must be all ones")
        object.__setattr__(self, "field", fld)
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_inner(cls, inner, field=RATIONAL):
        """Border an (n-1) x (n-1) block with ones."""
        inner = [list(row) for row in inner]
        size = len(inner) + 1
        rows = [[1] * size]
        for row in inner:
            if len(row) != size - 1:
                raise ValueError("inner block must be square")
            rows.append([1] + row)
        return cls(rows, field)

    @property
    def n(self):
        return len(self.entries)

    @property
    def inner(self):
        return tuple(row[1:] for row in self.entries[1:])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def transpose(self):
        return ParameterMatrix(tuple(zip(*self.entries)), self.field)

    def conjugate_transpose(self):
        return tuple(tuple(v.conjugate() for v in col) for col in zip(*self.entries))

    def with_entry(self, i, j, value):
        """Copy with entry (i, j) replaced; i, j >= 1 keeps the border intact."""
        rows = [list(row) for row in self.entries]
        rows[i][j] = value
        return ParameterMatrix(rows, self.field)


@dataclass(frozen=True)
class PhiTable:
    """phi_A(x; m) for every x, m in X(n, N); ``values[row(x)][col(m)]``."""

    n: int
    N: int
    order: tuple
    values: tuple
    method: str
    field: Field = dc_field(default=RATIONAL, compare=False)

    def value(self, x, m):
        return self.values[composition_index(x)][composition_index(m)]

    def __len__(self):
        return len(self.order)


def _check_args(A0, x, m):
    x = as_composition(x, length=A0.n)
    m = as_composition(m, length=A0.n)
    N = sum(x)
    if sum(m) != N:
        raise ValueError(f"degree mismatch: |x|={N} but |m|={sum(m)}")
    return x, m, N


# -- generating-function route -------------------------------------------------


def _expand_linear_power(row, e, bound):
    """Sparse expansion of (sum_j row[j] t_j) ** e, exponents capped by ``bound``."""
    n = len(row)
    terms = {}
    for comp in enumerate_compositions(n, e):
        if bound is not None and any(c > b for c, b in zip(comp, bound)):
            continue
        coeff = multinomial(e, comp)
        for a, c in zip(row, comp):
            if c:
                coeff = coeff * a**c
        if coeff != 0:
            terms[comp] = coeff
    return terms


def expand_generating_product(A0, x, bound=None):
    """Sparse map exponent -> coefficient of prod_i (sum_j a_ij t_j) ** x_i.

    With ``bound`` given, monomials exceeding it in any coordinate are dropped
    as soon as they appear; they cannot contribute to coefficients below it.
    """
    n = A0.n
    factors = [
        _expand_linear_power(A0.entries[i], xi, bound) for i, xi in enumerate(x) if xi
    ]
    factors.sort(key=len)
    poly = {(0,) * n: A0.field.coerce(1)}
    for factor in factors:
        nxt = {}
        for e1, c1 in poly.items():
            for e2, c2 in factor.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if bound is not None and any(c > b for c, b in zip(e, bound)):
                    continue
                nxt[e] = nxt[e] + c1 * c2 if e in nxt else c1 * c2
        poly = nxt
    return poly


def phi_generating(A0, x, m):
    """phi_A(x; m) as a normalised coefficient of the generating product."""
    x, m, N = _check_args(A0, x, m)
    poly = expand_generating_product(A0, x, bound=m)
    coeff = poly.get(m, A0.field.coerce(0))
    return coeff / multinomial(N, m)


def _generating_row(A0, x, order):
    N = sum(x)
    poly = expand_generating_product(A0, x)
    zero = A0.field.coerce(0)
    return tuple(poly.get(m, zero) / multinomial(N, m) for m in order)


# -- hypergeometric route ------------------------------------------------------


class _HypergeometricSum:
    """Evaluator for the terminating sum, reused across cells of one table.

    Term for a matrix c (rows/cols indexed 1..n-1):

        prod_i (-x_i)_{r_i} prod_j (-m_j)_{s_j} / (-N)_{|c|}
            * prod_ij (1 - a_ij) ** c_ij / c_ij!

    with r, s the row and column sums of c.  Rows are filled one at a time;
    a row entry is capped by what is left of x_i and of m_j, since beyond
    that a Pochhammer factor vanishes.  Partial sums are merged by their
    running column sums, which leaves the total unchanged (distributivity)
    but avoids re-walking identical suffixes.
    """

    def __init__(self, A0, N):
        self.n = A0.n
        self.N = N
        self.field = A0.field
        one = self.field.coerce(1)
        k = self.n - 1
        self.b = [[one - A0.entries[i][j] for j in range(1, self.n)] for i in range(1, self.n)]
        # b_ij ** c / c! for c = 0..N
        self.w = []
        for i in range(k):
            row = []
            for j in range(k):
                bij = self.b[i][j]
                if bij == 0:
                    row.append(None)
                    continue
                powers = [one]
                for c in range(1, N + 1):
                    powers.append(powers[-1] * bij)
                row.append([powers[c] / factorial(c) for c in range(N + 1)])
            self.w.append(row)
        self._row_vectors = {}

    def _rows_for(self, i, cap_total, caps):
        """Row vectors of c (row i) with sum <= cap_total and entry j <= caps[j]."""
        key = (i, cap_total, caps)
        hit = self._row_vectors.get(key)
        if hit is not None:
            return hit
        k = self.n - 1
        wi = self.w[i]
        out = []

        def fill(j, left, vec, weight):
            if j == k:
                out.append((tuple(vec), sum(vec), weight))
                return
            top = min(left, caps[j]) if wi[j] is not None else 0
            for c in range(top + 1):
                vec.append(c)
                if c:
                    fill(j + 1, left - c, vec, wi[j][c] if weight is None else weight * wi[j][c])
                else:
                    fill(j + 1, left, vec, weight)
                vec.pop()

        fill(0, cap_total, [], None)
        self._row_vectors[key] = out
        return out

    def value(self, x, m):
        N = self.N
        if N == 0:
            return self.field.coerce(1)
        k = self.n - 1
        one = self.field.coerce(1)
        colcap = tuple(m[1:])
        # state: running column sums -> accumulated partial sum of terms
        states = {(0,) * k: one}
        for i in range(k):
            xi = x[i + 1]
            if xi == 0:
                continue
            nxt = {}
            for cols, acc in states.items():
                caps = tuple(cap - s for cap, s in zip(colcap, cols))
                for vec, rsum, weight in self._rows_for(i, xi, caps):
                    term = acc if weight is None else acc * weight
                    if rsum:
                        term = term * neg_pochhammer(xi, rsum)
                    key = tuple(s + v for s, v in zip(cols, vec)) if rsum else cols
                    nxt[key] = nxt[key] + term if key in nxt else term
            states = nxt
        total = self.field.coerce(0)
        for cols, acc in states.items():
            scale = 1
            for mj, sj in zip(colcap, cols):
                scale *= neg_pochhammer(mj, sj)
            total = total + acc * scale / neg_pochhammer(N, sum(cols))
        return total


def phi_hypergeometric(A0, x, m):
    """phi_A(x; m) through the terminating hypergeometric sum."""
    x, m, N = _check_args(A0, x, m)
    return _HypergeometricSum(A0, N).value(x, m)


def _hypergeometric_rows(A0, N, xs, order):
    evaluator = _HypergeometricSum(A0, N)
    return [tuple(evaluator.value(x, m) for m in order) for x in xs]


# -- tables --------------------------------------------------------------------


def _normalise_method(method):
    aliases = {"gen": "generating", "hyp": "hypergeometric"}
    method = aliases.get(method, method)
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    return method


def _row_block(args):
    A0, N, method, xs, order = args
    if method == "generating":
        return [_generating_row(A0, x, order) for x in xs]
    return _hypergeometric_rows(A0, N, xs, order)


def phi_table(A0, N, method="generating", jobs=1):
    """Full PhiTable over X(n, N) in canonical order.

    ``jobs > 1`` splits rows into contiguous blocks evaluated in worker
    processes; blocks are reassembled in order so the result does not depend
    on the worker count.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    method = _normalise_method(method)
    order = tuple(enumerate_compositions(A0.n, N))
    jobs = max(1, min(int(jobs), len(order)))
    if jobs == 1:
        rows = _row_block((A0, N, method, order, order))
    else:
        size = -(-len(order) // jobs)
        blocks = [order[k : k + size] for k in range(0, len(order), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_row_block, [(A0, N, method, xs, order) for xs in blocks])
            rows = [row for part in parts for row in part]
    return PhiTable(A0.n, N, order, tuple(rows), method, A0.field)
