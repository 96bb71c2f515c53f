"""Compositions of N into n parts and the integer primitives built on them.

A composition is a plain tuple of nonnegative ints; its degree is its sum.
Tuples already give structural equality and hashing, so no wrapper class.
"""
from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

__all__ = [
    "as_composition",
    "enumerate_compositions",
    "count_compositions",
    "composition_index",
    "multinomial",
    "pochhammer",
    "neg_pochhammer",
    "verify_lemma31",
]


def as_composition(parts, degree=None, length=None):
    """Validate ``parts`` and return it as a tuple of ints.

    Raises ``ValueError`` on negative parts, a wrong length or a sum other
    than ``degree``.
    """
    try:
        parts = tuple(int(p) for p in parts)
    except (TypeError, ValueError):
        raise ValueError(f"not a composition: {parts!r}") from None
    if any(p < 0 for p in parts):
        raise ValueError(f"composition has a negative part: {parts}")
    if length is not None and len(parts) != length:
        raise ValueError(f"composition {parts} should have {length} parts")
    if degree is not None and sum(parts) != degree:
        raise ValueError(f"composition {parts} does not sum to {degree}")
    return parts


def _compositions(n, N):
    if n == 1:
        yield (N,)
        return
    for first in range(N, -1, -1):
        for rest in _compositions(n - 1, N - first):
            yield (first,) + rest


@lru_cache(maxsize=256)
def _cached_compositions(n, N):
    return tuple(_compositions(n, N))


def enumerate_compositions(n, N):
    """All of X(n, N) in lexicographically decreasing order.

    >>> enumerate_compositions(2, 2)
    [(2, 0), (1, 1), (0, 2)]
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if N < 0:
        raise ValueError("N must be nonnegative")
    return list(_cached_compositions(n, N))


def count_compositions(n, N):
    return comb(N + n - 1, n - 1)


@lru_cache(maxsize=256)
def _index_map(n, N):
    return {c: k for k, c in enumerate(_cached_compositions(n, N))}


def composition_index(x):
    """Position of ``x`` in the canonical enumeration of X(len(x), sum(x))."""
    return _index_map(len(x), sum(x))[tuple(x)]


def multinomial(N, x):
    """N! / (x_0! ... x_{n-1}!) as an exact int."""
    x = as_composition(x)
    if sum(x) != N:
        raise ValueError(f"composition {x} does not sum to N={N}")
    result = 1
    remaining = N
    for part in x:
        result *= comb(remaining, part)
        remaining -= part
    return result


def pochhammer(a, k):
    """Rising factorial (a)_k = a (a+1) ... (a+k-1) in the type of ``a``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    result = a - a + 1
    for j in range(k):
        result = result * (a + j)
    return result


@lru_cache(maxsize=None)
def neg_pochhammer(t, k):
    """(-t)_k for integers t, k >= 0: exactly 0 once k > t."""
    if k > t:
        return 0
    value = factorial(t) // factorial(t - k)
    return -value if k % 2 else value


def verify_lemma31(N, p, m, z):
    """Check binom(N-|p|; z) == binom(N; m) * prod_i (-m_i)_{m_i-z_i} / (-N)_{|p|}.

    Arguments are validated first: ``m`` must lie in X(n, N), ``z`` in
    X(n, N-|p|), and ``m - z`` must be componentwise nonnegative.  The
    comparison is done in exact integers (cross-multiplied).
    """
    p = as_composition(p)
    size = sum(p)
    if size > N:
        raise ValueError(f"|p| = {size} exceeds N = {N}")
    m = as_composition(m, degree=N, length=len(p))
    z = as_composition(z, degree=N - size, length=len(p))
    if any(mi < zi for mi, zi in zip(m, z)):
        raise ValueError(f"m - z has a negative component: m={m}, z={z}")
    lhs = multinomial(N - size, z)
    numer = multinomial(N, m)
    for mi, zi in zip(m, z):
        numer *= neg_pochhammer(mi, mi - zi)
    denom = neg_pochhammer(N, size)
    return lhs * denom == numer
